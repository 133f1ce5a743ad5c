"""Equivalence classes of row 4-subsets of Z_k under the cyclic shift.

A 4-subset {s1 < s2 < s3 < s4} of rows has circular gap vector
(x, y, z, w) with x = s2-s1, y = s3-s2, z = s4-s3 and w = k-s4+s1; shifting
the subset rotates the gap vector, so a class is named by one canonical
rotation [x, y, z] with w implicit. The canonical rotation has x minimal,
w strictly greater than x (tie break against the rotation ending in x), and
y <= (k-2x)/2 whenever x = z. The fully symmetric class [k/4, k/4, k/4]
(when 4 divides k) is the single exception to w > x and is kept.

The same idea at arity 3 classifies the 4-subsets that contain a fixed last
row k-1 while the other three rows shift cyclically mod k-1; those classes
drive the degree-extension check.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class EquivClass:
    x: int
    y: int
    z: int
    size: int

    @property
    def label(self) -> str:
        return f"[{self.x},{self.y},{self.z}]"

    @property
    def gaps(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class FixedRowClass:
    """Gaps (x, y) of the moving 3-subset of Z_{k-1}; the implicit third gap
    closes the circle and row k-1 is the fixed fourth row."""

    x: int
    y: int
    size: int

    @property
    def label(self) -> str:
        return f"[{self.x},{self.y}]+fixed"


def _is_canonical(x: int, y: int, z: int, k: int) -> bool:
    w = k - x - y - z
    if min(x, y, z, w) < 1:
        return False
    if x > y or x > z:
        return False
    if x == y == z == w:
        return True
    if w <= x:
        return False
    if x == z and y > (k - 2 * x) // 2:
        return False
    return True


def class_size(x: int, y: int, z: int, k: int) -> int:
    """Distinct shifts of a member subset: k unless the gap vector has
    cyclic symmetry (period 2 gives k/2, period 1 gives k/4)."""
    w = k - x - y - z
    if x == y == z == w:
        return k // 4
    if x == z and y == w:
        return k // 2
    return k


def enumerate_classes(k: int) -> list[EquivClass]:
    if k < 4:
        raise ValueError("need at least 4 rows")
    out = []
    for x in range(1, k // 4 + 1):
        for y in range(x, k - 2 * x):
            for z in range(x, k - x - y):
                if _is_canonical(x, y, z, k):
                    out.append(EquivClass(x, y, z, class_size(x, y, z, k)))
    return out


def class_of(subset, k: int) -> EquivClass:
    """Canonical class of one 4-subset of Z_k."""
    s = sorted(set(int(v) for v in subset))
    if len(s) != 4 or s[0] < 0 or s[3] >= k:
        raise ValueError(f"not a 4-subset of Z_{k}: {subset}")
    gaps = (s[1] - s[0], s[2] - s[1], s[3] - s[2], k - s[3] + s[0])
    cands = [gaps[r:] + gaps[:r] for r in range(4)]
    valid = [c[:3] for c in cands if _is_canonical(c[0], c[1], c[2], k)]
    x, y, z = min(valid)
    return EquivClass(x, y, z, class_size(x, y, z, k))


def class_members(cls: EquivClass, k: int) -> list[tuple[int, int, int, int]]:
    """All distinct member subsets (sorted tuples) of the class."""
    base = (0, cls.x, cls.x + cls.y, cls.x + cls.y + cls.z)
    seen = set()
    for d in range(k):
        seen.add(tuple(sorted((v + d) % k for v in base)))
    return sorted(seen)


def d_set(u, v, cls: EquivClass) -> list[tuple[int, int, int, int]]:
    """Multiset of 4-tuples read down the class's gap pattern in each starter
    vector: k tuples per vector, indices mod k."""
    x, y, z = cls.gaps
    k = len(u)
    out = []
    for vec in (u,) if v is None else (u, v):
        for i in range(k):
            out.append((int(vec[i]), int(vec[(i + x) % k]),
                        int(vec[(i + x + y) % k]), int(vec[(i + x + y + z) % k])))
    return out


def d_set_codes(u, v, x: int, y: int, z: int, g: int) -> np.ndarray:
    """Packed base-g codes of the d-set, vectorized."""
    parts = []
    for vec in (u,) if v is None else (u, v):
        a = np.asarray(vec, dtype=np.int64)
        t1 = np.roll(a, -x)
        t2 = np.roll(a, -(x + y))
        t3 = np.roll(a, -(x + y + z))
        parts.append(((a * g + t1) * g + t2) * g + t3)
    return np.concatenate(parts)


# ---------------------------------------------------------------------------
# fixed-row classes for the degree extension

def _is_canonical3(x: int, y: int, z: int) -> bool:
    return (x, y, z) <= (y, z, x) and (x, y, z) <= (z, x, y)


def enumerate_fixed_row_classes(k: int) -> list[FixedRowClass]:
    """Classes of 4-subsets of Z_k containing row k-1, the other three rows
    shifting cyclically mod k-1."""
    n = k - 1
    if n < 3:
        raise ValueError("need at least 3 moving rows")
    out = []
    for x in range(1, n - 1):
        for y in range(1, n - x):
            z = n - x - y
            if _is_canonical3(x, y, z):
                size = n // 3 if x == y == z else n
                out.append(FixedRowClass(x, y, size))
    return out


def fixed_row_class_of(subset, k: int) -> FixedRowClass:
    s = sorted(set(int(v) for v in subset))
    if len(s) != 4 or s[3] != k - 1 or s[0] < 0:
        raise ValueError(f"not a 4-subset of Z_{k} containing row {k-1}: {subset}")
    n = k - 1
    t = s[:3]
    gaps = (t[1] - t[0], t[2] - t[1], n - t[2] + t[0])
    x, y, z = min(gaps[r:] + gaps[:r] for r in range(3))
    size = n // 3 if x == y == z else n
    return FixedRowClass(x, y, size)


def fixed_row_class_members(cls: FixedRowClass, k: int) -> list[tuple[int, ...]]:
    n = k - 1
    base = (0, cls.x, cls.x + cls.y)
    seen = set()
    for d in range(n):
        seen.add(tuple(sorted((v + d) % n for v in base)) + (n,))
    return sorted(seen)


def d_set_fixed(u, v, cls: FixedRowClass) -> list[tuple[int, int, int, int]]:
    """d-set of a fixed-row class: the first three coordinates walk the gap
    pattern mod k-1, the fourth is the vector's fixed last entry."""
    x, y = cls.x, cls.y
    k = len(u)
    n = k - 1
    out = []
    for vec in (u,) if v is None else (u, v):
        last = int(vec[n])
        for i in range(n):
            out.append((int(vec[i]), int(vec[(i + x) % n]),
                        int(vec[(i + x + y) % n]), last))
    return out
