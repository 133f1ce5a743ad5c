"""Assemble testing arrays from starter vectors.

A starter vector u of length k is turned into the k x k circulant whose
column j is u shifted down by j. The circulant blocks (and an optional
completion matrix) are developed by PGL(2,q) acting on the symbols, and
constant columns are appended, giving a k x ((vk+l)|G| + g) array. The
starter condition -- every [x,y,z] class's d-set meeting every
non-constant orbit -- is exactly what makes the result a full covering
array, and starter_check reports the residual when it fails.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .field import FieldSpec, format_symbols, parse_symbols
from .group import enumerate_group, action_table
from .orbits import OrbitTable, build_orbit_table
from .classes import (enumerate_classes, enumerate_fixed_row_classes,
                      d_set_codes)


@dataclass(frozen=True)
class TestingArray:
    """A k x n symbol matrix over g symbols; not necessarily a covering
    array. Entries are locked after construction."""

    __test__ = False  # not a test case despite the Test- prefix

    g: int
    entries: np.ndarray

    def __post_init__(self):
        ent = np.ascontiguousarray(np.asarray(self.entries, dtype=np.int16))
        if ent.ndim != 2:
            raise ValueError("entries must be a 2-D matrix")
        if ent.size and (ent.min() < 0 or ent.max() >= self.g):
            raise ValueError(f"entries outside symbol range 0..{self.g - 1}")
        ent.setflags(write=False)
        object.__setattr__(self, "entries", ent)

    @property
    def k(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    def __repr__(self):
        return f"TestingArray(g={self.g}, k={self.k}, n={self.n})"


def as_vector(u, fs: FieldSpec) -> np.ndarray:
    """Coerce a starter vector (sequence of codes or token string) to a
    locked int16 array and validate the symbol range."""
    if isinstance(u, str):
        u = parse_symbols(u, fs.q)
    a = np.asarray(u, dtype=np.int16).ravel()
    if a.size and (a.min() < 0 or a.max() >= fs.g):
        raise ValueError(f"symbol codes outside 0..{fs.g - 1}")
    a.setflags(write=False)
    return a


def circulant(u) -> np.ndarray:
    """k x k block with entry (i, j) = u[(i - j) mod k]: column 0 is u and
    each later column is the previous one shifted down by one."""
    a = np.asarray(u, dtype=np.int16)
    k = a.shape[0]
    idx = (np.arange(k)[:, None] - np.arange(k)[None, :]) % k
    return a[idx]


def develop(block, elems) -> np.ndarray:
    """Horizontal concatenation of one copy of the block per group element,
    entries mapped through the element's symbol action."""
    b = np.asarray(block, dtype=np.int16)
    perms = action_table(elems)
    return np.concatenate([perms[e][b] for e in range(perms.shape[0])],
                          axis=1)


def constant_columns(g: int, k: int) -> np.ndarray:
    """One all-x column for each symbol x."""
    return np.repeat(np.arange(g, dtype=np.int16)[None, :], k, axis=0)


def assembled_size(k: int, n_vectors: int, ell: int, fs: FieldSpec,
                   include_constants: bool = True) -> int:
    """Closed-form column count (v*k + l)|G| + g of the assembled array."""
    return ((n_vectors * k + ell) * fs.group_order
            + (fs.g if include_constants else 0))


def assemble(fs: FieldSpec, u, v=None, c1=None, include_constants: bool = True,
             develop_c1: bool = True) -> TestingArray:
    """[M^G, C1^G, C]: develop the circulant block(s) (and the completion
    matrix unless develop_c1 is off) by the group, append constant columns."""
    u = as_vector(u, fs)
    parts = [circulant(u)]
    if v is not None:
        v = as_vector(v, fs)
        if v.shape[0] != u.shape[0]:
            raise ValueError("starter vectors must have equal length")
        parts.append(circulant(v))
    m = np.concatenate(parts, axis=1)
    elems = enumerate_group(fs)
    cols = [develop(m, elems)]
    if c1 is not None:
        c1 = np.asarray(c1, dtype=np.int16)
        if c1.ndim != 2 or c1.shape[0] != u.shape[0]:
            raise ValueError("completion matrix must have k rows")
        if c1.shape[1]:
            cols.append(develop(c1, elems) if develop_c1 else c1)
    if include_constants:
        cols.append(constant_columns(fs.g, u.shape[0]))
    return TestingArray(fs.g, np.concatenate(cols, axis=1))


def assemble_extended(fs: FieldSpec, u, v=None,
                      include_constants: bool = True) -> TestingArray:
    """Fixed-row variant: the last entry of each length-k vector stays put
    while the first k-1 entries develop cyclically mod k-1. Column count is
    (v(k-1))|G| + g, one row more than the plain development of the prefix."""
    u = as_vector(u, fs)
    k = u.shape[0]
    if k < 5:
        raise ValueError("extension needs at least 5 rows")
    vecs = [u]
    if v is not None:
        v = as_vector(v, fs)
        if v.shape[0] != k:
            raise ValueError("starter vectors must have equal length")
        vecs.append(v)
    idx = (np.arange(k - 1)[:, None] - np.arange(k - 1)[None, :]) % (k - 1)
    parts = []
    for w in vecs:
        top = w[:k - 1][idx]
        bottom = np.full((1, k - 1), w[k - 1], dtype=np.int16)
        parts.append(np.concatenate([top, bottom], axis=0))
    m = np.concatenate(parts, axis=1)
    cols = [develop(m, enumerate_group(fs))]
    if include_constants:
        cols.append(constant_columns(fs.g, k))
    return TestingArray(fs.g, np.concatenate(cols, axis=1))


# ---------------------------------------------------------------------------
# starter condition

@dataclass(frozen=True)
class ResidualReport:
    """Per-class missing orbits of a starter set; empty means the starter
    condition holds and the assembled array is a full covering array."""

    g: int
    k: int
    entries: tuple
    table: OrbitTable

    @property
    def is_empty(self) -> bool:
        return not self.entries

    @property
    def deficient_classes(self):
        return [cls for cls, _ in self.entries]

    @property
    def missing_pair_count(self) -> int:
        return sum(len(ids) for _, ids in self.entries)

    def lines(self) -> list[str]:
        out = []
        for cls, ids in self.entries:
            labels = " ".join(str(int(self.table.labels[i])) for i in ids)
            out.append(f"d{cls.label} | {labels}")
        return out

    def __str__(self):
        if self.is_empty:
            return "all classes represent every non-constant orbit"
        return "\n".join(self.lines())


def _missing_ids(codes: np.ndarray, table: OrbitTable) -> tuple:
    hit = np.zeros(table.n_orbits, dtype=bool)
    hit[table.ids[codes]] = True
    hit[table.constant_id] = True
    return tuple(int(i) for i in np.flatnonzero(~hit))


def starter_check(fs: FieldSpec, u, v=None, table: OrbitTable = None
                  ) -> ResidualReport:
    """Score every cyclic [x,y,z] class: which non-constant orbits are
    absent from its d-set."""
    u = as_vector(u, fs)
    if v is not None:
        v = as_vector(v, fs)
        if v.shape[0] != u.shape[0]:
            raise ValueError("starter vectors must have equal length")
    if table is None:
        table = build_orbit_table(fs)
    k = u.shape[0]
    deficient = []
    for cls in enumerate_classes(k):
        codes = d_set_codes(u, v, cls.x, cls.y, cls.z, fs.g)
        missing = _missing_ids(codes, table)
        if missing:
            deficient.append((cls, missing))
    return ResidualReport(fs.g, k, tuple(deficient), table)


def fixed_row_residual(fs: FieldSpec, u, v=None, table: OrbitTable = None
                       ) -> ResidualReport:
    """Same report for the fixed-row classes of length-k vectors whose last
    entry is the fixed row."""
    u = as_vector(u, fs)
    if v is not None:
        v = as_vector(v, fs)
        if v.shape[0] != u.shape[0]:
            raise ValueError("starter vectors must have equal length")
    if table is None:
        table = build_orbit_table(fs)
    k = u.shape[0]
    g = fs.g
    deficient = []
    for cls in enumerate_fixed_row_classes(k):
        parts = []
        for w in (u,) if v is None else (u, v):
            a = np.asarray(w[:k - 1], dtype=np.int64)
            t1 = np.roll(a, -cls.x)
            t2 = np.roll(a, -(cls.x + cls.y))
            parts.append(((a * g + t1) * g + t2) * g + int(w[k - 1]))
        missing = _missing_ids(np.concatenate(parts), table)
        if missing:
            deficient.append((cls, missing))
    return ResidualReport(g, k, tuple(deficient), table)


def check_extension(fs: FieldSpec, u, v=None, table: OrbitTable = None
                    ) -> dict:
    """For each placement of a fixed last entry on each length-(k-1) vector,
    report whether every fixed-row class of the extended degree represents
    every non-constant orbit. Keys are (s,) or (su, sv) symbol tuples."""
    u = as_vector(u, fs)
    vecs = [u]
    if v is not None:
        v = as_vector(v, fs)
        if v.shape[0] != u.shape[0]:
            raise ValueError("starter vectors must have equal length")
        vecs.append(v)
    if table is None:
        table = build_orbit_table(fs)
    g = fs.g
    k = u.shape[0] + 1
    classes = enumerate_fixed_row_classes(k)
    need = 0
    for i in table.nonconstant_ids():
        need |= 1 << int(i)
    # masks[vi][s][ci] = orbit bitmask the class sees with fixed entry s
    masks = []
    for w in vecs:
        a = np.asarray(w, dtype=np.int64)
        per_s = []
        for s in range(g):
            row = []
            for cls in classes:
                t1 = np.roll(a, -cls.x)
                t2 = np.roll(a, -(cls.x + cls.y))
                codes = ((a * g + t1) * g + t2) * g + s
                mask = 0
                for i in np.unique(table.ids[codes]):
                    mask |= 1 << int(i)
                row.append(mask)
            per_s.append(row)
        masks.append(per_s)
    out = {}
    for combo in product(range(g), repeat=len(vecs)):
        ok = all(
            (masks[0][combo[0]][ci]
             | (masks[1][combo[1]][ci] if len(vecs) == 2 else 0)) & need
            == need
            for ci in range(len(classes)))
        out[combo] = ok
    return out


# ---------------------------------------------------------------------------
# file formats

def write_array(ta: TestingArray, path) -> None:
    """Header line "CA k=<k> n=<n> g=<g> t=4", then k rows of n
    whitespace-separated symbol tokens."""
    fs = _field_for_g(ta.g)
    with open(path, "w") as fh:
        fh.write(f"CA k={ta.k} n={ta.n} g={ta.g} t=4\n")
        for row in ta.entries:
            fh.write(format_symbols(row, fs.q, sep=" ") + "\n")


def read_array(path) -> TestingArray:
    from .field import token_to_symbol
    with open(path) as fh:
        header = fh.readline().split()
        if not header or header[0] != "CA":
            raise ValueError(f"{path}: not an array file (missing CA header)")
        fields = dict(p.split("=", 1) for p in header[1:])
        k, n, g, t = (int(fields[x]) for x in ("k", "n", "g", "t"))
        if t != 4:
            raise ValueError(f"{path}: only strength 4 is supported")
        fs = _field_for_g(g)
        rows = []
        for _ in range(k):
            toks = fh.readline().split()
            if len(toks) != n:
                raise ValueError(f"{path}: expected {n} tokens per row")
            rows.append([token_to_symbol(t_, fs.q) for t_ in toks])
    return TestingArray(g, np.asarray(rows, dtype=np.int16))


def write_vectors(path, fs: FieldSpec, *vectors) -> None:
    """One vector per line, symbol tokens concatenated."""
    with open(path, "w") as fh:
        for vec in vectors:
            fh.write(format_symbols(as_vector(vec, fs), fs.q) + "\n")


def read_vectors(path, fs: FieldSpec) -> list[np.ndarray]:
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(as_vector(line, fs))
    return out


def write_matrix(path, fs: FieldSpec, mat) -> None:
    write_vectors(path, fs, *np.asarray(mat, dtype=np.int16))


def read_matrix(path, fs: FieldSpec) -> np.ndarray:
    rows = read_vectors(path, fs)
    if not rows or len({r.shape[0] for r in rows}) != 1:
        raise ValueError(f"{path}: rows of unequal length")
    return np.vstack(rows)


def _field_for_g(g: int):
    from .field import make_field
    return make_field(g - 1)
