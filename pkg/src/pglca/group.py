"""The group PGL(2, q) acting on the projective line by fractional linear maps.

An element is the map x -> (a*x + b) / (c*x + d) with ad - bc != 0, taken up to
scalar; the stored representative is normalized so that the first nonzero
entry of (c, a) equals 1. The usual conventions at infinity apply: the image
of oo is a/c (or oo when c = 0), and a zero denominator at a finite point
gives oo.
"""

from dataclasses import dataclass

import numpy as np

from .field import FieldSpec


@dataclass(frozen=True)
class GroupElement:
    a: int
    b: int
    c: int
    d: int
    perm: np.ndarray

    def coeffs(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __repr__(self) -> str:
        return f"GroupElement(a={self.a}, b={self.b}, c={self.c}, d={self.d})"


def apply_coeffs(fs: FieldSpec, a: int, b: int, c: int, d: int, x: int) -> int:
    q = fs.q
    if x == q:
        return q if c == 0 else fs.div(a, c)
    num = int(fs.add[fs.mul[a, x], b])
    den = int(fs.add[fs.mul[c, x], d])
    if den == 0:
        return q
    return fs.div(num, den)


def apply(elem: GroupElement, x: int) -> int:
    """Image of a projective symbol under the map (precomputed table)."""
    return int(elem.perm[x])


def _make_element(fs: FieldSpec, a: int, b: int, c: int, d: int) -> GroupElement:
    perm = np.array([apply_coeffs(fs, a, b, c, d, x) for x in range(fs.g)],
                    dtype=np.int16)
    perm.flags.writeable = False
    return GroupElement(a=a, b=b, c=c, d=d, perm=perm)


def enumerate_group(fs: FieldSpec) -> list[GroupElement]:
    """All (q+1)q(q-1) elements in a fixed order; the identity comes first."""
    q = fs.q
    out = []
    for d in range(1, q):
        for b in range(q):
            out.append(_make_element(fs, 1, b, 0, d))
    for a in range(q):
        for d in range(q):
            ad = int(fs.mul[a, d])
            for b in range(q):
                if b != ad:
                    out.append(_make_element(fs, a, b, 1, d))
    return out


def normalize_coeffs(fs: FieldSpec, a: int, b: int, c: int, d: int):
    """Scale (a, b, c, d) so the first nonzero of (c, a) is 1."""
    det = fs.sub(int(fs.mul[a, d]), int(fs.mul[b, c]))
    if det == 0:
        raise ValueError("singular coefficient matrix")
    s = fs.inv[c] if c != 0 else fs.inv[a]
    return tuple(int(fs.mul[s, t]) for t in (a, b, c, d))


def compose(e1: GroupElement, e2: GroupElement, fs: FieldSpec) -> GroupElement:
    """The map applying e2 first and e1 second (matrix product)."""
    mul, add = fs.mul, fs.add
    a = int(add[mul[e1.a, e2.a], mul[e1.b, e2.c]])
    b = int(add[mul[e1.a, e2.b], mul[e1.b, e2.d]])
    c = int(add[mul[e1.c, e2.a], mul[e1.d, e2.c]])
    d = int(add[mul[e1.c, e2.b], mul[e1.d, e2.d]])
    return _make_element(fs, *normalize_coeffs(fs, a, b, c, d))


def action_table(elems: list[GroupElement]) -> np.ndarray:
    """Stack the permutations into a |G| x g table for the kernels."""
    return np.vstack([e.perm for e in elems]).astype(np.int16)


def check_sharp_3_transitivity(fs: FieldSpec) -> bool:
    """Exhaustive check that every ordered triple of distinct symbols maps
    to every other such triple under exactly one group element."""
    g = fs.g
    triples = [(x, y, z) for x in range(g) for y in range(g)
               for z in range(g) if x != y and y != z and x != z]
    index = {t: i for i, t in enumerate(triples)}
    counts = np.zeros((len(triples), len(triples)), dtype=np.int32)
    for elem in enumerate_group(fs):
        p = elem.perm
        for i, (x, y, z) in enumerate(triples):
            counts[i, index[(int(p[x]), int(p[y]), int(p[z]))]] += 1
    return bool((counts == 1).all())
