"""Orbits of the diagonal PGL(2, q) action on 4-tuples of projective symbols.

Tuples over the g = q+1 symbols are packed base-g into 0..g^4-1. An orbit's
canonical representative is its least packed member, and orbit ids number the
orbits by ascending representative. There are always g + 11 orbits: the g
constant tuples form one orbit of size g, tuples with two distinct entries
fall into 7 orbits of size g(g-1), and tuples with three or four distinct
entries fall into 6 + (g-3) orbits of size g(g-1)(g-2).
"""

from dataclasses import dataclass

import numpy as np

from .field import FieldSpec, format_symbols
from .group import action_table, enumerate_group

# Display numbering for g = 3 matching the published deficiency tables, keyed
# by canonical representative (tokens; * is the projective infinity). The
# constant orbit is 0 and the thirteen non-constant orbits take 1..13. Other
# g have no published numbering and get plain 0-based ids in canonical order,
# which keeps label 0 on the constant orbit for every g.
_TERNARY_NUMBERING = {
    "0000": 0, "0001": 1, "0010": 4, "0011": 5, "001*": 8,
    "0100": 3, "0101": 6, "010*": 9, "0110": 7, "0111": 2,
    "011*": 13, "01*0": 10, "01*1": 11, "01**": 12,
}


def pack_tuple(t, g: int) -> int:
    return ((int(t[0]) * g + int(t[1])) * g + int(t[2])) * g + int(t[3])


def unpack_index(idx: int, g: int) -> tuple[int, int, int, int]:
    t3 = idx % g
    idx //= g
    t2 = idx % g
    idx //= g
    t1 = idx % g
    return (idx // g, idx % g, t2, t3)


@dataclass(frozen=True)
class OrbitTable:
    g: int
    ids: np.ndarray
    reps: np.ndarray
    sizes: np.ndarray
    labels: np.ndarray
    constant_id: int

    @property
    def n_orbits(self) -> int:
        return len(self.reps)

    def id_of(self, t) -> int:
        return int(self.ids[pack_tuple(t, self.g)])

    def members(self, orbit_id: int) -> np.ndarray:
        return np.where(self.ids == orbit_id)[0]

    def nonconstant_ids(self) -> np.ndarray:
        return np.array([i for i in range(self.n_orbits) if i != self.constant_id])

    def id_for_label(self, label: int) -> int:
        hits = np.where(self.labels == label)[0]
        if len(hits) != 1:
            raise KeyError(f"no orbit labelled {label}")
        return int(hits[0])


def build_orbit_table(fs: FieldSpec) -> OrbitTable:
    """Partition all g^4 tuples into orbits by taking the minimum image
    over the whole group."""
    g = fs.g
    n = g ** 4
    act = action_table(enumerate_group(fs)).astype(np.int64)

    idx = np.arange(n, dtype=np.int64)
    t3 = idx % g
    t2 = (idx // g) % g
    t1 = (idx // g ** 2) % g
    t0 = idx // g ** 3

    canon = idx.copy()
    for perm in act:
        img = ((perm[t0] * g + perm[t1]) * g + perm[t2]) * g + perm[t3]
        np.minimum(canon, img, out=canon)

    reps = np.unique(canon)
    ids = np.searchsorted(reps, canon).astype(np.int32)
    sizes = np.bincount(ids)

    if g == 3:
        labels = np.array(
            [_TERNARY_NUMBERING[format_symbols(unpack_index(int(r), g), fs.q)]
             for r in reps], dtype=np.int32)
    else:
        labels = np.arange(len(reps), dtype=np.int32)

    for a in (ids, reps, sizes, labels):
        a.flags.writeable = False
    return OrbitTable(g=g, ids=ids, reps=reps, sizes=sizes, labels=labels,
                      constant_id=int(ids[0]))


def dump_orbits(table: OrbitTable, q: int) -> str:
    """One orbit per line, members ascending so the canonical representative
    comes first, each tuple rendered in symbol tokens."""
    lines = []
    for oid in range(table.n_orbits):
        toks = [format_symbols(unpack_index(int(m), table.g), q)
                for m in table.members(oid)]
        lines.append(" ".join(toks))
    return "\n".join(lines)
