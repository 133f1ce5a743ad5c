"""Brute-force covering verification and coverage measure.

Two routes to the coverage measure: coverage_brute walks every row
4-subset of the actual array, while coverage_by_classes evaluates the
class-based formula straight from the starter vectors. They agree
exactly (rational equality) on assembled arrays; the brute-force path is
the authority and the class path is the fast one.
"""

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional

import numpy as np

from . import kernels
from .builder import TestingArray, as_vector
from .field import FieldSpec
from .orbits import OrbitTable, build_orbit_table, unpack_index
from .classes import enumerate_classes, d_set_codes


@lru_cache(maxsize=32)
def _subsets_array(k: int) -> np.ndarray:
    """All C(k,4) row 4-subsets in lexicographic order."""
    s = np.array(list(combinations(range(k), 4)), dtype=np.int64)
    s.setflags(write=False)
    return s


def _chunks(subsets: np.ndarray, threads: int):
    threads = max(1, min(int(threads), len(subsets)))
    bounds = np.linspace(0, len(subsets), threads + 1, dtype=np.int64)
    return [(int(bounds[i]), subsets[bounds[i]:bounds[i + 1]])
            for i in range(threads) if bounds[i] < bounds[i + 1]]


@dataclass(frozen=True)
class VerifyResult:
    """Covering verdict with the lexicographically first missing
    (row subset, symbol tuple) witness when the verdict is negative."""

    ok: bool
    witness: Optional[tuple]

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class CoverageResult:
    covered: int
    total: int
    witness: Optional[tuple]

    @property
    def mu(self) -> Fraction:
        return Fraction(self.covered, self.total)

    @property
    def full(self) -> bool:
        return self.covered == self.total

    def mu_text(self) -> str:
        return f"{float(self.mu):.3f}"

    def to_json(self) -> str:
        rec = {"covered": self.covered, "total": self.total,
               "mu": float(self.mu_text())}
        if self.witness is not None:
            rec["witness"] = {"rows": list(self.witness[0]),
                              "tuple": list(self.witness[1])}
        return json.dumps(rec)


def _witness(ta: TestingArray, subsets: np.ndarray, si: int, code: int):
    rows = tuple(int(r) for r in subsets[si])
    return rows, unpack_index(code, ta.g)


def _first_missing(ta: TestingArray, subsets: np.ndarray, threads: int):
    if threads <= 1:
        return kernels.find_first_missing(ta.entries, ta.g, subsets)
    parts = _chunks(subsets, threads)
    with ThreadPoolExecutor(max_workers=len(parts)) as ex:
        results = list(ex.map(
            lambda p: (p[0], kernels.find_first_missing(ta.entries, ta.g, p[1])),
            parts))
    for off, (si, code) in results:
        if si >= 0:
            return off + si, code
    return -1, -1


def is_covering_array(ta: TestingArray, threads: int = 1) -> VerifyResult:
    """True iff every row 4-subset shows all g^4 column tuples."""
    if ta.k < 4:
        raise ValueError("need at least 4 rows for strength 4")
    subsets = _subsets_array(ta.k)
    si, code = _first_missing(ta, subsets, threads)
    if si < 0:
        return VerifyResult(True, None)
    return VerifyResult(False, _witness(ta, subsets, si, code))


def coverage_brute(ta: TestingArray, threads: int = 1) -> CoverageResult:
    """Exact covered-pair count by enumerating all row 4-subsets."""
    if ta.k < 4:
        raise ValueError("need at least 4 rows for strength 4")
    subsets = _subsets_array(ta.k)
    total = len(subsets) * ta.g ** 4
    if threads <= 1:
        covered = int(kernels.coverage_count(ta.entries, ta.g, subsets))
    else:
        parts = _chunks(subsets, threads)
        with ThreadPoolExecutor(max_workers=len(parts)) as ex:
            covered = sum(ex.map(
                lambda p: int(kernels.coverage_count(ta.entries, ta.g, p[1])),
                parts))
    witness = None
    if covered != total:
        si, code = _first_missing(ta, subsets, threads)
        witness = _witness(ta, subsets, si, code)
    return CoverageResult(covered, total, witness)


def coverage_by_classes(fs: FieldSpec, u, v=None, table: OrbitTable = None,
                        include_constants: bool = True) -> CoverageResult:
    """Coverage measure of the assembled array, computed per [x,y,z] class:
    a class covers the full orbits its d-set meets, plus the g constant
    tuples contributed by the constant columns."""
    u = as_vector(u, fs)
    if v is not None:
        v = as_vector(v, fs)
        if v.shape[0] != u.shape[0]:
            raise ValueError("starter vectors must have equal length")
    if table is None:
        table = build_orbit_table(fs)
    g = fs.g
    k = u.shape[0]
    covered = 0
    for cls in enumerate_classes(k):
        codes = d_set_codes(u, v, cls.x, cls.y, cls.z, g)
        hit = np.unique(table.ids[codes])
        csum = int(table.sizes[hit].sum())
        if include_constants and table.constant_id not in hit:
            csum += g
        covered += cls.size * csum
    total = math.comb(k, 4) * g ** 4
    return CoverageResult(covered, total, None)
