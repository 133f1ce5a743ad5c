"""Randomized search: starter vectors by restart hill climbing, completion
matrices that repair deficient classes, and exhaustive extension placements.

All randomness flows from numpy SeedSequence(seed, spawn_key=(restart,)),
so a config (including its seed) pins the whole run. Move proposals are
pregenerated in chunks, which keeps the climb state-independent of the
random stream and bit-identical between the numba and numpy kernels.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import kernels
from .field import FieldSpec
from .orbits import OrbitTable, build_orbit_table
from .classes import enumerate_classes
from .builder import ResidualReport, as_vector, starter_check, check_extension
from .verifier import coverage_by_classes

_CHUNK = 32768


@dataclass(frozen=True)
class SearchConfig:
    k: int
    mode: str = "two-vector"          # "one-vector" | "two-vector"
    objective: str = "full"           # "full" | "max-coverage"
    budget: int = 1_000_000           # total moves across restarts
    restarts: int = 0                 # 0 = as many as the budget allows
    seed: int = 0
    plateau_cap: int = 2000
    include_constants: bool = True

    @property
    def n_vectors(self) -> int:
        if self.mode == "one-vector":
            return 1
        if self.mode == "two-vector":
            return 2
        raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class SearchResult:
    vectors: tuple
    report: ResidualReport
    mu: Fraction
    missing_pairs: int
    moves_used: int
    restarts_used: int

    @property
    def solved(self) -> bool:
        return self.missing_pairs == 0


def _class_arrays(k: int):
    classes = enumerate_classes(k)
    gaps = np.array([[c.x, c.y, c.z] for c in classes], dtype=np.int64)
    sizes = np.array([c.size for c in classes], dtype=np.int64)
    return gaps, sizes


def _init_state(vecs, g, gaps, sizes, table, include_const):
    """Per-class orbit counters, per-tuple orbit ids, and the (missing,
    covered) objective for the current vectors."""
    ids = table.ids.astype(np.int64)
    orb_sizes = table.sizes.astype(np.int64)
    const_id = int(table.constant_id)
    nvec, k = vecs.shape
    C = gaps.shape[0]
    n_orb = table.n_orbits
    cnt = np.zeros((C, n_orb), dtype=np.int64)
    tup_orbit = np.zeros((nvec, C, k), dtype=np.int64)
    a = vecs.astype(np.int64)
    for ci in range(C):
        x, y, z = (int(v) for v in gaps[ci])
        for vi in range(nvec):
            row = a[vi]
            codes = ((row * g + np.roll(row, -x)) * g
                     + np.roll(row, -(x + y))) * g + np.roll(row, -(x + y + z))
            obs = ids[codes]
            tup_orbit[vi, ci] = obs
            cnt[ci] += np.bincount(obs, minlength=n_orb)
    hit = cnt > 0
    nonconst = np.ones(n_orb, dtype=bool)
    nonconst[const_id] = False
    missing = int((~hit[:, nonconst]).sum())
    weights = orb_sizes.copy()
    weights[const_id] = 0
    covered = int((sizes * (hit @ weights)).sum())
    if include_const:
        covered += int(sizes.sum()) * g
    else:
        covered += int((sizes * hit[:, const_id]).sum()) * g
    return cnt, tup_orbit, missing, covered


def search_starters(cfg: SearchConfig, fs: FieldSpec,
                    table: Optional[OrbitTable] = None,
                    log=None, init=None) -> SearchResult:
    """Hill climbing with restarts over starter vectors. Objective is
    lexicographic: first the number of missing (class, non-constant orbit)
    pairs, then maximal covered-tuple weight. The returned report comes
    from an independent rescoring of the best vectors found. When `init`
    vectors are given they seed the first restart, so an already-optimal
    state is returned unchanged."""
    if table is None:
        table = build_orbit_table(fs)
    g = fs.g
    k = cfg.k
    if k < 4:
        raise ValueError("need k >= 4")
    nvec = cfg.n_vectors
    gaps, sizes = _class_arrays(k)
    ids = table.ids.astype(np.int64)
    orb_sizes = table.sizes.astype(np.int64)
    const_id = int(table.constant_id)
    if cfg.objective == "full":
        objective = 0
    elif cfg.objective == "max-coverage":
        objective = 1
    else:
        raise ValueError(f"unknown objective {cfg.objective!r}")
    stop_on_full = True

    best_vecs = None
    best_score = None
    total_moves = 0
    restarts_used = 0
    r = 0
    while total_moves < cfg.budget and (cfg.restarts <= 0
                                        or r < cfg.restarts):
        rng = np.random.default_rng(np.random.SeedSequence(cfg.seed,
                                                           spawn_key=(r,)))
        if r == 0 and init is not None:
            vecs = np.vstack([as_vector(w, fs) for w in init])
            if vecs.shape != (nvec, k):
                raise ValueError(f"init must be {nvec} vector(s) of "
                                 f"length {k}")
            vecs = vecs.astype(np.int16)
        else:
            vecs = rng.integers(0, g, size=(nvec, k), dtype=np.int16)
        cnt, tup_orbit, missing, covered = _init_state(
            vecs, g, gaps, sizes, table, cfg.include_constants)
        plateau = 0
        flag = 0
        while total_moves < cfg.budget:
            B = int(min(_CHUNK, cfg.budget - total_moves))
            mv_vec = rng.integers(0, nvec, B).astype(np.int64)
            mv_pos = rng.integers(0, k, B).astype(np.int64)
            mv_off = rng.integers(1, g, B).astype(np.int64)
            consumed, missing, covered, plateau, flag = kernels.hill_climb(
                vecs, nvec, g, gaps, sizes, ids, orb_sizes, const_id,
                cfg.include_constants, cnt, tup_orbit, missing, covered,
                mv_vec, mv_pos, mv_off, plateau, cfg.plateau_cap,
                stop_on_full, objective)
            total_moves += int(consumed)
            if flag != 0:
                break
        restarts_used += 1
        r += 1
        if objective == 0:
            score = (missing, -covered)
        else:
            score = (-covered, missing)
        if best_score is None or score < best_score:
            best_score = score
            best_vecs = vecs.copy()
        if log is not None:
            log(f"restart {r}: missing={missing} covered={covered} "
                f"best_missing={best_score[0]} moves={total_moves}")
        if flag == 2:
            break

    vectors = tuple(best_vecs[i] for i in range(nvec))
    u = vectors[0]
    v = vectors[1] if nvec == 2 else None
    report = starter_check(fs, u, v, table)
    mu = coverage_by_classes(fs, u, v, table,
                             include_constants=cfg.include_constants).mu
    return SearchResult(vectors, report, mu, report.missing_pair_count,
                        total_moves, restarts_used)


# ---------------------------------------------------------------------------
# completion-matrix search

@dataclass(frozen=True)
class CompletionResult:
    matrix: np.ndarray
    solved: bool
    unsat_pairs: int
    moves_used: int
    restarts_used: int


def _requirements(report: ResidualReport):
    """Flatten the residual into per-member requirements. A member subset is
    read in gap order (start, +x, +x+y, +x+y+z); every member of a deficient
    class must show each of the class's missing orbits in some column."""
    k = report.k
    member_rows = []
    req_sets = []
    for cls, missing_ids in report.entries:
        x, y, z = cls.x, cls.y, cls.z
        seen = set()
        for i in range(k):
            rows = (i, (i + x) % k, (i + x + y) % k, (i + x + y + z) % k)
            key = tuple(sorted(rows))
            if key in seen:
                continue
            seen.add(key)
            member_rows.append(rows)
            req_sets.append(missing_ids)
    member_rows = np.array(member_rows, dtype=np.int64).reshape(-1, 4)
    req_off = np.zeros(len(req_sets) + 1, dtype=np.int64)
    for m, ids in enumerate(req_sets):
        req_off[m + 1] = req_off[m] + len(ids)
    req_orb = np.array([i for ids in req_sets for i in ids], dtype=np.int64)
    rm = [[] for _ in range(k)]
    for m, rows in enumerate(member_rows):
        for rr in set(int(x) for x in rows):
            rm[rr].append(m)
    rm_off = np.zeros(k + 1, dtype=np.int64)
    for rr in range(k):
        rm_off[rr + 1] = rm_off[rr] + len(rm[rr])
    rm_flat = np.array([m for lst in rm for m in lst], dtype=np.int64)
    return member_rows, req_off, req_orb, rm_flat, rm_off


def _score_hits(mat, g, ids, member_rows, req_off, req_orb):
    a = mat.astype(np.int64)
    hits = np.zeros(len(req_orb), dtype=np.int64)
    for m, rows in enumerate(member_rows):
        codes = (((a[rows[0]] * g + a[rows[1]]) * g + a[rows[2]]) * g
                 + a[rows[3]])
        obs = ids[codes]
        for p in range(int(req_off[m]), int(req_off[m + 1])):
            hits[p] = int(np.count_nonzero(obs == req_orb[p]))
    return hits


def score_completion(report: ResidualReport, mat,
                     table: Optional[OrbitTable] = None) -> int:
    """Number of unsatisfied (deficient member subset, missing orbit) pairs
    for a candidate completion matrix; 0 means the matrix repairs every
    deficiency."""
    if table is None:
        table = report.table
    mat = np.asarray(mat, dtype=np.int16)
    if mat.shape[0] != report.k:
        raise ValueError("completion matrix must have k rows")
    member_rows, req_off, req_orb, _, _ = _requirements(report)
    if len(member_rows) == 0:
        return 0
    hits = _score_hits(mat, report.g, table.ids.astype(np.int64),
                       member_rows, req_off, req_orb)
    return int(np.count_nonzero(hits == 0))


def search_residual_matrix(report: ResidualReport, width: int,
                           cfg: SearchConfig, fs: FieldSpec,
                           table: Optional[OrbitTable] = None,
                           log=None) -> CompletionResult:
    """Randomized local search for a k x width matrix whose 4-row patterns
    give every deficient member subset its missing orbits."""
    if table is None:
        table = build_orbit_table(fs)
    g = fs.g
    k = report.k
    if report.is_empty or width == 0:
        empty = np.zeros((k, width), dtype=np.int16)
        return CompletionResult(empty, report.is_empty, 0 if report.is_empty
                                else report.missing_pair_count, 0, 0)
    ids = table.ids.astype(np.int64)
    member_rows, req_off, req_orb, rm_flat, rm_off = _requirements(report)

    best_mat = None
    best_unsat = None
    total_moves = 0
    restarts_used = 0
    r = 0
    while total_moves < cfg.budget and (cfg.restarts <= 0
                                        or r < cfg.restarts):
        rng = np.random.default_rng(np.random.SeedSequence(cfg.seed,
                                                           spawn_key=(r,)))
        mat = rng.integers(0, g, size=(k, width), dtype=np.int16)
        hits = _score_hits(mat, g, ids, member_rows, req_off, req_orb)
        unsat = int(np.count_nonzero(hits == 0))
        plateau = 0
        flag = 0
        while total_moves < cfg.budget and unsat > 0:
            B = int(min(_CHUNK, cfg.budget - total_moves))
            mv_row = rng.integers(0, k, B).astype(np.int64)
            mv_col = rng.integers(0, width, B).astype(np.int64)
            mv_off = rng.integers(1, g, B).astype(np.int64)
            consumed, unsat, plateau, flag = kernels.c1_climb(
                mat, g, member_rows, rm_flat, rm_off, ids,
                req_off, req_orb, hits, unsat,
                mv_row, mv_col, mv_off, plateau, cfg.plateau_cap)
            total_moves += int(consumed)
            if flag != 0:
                break
        restarts_used += 1
        r += 1
        if best_unsat is None or unsat < best_unsat:
            best_unsat = unsat
            best_mat = mat.copy()
        if log is not None:
            log(f"restart {r}: unsat={unsat} best={best_unsat} "
                f"moves={total_moves}")
        if best_unsat == 0:
            break

    # rescore independently: the climber's incremental counter is not the
    # authority
    final_unsat = score_completion(report, best_mat, table)
    return CompletionResult(best_mat, final_unsat == 0, final_unsat,
                            total_moves, restarts_used)


def search_extension(fs: FieldSpec, u, v=None,
                     table: Optional[OrbitTable] = None) -> list:
    """All placements of a fixed last symbol per vector for which every
    fixed-row class of the extended degree represents every non-constant
    orbit. Exhaustive over the g (or g^2) candidates."""
    verdicts = check_extension(fs, u, v, table)
    return sorted(combo for combo, ok in verdicts.items() if ok)
