"""Randomized post-optimization: shrink a covering array's column count by
exploiting flexible entries.

An entry is flexible when every (row 4-subset, column tuple) obligation it
witnesses has at least one other witnessing column. The greedy marker
claims a witness per marked entry, so the whole marked set can be
rewritten simultaneously without losing coverage. Each round permutes the
columns, deletes columns that are redundant outright, marks flexibility
with the leading column prioritized, rewrites that column's remaining
unique obligations into flexible entries elsewhere, and deletes the column
once nothing pins it. Every deletion is re-verified globally.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .builder import TestingArray
from .verifier import _subsets_array, is_covering_array


@dataclass(frozen=True)
class FlexState:
    array: TestingArray
    flexible: np.ndarray
    seed: int


def _row_subsets(k: int):
    """CSR lists: for each row, the indices of the 4-subsets containing it."""
    subsets = _subsets_array(k)
    lists = [[] for _ in range(k)]
    for si, s in enumerate(subsets):
        for r in s:
            lists[int(r)].append(si)
    off = np.zeros(k + 1, dtype=np.int64)
    for r in range(k):
        off[r + 1] = off[r] + len(lists[r])
    flat = np.array([si for lst in lists for si in lst], dtype=np.int64)
    return subsets, flat, off


def _entry_order(rng, k: int, n: int, priority_column=None) -> np.ndarray:
    """Random entry visiting order; the priority column, when given, goes
    last so it cannot claim witness slack the other columns need (only the
    other columns' flexibility is consulted when freeing it)."""
    order = rng.permutation(k * n).astype(np.int64)
    if priority_column is None:
        return order
    col = order % n == priority_column
    return np.concatenate([order[~col], order[col]])


def _column_codes(arr: np.ndarray, g: int, subsets: np.ndarray) -> np.ndarray:
    """codes[si, j] = packed tuple of column j on subset si."""
    a = arr.astype(np.int64)
    return ((a[subsets[:, 0]] * g + a[subsets[:, 1]]) * g
            + a[subsets[:, 2]]) * g + a[subsets[:, 3]]


def mark_flexible(ta: TestingArray, seed: int,
                  priority_column=None) -> FlexState:
    """Greedy flexibility mask in a seed-determined entry order; entries of
    the priority column, when given, are visited last so the surrounding
    columns keep first claim on witness slack."""
    verdict = is_covering_array(ta)
    if not verdict.ok:
        raise ValueError(f"not a covering array: missing {verdict.witness}")
    subsets, row_sub_flat, row_sub_off = _row_subsets(ta.k)
    counts = kernels.tuple_count_table(ta.entries, ta.g, subsets)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    order = _entry_order(rng, ta.k, ta.n, priority_column)
    flex = kernels.greedy_flex(ta.entries, ta.g, subsets, row_sub_flat,
                               row_sub_off, counts, order)
    return FlexState(ta, flex, seed)


def _try_free_column(arr, g, subsets, row_sub_flat, row_sub_off, counts,
                     flex, col, rng):
    """Rewrite every obligation that only the given column witnesses into a
    4-row patch of some other column. Candidate columns are tried most
    flexible first with random tie-breaking, but safety rests on the exact
    witness bookkeeping: a rewrite that would orphan any obligation of the
    patched column is undone. Mutates arr/counts/flex; returns True when
    the column ends up deletable (all its tuples witnessed at least
    twice)."""
    codes_col = _column_codes(arr[:, col:col + 1], g, subsets)[:, 0]
    pinned = np.flatnonzero(counts[np.arange(len(subsets)), codes_col] < 2)
    for si in pinned:
        if counts[si, codes_col[si]] >= 2:
            continue  # an earlier rewrite already added a second witness
        rows = subsets[si]
        want = arr[rows, col]
        rank = flex[rows].sum(axis=0).astype(np.int64)
        cand = np.lexsort((rng.random(arr.shape[1]), -rank))
        moved = False
        for c in cand:
            if c == col:
                continue
            old = arr[rows, c].copy()
            arr[rows, c] = want
            # old/new codes per subset touched by the four rewritten entries
            touched = np.unique(np.concatenate(
                [row_sub_flat[row_sub_off[r]:row_sub_off[r + 1]]
                 for r in rows]))
            quad = subsets[touched]
            colv_new = arr[:, c].astype(np.int64)
            colv_old = colv_new.copy()
            colv_old[rows] = old
            oldcodes = ((colv_old[quad[:, 0]] * g + colv_old[quad[:, 1]]) * g
                        + colv_old[quad[:, 2]]) * g + colv_old[quad[:, 3]]
            newcodes = ((colv_new[quad[:, 0]] * g + colv_new[quad[:, 1]]) * g
                        + colv_new[quad[:, 2]]) * g + colv_new[quad[:, 3]]
            if (counts[touched, oldcodes] < 2).any():
                # a claimed witness elsewhere was already spent; undo
                arr[rows, c] = old
                continue
            counts[touched, oldcodes] -= 1
            counts[touched, newcodes] += 1
            flex[rows, c] = False
            moved = True
            break
        if not moved:
            return False
    codes_col = _column_codes(arr[:, col:col + 1], g, subsets)[:, 0]
    return bool((counts[np.arange(len(subsets)), codes_col] >= 2).all())


def _delete_column(arr, g, subsets, counts, col):
    codes_col = _column_codes(arr[:, col:col + 1], g, subsets)[:, 0]
    counts[np.arange(len(subsets)), codes_col] -= 1
    return np.delete(arr, col, axis=1)


def post_optimize(ta: TestingArray, budget: int, seed: int) -> TestingArray:
    """Run `budget` rounds of randomized column reduction; the result is
    re-verified after every deletion and never has more columns than the
    input."""
    verdict = is_covering_array(ta)
    if not verdict.ok:
        raise ValueError(f"not a covering array: missing {verdict.witness}")
    g = ta.g
    k = ta.k
    subsets, row_sub_flat, row_sub_off = _row_subsets(k)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    arr = np.array(ta.entries, dtype=np.int16)
    for _ in range(max(0, int(budget))):
        if arr.shape[1] <= g ** 4:
            break
        arr = arr[:, rng.permutation(arr.shape[1])]
        counts = kernels.tuple_count_table(arr, g, subsets)

        # delete outright-redundant columns while any exist
        while True:
            codes = _column_codes(arr, g, subsets)
            mins = counts[np.arange(len(subsets))[:, None], codes].min(axis=0)
            drop = np.flatnonzero(mins >= 2)
            if len(drop) == 0:
                break
            trial = _delete_column(arr, g, subsets, counts, int(drop[0]))
            if is_covering_array(TestingArray(g, trial)).ok:
                arr = trial
            else:  # pragma: no cover - counts guarantee this never fires
                counts = kernels.tuple_count_table(arr, g, subsets)
                break

        # target the column pinned by the fewest single-witness obligations
        # (ties broken randomly) and try to rewrite those into flexible
        # entries elsewhere so the column can go
        pins = (counts[np.arange(len(subsets))[:, None], codes] < 2).sum(
            axis=0)
        target = int(rng.choice(np.flatnonzero(pins == pins.min())))
        work_counts = counts.copy()
        order = _entry_order(rng, k, arr.shape[1], priority_column=target)
        flex = kernels.greedy_flex(arr, g, subsets, row_sub_flat,
                                   row_sub_off, work_counts, order)
        trial_arr = arr.copy()
        trial_counts = counts.copy()
        if _try_free_column(trial_arr, g, subsets, row_sub_flat, row_sub_off,
                            trial_counts, flex.copy(), target, rng):
            trial = np.delete(trial_arr, target, axis=1)
            if is_covering_array(TestingArray(g, trial)).ok:
                arr = trial
    out = TestingArray(g, arr)
    final = is_covering_array(out)
    if not final.ok:  # pragma: no cover - every deletion was verified
        raise AssertionError("post-optimization lost coverage")
    return out
