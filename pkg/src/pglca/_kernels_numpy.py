"""Pure-numpy implementations of the hot kernels.

These mirror the numba twins in _kernels_numba: same signatures, same integer
bookkeeping, bit-identical results. They are selected when PGLCA_NO_NUMBA=1
is set or numba is not importable.
"""

import numpy as np


# ---------------------------------------------------------------------------
# coverage scanning

def coverage_count(arr, g, subsets):
    """Number of (row 4-subset, 4-tuple) pairs covered by the columns."""
    a = arr.astype(np.int64)
    g4 = g ** 4
    covered = 0
    for s in subsets:
        codes = ((a[s[0]] * g + a[s[1]]) * g + a[s[2]]) * g + a[s[3]]
        covered += int(np.count_nonzero(np.bincount(codes, minlength=g4)))
    return covered


def find_first_missing(arr, g, subsets):
    """Lexicographically first uncovered (subset index, packed tuple), or
    (-1, -1) when every pair is covered."""
    a = arr.astype(np.int64)
    g4 = g ** 4
    for si in range(len(subsets)):
        s = subsets[si]
        codes = ((a[s[0]] * g + a[s[1]]) * g + a[s[2]]) * g + a[s[3]]
        counts = np.bincount(codes, minlength=g4)
        holes = np.flatnonzero(counts == 0)
        if len(holes):
            return int(si), int(holes[0])
    return -1, -1


def tuple_count_table(arr, g, subsets):
    """counts[si, code] = how many columns show that packed tuple on subset si."""
    a = arr.astype(np.int64)
    g4 = g ** 4
    out = np.zeros((len(subsets), g4), dtype=np.int64)
    for si, s in enumerate(subsets):
        codes = ((a[s[0]] * g + a[s[1]]) * g + a[s[2]]) * g + a[s[3]]
        out[si] = np.bincount(codes, minlength=g4)
    return out


def greedy_flex(arr, g, subsets, row_sub_flat, row_sub_off, counts, order):
    """Greedy flexibility marking. Entries are visited in the given order;
    an entry is marked when every row subset through it still has at least
    two witnesses for the entry's column tuple, and marking claims one
    witness (counts is mutated). The resulting set can be overwritten
    simultaneously without losing coverage."""
    k, n = arr.shape
    a = arr.astype(np.int64)
    flex = np.zeros((k, n), dtype=np.bool_)
    for e in order:
        r = int(e) // n
        c = int(e) % n
        subs = row_sub_flat[row_sub_off[r]:row_sub_off[r + 1]]
        quad = subsets[subs]
        col = a[:, c]
        codes = ((col[quad[:, 0]] * g + col[quad[:, 1]]) * g
                 + col[quad[:, 2]]) * g + col[quad[:, 3]]
        vals = counts[subs, codes]
        if vals.min() >= 2:
            counts[subs, codes] = vals - 1
            flex[r, c] = True
    return flex


# ---------------------------------------------------------------------------
# starter-vector hill climbing

def _apply_sub(vecs, vi, pos, sub, k, g, aff, coord, orbit_of, sizes,
               orb_sizes, const_id, include_const, cnt, tup_orbit,
               missing, covered):
    """Recompute the tuples affected by setting position pos of vector vi to
    sub, and roll the per-class orbit counters. vecs itself is not written."""
    C = aff.shape[1]
    NO = orb_sizes.shape[0]
    starts = (pos + aff) % k                       # 4 x C
    idx = (starts[:, None, :] + coord[None, :, :]) % k   # 4 x 4coord x C
    vals = vecs[vi][idx]
    vals = np.where(idx == pos, sub, vals).astype(np.int64)
    codes = ((vals[:, 0] * g + vals[:, 1]) * g + vals[:, 2]) * g + vals[:, 3]
    new_orb = orbit_of[codes]                      # 4 x C
    carange = np.arange(C)
    old_orb = tup_orbit[vi][carange[None, :], starts]

    changed = new_orb != old_orb
    cls_idx = np.broadcast_to(carange, (4, C))[changed]
    dec = old_orb[changed]
    inc = new_orb[changed]
    net = (np.bincount(cls_idx * NO + inc, minlength=C * NO)
           - np.bincount(cls_idx * NO + dec, minlength=C * NO))
    nz = np.flatnonzero(net)
    flat = cnt.reshape(-1)
    oldv = flat[nz]
    newv = oldv + net[nz]
    orb_ids = nz % NO
    cls_ids = nz // NO
    nonconst = orb_ids != const_id
    went_zero = (oldv > 0) & (newv == 0)
    became = (oldv == 0) & (newv > 0)
    missing += int(np.count_nonzero(went_zero & nonconst))
    missing -= int(np.count_nonzero(became & nonconst))
    cweight = 0 if include_const else g
    weight = sizes[cls_ids] * np.where(nonconst, orb_sizes[orb_ids], cweight)
    covered += int(weight[became].sum()) - int(weight[went_zero].sum())
    flat[nz] = newv
    tup_orbit[vi][carange[None, :], starts] = new_orb
    return missing, covered


def hill_climb(vecs, nvec, g, gaps, sizes, orbit_of, orb_sizes, const_id,
               include_const, cnt, tup_orbit, missing, covered,
               mv_vec, mv_pos, mv_off, plateau, plateau_cap, stop_on_full,
               objective):
    """First-improvement hill climbing over starter vector entries.

    The move-acceptance order is lexicographic: objective 0 minimizes
    missing (class, orbit) pairs with covered weight as tiebreak, objective
    1 maximizes covered weight with missing pairs as tiebreak. Consumes the
    pregenerated proposal stream until it runs out, the plateau cap is
    exceeded (flag 1), or stop_on_full sees zero missing pairs (flag 2).
    Mutates vecs, cnt and tup_orbit in place and returns
    (consumed, missing, covered, plateau, flag)."""
    k = vecs.shape[1]
    x = gaps[:, 0]
    y = gaps[:, 1]
    z = gaps[:, 2]
    zero = np.zeros_like(x)
    aff = np.stack([zero, -x, -x - y, -x - y - z])
    coord = np.stack([zero, x, x + y, x + y + z])
    consumed = 0
    B = mv_vec.shape[0]
    for t in range(B):
        if stop_on_full and missing == 0:
            return consumed, missing, covered, plateau, 2
        if plateau > plateau_cap:
            return consumed, missing, covered, plateau, 1
        consumed += 1
        vi = int(mv_vec[t])
        pos = int(mv_pos[t])
        cur = int(vecs[vi, pos])
        sym = (cur + int(mv_off[t])) % g
        m1, c1 = _apply_sub(vecs, vi, pos, sym, k, g, aff, coord, orbit_of,
                            sizes, orb_sizes, const_id, include_const,
                            cnt, tup_orbit, missing, covered)
        d_miss = m1 - missing
        d_cov = c1 - covered
        if objective == 0:
            better = d_miss < 0 or (d_miss == 0 and d_cov > 0)
        else:
            better = d_cov > 0 or (d_cov == 0 and d_miss < 0)
        if better:
            vecs[vi, pos] = sym
            missing, covered = m1, c1
            plateau = 0
        elif d_miss == 0 and d_cov == 0:
            vecs[vi, pos] = sym
            missing, covered = m1, c1
            plateau += 1
        else:
            missing, covered = _apply_sub(vecs, vi, pos, cur, k, g, aff,
                                          coord, orbit_of, sizes, orb_sizes,
                                          const_id, include_const, cnt,
                                          tup_orbit, m1, c1)
            plateau += 1
    if stop_on_full and missing == 0:
        return consumed, missing, covered, plateau, 2
    return consumed, missing, covered, plateau, 0


# ---------------------------------------------------------------------------
# completion-matrix hill climbing

def _c1_apply(mat, r, col, sub, g, member_rows, mlist, orbit_of,
              req_off, req_orb, hits, unsat):
    for m in mlist:
        rows = member_rows[m]
        v = mat[rows, col].astype(np.int64)
        old = ((v[0] * g + v[1]) * g + v[2]) * g + v[3]
        v = np.where(rows == r, sub, v)
        new = ((v[0] * g + v[1]) * g + v[2]) * g + v[3]
        o_old = int(orbit_of[old])
        o_new = int(orbit_of[new])
        if o_old == o_new:
            continue
        for p in range(req_off[m], req_off[m + 1]):
            if req_orb[p] == o_old:
                hits[p] -= 1
                if hits[p] == 0:
                    unsat += 1
            elif req_orb[p] == o_new:
                hits[p] += 1
                if hits[p] == 1:
                    unsat -= 1
    # Commit the write here rather than in the caller: a rejected move is
    # then undone by a second call with the previous symbol, which sees the
    # trial state as "old" and reverses every hit delta exactly.
    mat[r, col] = sub
    return unsat


def c1_climb(mat, g, member_rows, rm_flat, rm_off, orbit_of,
             req_off, req_orb, hits, unsat,
             mv_row, mv_col, mv_off, plateau, plateau_cap):
    """Hill climbing over completion-matrix entries; the objective is the
    number of unsatisfied (member subset, required orbit) pairs. Returns
    (consumed, unsat, plateau, flag) with flag 2 on success."""
    consumed = 0
    B = mv_row.shape[0]
    for t in range(B):
        if unsat == 0:
            return consumed, unsat, plateau, 2
        if plateau > plateau_cap:
            return consumed, unsat, plateau, 1
        consumed += 1
        r = int(mv_row[t])
        col = int(mv_col[t])
        cur = int(mat[r, col])
        sym = (cur + int(mv_off[t])) % g
        mlist = rm_flat[rm_off[r]:rm_off[r + 1]]
        u1 = _c1_apply(mat, r, col, sym, g, member_rows, mlist, orbit_of,
                       req_off, req_orb, hits, unsat)
        if u1 < unsat:
            unsat = u1
            plateau = 0
        elif u1 == unsat:
            unsat = u1
            plateau += 1
        else:
            unsat = _c1_apply(mat, r, col, cur, g, member_rows, mlist,
                              orbit_of, req_off, req_orb, hits, u1)
            plateau += 1
    if unsat == 0:
        return consumed, unsat, plateau, 2
    return consumed, unsat, plateau, 0
