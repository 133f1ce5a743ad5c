"""Numba-compiled hot kernels; see _kernels_numpy for the reference
semantics. Keep the two modules in lockstep: the parity tests compare them
move for move."""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def coverage_count(arr, g, subsets):
    k, n = arr.shape
    g4 = g ** 4
    seen = np.zeros(g4, dtype=np.int64)
    stamp = 0
    covered = 0
    for si in range(subsets.shape[0]):
        s0 = subsets[si, 0]
        s1 = subsets[si, 1]
        s2 = subsets[si, 2]
        s3 = subsets[si, 3]
        stamp += 1
        for j in range(n):
            code = ((np.int64(arr[s0, j]) * g + arr[s1, j]) * g
                    + arr[s2, j]) * g + arr[s3, j]
            if seen[code] != stamp:
                seen[code] = stamp
                covered += 1
    return covered


@njit(cache=True, nogil=True)
def find_first_missing(arr, g, subsets):
    k, n = arr.shape
    g4 = g ** 4
    seen = np.zeros(g4, dtype=np.int64)
    stamp = 0
    for si in range(subsets.shape[0]):
        s0 = subsets[si, 0]
        s1 = subsets[si, 1]
        s2 = subsets[si, 2]
        s3 = subsets[si, 3]
        stamp += 1
        hit = 0
        for j in range(n):
            code = ((np.int64(arr[s0, j]) * g + arr[s1, j]) * g
                    + arr[s2, j]) * g + arr[s3, j]
            if seen[code] != stamp:
                seen[code] = stamp
                hit += 1
        if hit < g4:
            for code in range(g4):
                if seen[code] != stamp:
                    return si, code
    return -1, -1


@njit(cache=True, nogil=True)
def tuple_count_table(arr, g, subsets):
    k, n = arr.shape
    g4 = g ** 4
    out = np.zeros((subsets.shape[0], g4), dtype=np.int64)
    for si in range(subsets.shape[0]):
        s0 = subsets[si, 0]
        s1 = subsets[si, 1]
        s2 = subsets[si, 2]
        s3 = subsets[si, 3]
        for j in range(n):
            code = ((np.int64(arr[s0, j]) * g + arr[s1, j]) * g
                    + arr[s2, j]) * g + arr[s3, j]
            out[si, code] += 1
    return out


@njit(cache=True, nogil=True)
def greedy_flex(arr, g, subsets, row_sub_flat, row_sub_off, counts, order):
    k, n = arr.shape
    flex = np.zeros((k, n), dtype=np.bool_)
    for e in order:
        r = e // n
        c = e % n
        ok = True
        for ptr in range(row_sub_off[r], row_sub_off[r + 1]):
            si = row_sub_flat[ptr]
            code = ((np.int64(arr[subsets[si, 0], c]) * g
                     + arr[subsets[si, 1], c]) * g
                    + arr[subsets[si, 2], c]) * g + arr[subsets[si, 3], c]
            if counts[si, code] < 2:
                ok = False
                break
        if ok:
            for ptr in range(row_sub_off[r], row_sub_off[r + 1]):
                si = row_sub_flat[ptr]
                code = ((np.int64(arr[subsets[si, 0], c]) * g
                         + arr[subsets[si, 1], c]) * g
                        + arr[subsets[si, 2], c]) * g + arr[subsets[si, 3], c]
                counts[si, code] -= 1
            flex[r, c] = True
    return flex


@njit(cache=True, nogil=True)
def _apply_sub(vecs, vi, pos, sub, k, g, gaps, sizes, orbit_of, orb_sizes,
               const_id, include_const, cnt, tup_orbit, missing, covered):
    C = gaps.shape[0]
    for c in range(C):
        x = gaps[c, 0]
        y = gaps[c, 1]
        z = gaps[c, 2]
        for j in range(4):
            if j == 0:
                m = pos
            elif j == 1:
                m = (pos - x) % k
            elif j == 2:
                m = (pos - x - y) % k
            else:
                m = (pos - x - y - z) % k
            i0 = m
            i1 = (m + x) % k
            i2 = (m + x + y) % k
            i3 = (m + x + y + z) % k
            v0 = sub if i0 == pos else vecs[vi, i0]
            v1 = sub if i1 == pos else vecs[vi, i1]
            v2 = sub if i2 == pos else vecs[vi, i2]
            v3 = sub if i3 == pos else vecs[vi, i3]
            code = ((np.int64(v0) * g + v1) * g + v2) * g + v3
            o_new = orbit_of[code]
            o_old = tup_orbit[vi, c, m]
            if o_new == o_old:
                continue
            cnt[c, o_old] -= 1
            if cnt[c, o_old] == 0:
                if o_old != const_id:
                    missing += 1
                    covered -= sizes[c] * orb_sizes[o_old]
                elif not include_const:
                    covered -= sizes[c] * g
            cnt[c, o_new] += 1
            if cnt[c, o_new] == 1:
                if o_new != const_id:
                    missing -= 1
                    covered += sizes[c] * orb_sizes[o_new]
                elif not include_const:
                    covered += sizes[c] * g
            tup_orbit[vi, c, m] = o_new
    return missing, covered


@njit(cache=True, nogil=True)
def hill_climb(vecs, nvec, g, gaps, sizes, orbit_of, orb_sizes, const_id,
               include_const, cnt, tup_orbit, missing, covered,
               mv_vec, mv_pos, mv_off, plateau, plateau_cap, stop_on_full,
               objective):
    k = vecs.shape[1]
    consumed = 0
    B = mv_vec.shape[0]
    for t in range(B):
        if stop_on_full and missing == 0:
            return consumed, missing, covered, plateau, 2
        if plateau > plateau_cap:
            return consumed, missing, covered, plateau, 1
        consumed += 1
        vi = mv_vec[t]
        pos = mv_pos[t]
        cur = vecs[vi, pos]
        sym = (cur + mv_off[t]) % g
        m1, c1 = _apply_sub(vecs, vi, pos, sym, k, g, gaps, sizes, orbit_of,
                            orb_sizes, const_id, include_const, cnt,
                            tup_orbit, missing, covered)
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
            missing, covered = _apply_sub(vecs, vi, pos, cur, k, g, gaps,
                                          sizes, orbit_of, orb_sizes,
                                          const_id, include_const, cnt,
                                          tup_orbit, m1, c1)
            plateau += 1
    if stop_on_full and missing == 0:
        return consumed, missing, covered, plateau, 2
    return consumed, missing, covered, plateau, 0


@njit(cache=True, nogil=True)
def _c1_apply(mat, r, col, sub, g, member_rows, rm_flat, rm_off, orbit_of,
              req_off, req_orb, hits, unsat):
    for ptr in range(rm_off[r], rm_off[r + 1]):
        m = rm_flat[ptr]
        r0 = member_rows[m, 0]
        r1 = member_rows[m, 1]
        r2 = member_rows[m, 2]
        r3 = member_rows[m, 3]
        v0 = mat[r0, col]
        v1 = mat[r1, col]
        v2 = mat[r2, col]
        v3 = mat[r3, col]
        old = ((np.int64(v0) * g + v1) * g + v2) * g + v3
        if r0 == r:
            v0 = sub
        if r1 == r:
            v1 = sub
        if r2 == r:
            v2 = sub
        if r3 == r:
            v3 = sub
        new = ((np.int64(v0) * g + v1) * g + v2) * g + v3
        o_old = orbit_of[old]
        o_new = orbit_of[new]
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


@njit(cache=True, nogil=True)
def c1_climb(mat, g, member_rows, rm_flat, rm_off, orbit_of,
             req_off, req_orb, hits, unsat,
             mv_row, mv_col, mv_off, plateau, plateau_cap):
    consumed = 0
    B = mv_row.shape[0]
    for t in range(B):
        if unsat == 0:
            return consumed, unsat, plateau, 2
        if plateau > plateau_cap:
            return consumed, unsat, plateau, 1
        consumed += 1
        r = mv_row[t]
        col = mv_col[t]
        cur = mat[r, col]
        sym = (cur + mv_off[t]) % g
        u1 = _c1_apply(mat, r, col, sym, g, member_rows, rm_flat, rm_off,
                       orbit_of, req_off, req_orb, hits, unsat)
        if u1 < unsat:
            unsat = u1
            plateau = 0
        elif u1 == unsat:
            unsat = u1
            plateau += 1
        else:
            unsat = _c1_apply(mat, r, col, cur, g, member_rows, rm_flat,
                              rm_off, orbit_of, req_off, req_orb, hits, u1)
            plateau += 1
    if unsat == 0:
        return consumed, unsat, plateau, 2
    return consumed, unsat, plateau, 0
