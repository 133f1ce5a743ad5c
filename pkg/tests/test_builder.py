"""Array assembly, residual reports, extension checks, and file formats."""

import numpy as np
import pytest

from pglca import (
    as_vector,
    assemble,
    assemble_extended,
    assembled_size,
    check_extension,
    circulant,
    constant_columns,
    develop,
    enumerate_group,
    fixed_row_residual,
    is_covering_array,
    make_field,
    parse_symbols,
    read_array,
    read_matrix,
    read_vectors,
    starter_check,
    write_array,
    write_matrix,
    write_vectors,
)
from vectors import (
    BASIC_SIZES_G3,
    C1_EXAMPLE_21,
    C1_SEARCHED_22,
    C1_TRANSPOSED_G3,
    DEFICIENT_21,
    EXTENSION_PLACEMENTS_G3,
    EXTENSIONS_G3,
    ONE_VECTOR_ROWS_G3,
    STARTERS_G3,
)


def _starters(k):
    u, v = STARTERS_G3[k]
    return parse_symbols(u, 2), parse_symbols(v, 2)


def _transposed_block(rows):
    return np.array([parse_symbols(r, 2) for r in rows]).T


# ---------------------------------------------------------------------------
# Building blocks
# ---------------------------------------------------------------------------

def test_as_vector_accepts_strings_and_arrays(fs3):
    a = as_vector("01*", fs3)
    b = as_vector([0, 1, 2], fs3)
    assert list(a) == [0, 1, 2] == list(b)
    with pytest.raises(ValueError):
        as_vector([0, 1, 3], fs3)  # symbol out of range for g=3


def test_circulant_columns_are_rotations():
    u = [0, 1, 2, 3]
    c = circulant(u)
    assert c.shape == (4, 4)
    # Entry (i, j) = u[(i - j) mod k]: column j is u rotated down by j, so
    # the column set is exactly the k cyclic rotations of u.
    for i in range(4):
        for j in range(4):
            assert c[i, j] == u[(i - j) % 4]
    cols = {tuple(c[:, j]) for j in range(4)}
    rots = {tuple(u[-j:] + u[:-j]) for j in range(4)}
    assert cols == rots


def test_develop_applies_every_group_element(fs3):
    elems = enumerate_group(fs3)
    block = circulant(as_vector("01*01", fs3))
    dev = develop(block, elems)
    assert dev.shape == (5, 5 * 6)
    # First copy is the identity image.
    assert (dev[:, :5] == block).all()
    for gi, e in enumerate(elems):
        img = dev[:, gi * 5 : (gi + 1) * 5]
        expect = np.vectorize(lambda s: e.perm[s])(block)
        assert (img == expect).all()


def test_constant_columns_shape(fs3):
    cc = constant_columns(3, 7)
    assert cc.shape == (7, 3)
    for s in range(3):
        assert (cc[:, s] == s).all()


@pytest.mark.parametrize("k,ell,bound,postopt", ONE_VECTOR_ROWS_G3)
def test_size_formula_matches_published_one_vector_rows(fs3, k, ell, bound, postopt):
    size = assembled_size(k, 1, ell, fs3)
    if postopt:
        assert size > bound  # published value reflects column removal
    else:
        assert size == bound


def test_size_formula_variants(fs3):
    assert assembled_size(21, 2, 9, fs3) == 309
    assert assembled_size(21, 2, 9, fs3, include_constants=False) == 306
    fs4 = make_field(3)
    assert assembled_size(10, 2, 0, fs4) == 2 * 10 * 24 + 4


# ---------------------------------------------------------------------------
# Two-starter assembly against published sizes
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("k", (30, 32, 34, 35))
def test_empty_residual_pairs_assemble_to_covering_arrays(fs3, k):
    u, v = _starters(k)
    assert starter_check(fs3, u, v).is_empty
    ta = assemble(fs3, u, v)
    assert ta.k == k
    assert ta.n == BASIC_SIZES_G3[k]
    assert is_covering_array(ta).ok


def test_deficient_pair_reports_published_residual(fs3):
    u, v = _starters(21)
    rep = starter_check(fs3, u, v)
    assert not rep.is_empty
    got = {
        (c.x, c.y, c.z): tuple(sorted(int(rep.table.labels[i]) for i in ids))
        for c, ids in rep.entries
    }
    assert got == DEFICIENT_21
    assert len(rep.deficient_classes) == 9
    assert rep.missing_pair_count == 9
    # Without the completion block the assembled array must fail.
    assert not is_covering_array(assemble(fs3, u, v)).ok


def test_k21_completion_block_direct_rows(fs3):
    u, v = _starters(21)
    c1 = np.array([parse_symbols(r, 2) for r in C1_EXAMPLE_21])
    assert c1.shape == (21, 9)
    ta = assemble(fs3, u, v, c1=c1)
    assert ta.n == 309
    assert is_covering_array(ta).ok


@pytest.mark.parametrize("k,ell", ((21, 9), (27, 4), (28, 4)))
def test_transposed_completion_blocks(fs3, k, ell):
    u, v = _starters(k)
    c1 = _transposed_block(C1_TRANSPOSED_G3[k])
    assert c1.shape == (k, ell)
    ta = assemble(fs3, u, v, c1=c1)
    assert ta.n == BASIC_SIZES_G3[k]
    assert is_covering_array(ta).ok


def test_k22_published_block_does_not_complete(fs3):
    u, v = _starters(22)
    c1 = _transposed_block(C1_TRANSPOSED_G3[22])
    ta = assemble(fs3, u, v, c1=c1)
    assert ta.n == 309
    assert not is_covering_array(ta).ok


def test_k22_searched_block_completes(fs3):
    u, v = _starters(22)
    c1 = _transposed_block(C1_SEARCHED_22)
    ta = assemble(fs3, u, v, c1=c1)
    assert ta.n == 309
    assert is_covering_array(ta).ok


def test_single_vector_assembly(fs3):
    ta = assemble(fs3, as_vector("00001001**011*1*", fs3))
    assert ta.k == 16
    assert ta.n == 16 * 6 + 3
    assert not is_covering_array(ta).ok  # one developed vector cannot cover


def test_assemble_without_constants(fs3):
    u, v = _starters(30)
    ta = assemble(fs3, u, v, include_constants=False)
    assert ta.n == BASIC_SIZES_G3[30] - 3
    assert not is_covering_array(ta).ok  # constant tuples lost


def test_undeveloped_block_is_appended_verbatim(fs3):
    u, v = _starters(30)
    extra = np.zeros((30, 2), dtype=np.int16)
    ta = assemble(fs3, u, v, c1=extra, develop_c1=False)
    assert ta.n == BASIC_SIZES_G3[30] + 2


# ---------------------------------------------------------------------------
# Fixed-row extensions
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("k", sorted(EXTENSIONS_G3))
def test_extension_placements_and_assembly(fs3, k):
    u, v = _starters(k)
    verdicts = check_extension(fs3, u, v)
    passing = tuple(sorted(c for c, ok in verdicts.items() if ok))
    assert passing == EXTENSION_PLACEMENTS_G3[k]
    assert len(verdicts) == 9  # all 3x3 symbol placements examined

    a, b = passing[0]
    ue = np.append(u, a)
    ve = np.append(v, b)
    assert fixed_row_residual(fs3, ue, ve).is_empty
    ta = assemble_extended(fs3, ue, ve)
    k_ext, size = EXTENSIONS_G3[k]
    assert ta.k == k_ext
    assert ta.n == size
    assert is_covering_array(ta).ok


def test_failing_placement_leaves_residual(fs3):
    u, v = _starters(32)
    verdicts = check_extension(fs3, u, v)
    bad = next(c for c, ok in verdicts.items() if not ok)
    ue = np.append(u, bad[0])
    ve = np.append(v, bad[1])
    assert not fixed_row_residual(fs3, ue, ve).is_empty
    assert not is_covering_array(assemble_extended(fs3, ue, ve)).ok


def test_assemble_extended_rejects_short_vectors(fs3):
    with pytest.raises(ValueError):
        assemble_extended(fs3, as_vector("0001", fs3))


# ---------------------------------------------------------------------------
# Residual report rendering
# ---------------------------------------------------------------------------

def test_residual_report_lines_format(fs3):
    u, v = _starters(21)
    rep = starter_check(fs3, u, v)
    lines = rep.lines()
    assert lines[0] == "d[1,2,2] | 10"
    assert len(lines) == 9
    assert str(rep).splitlines() == lines


def test_empty_residual_report_text(fs3):
    u, v = _starters(30)
    rep = starter_check(fs3, u, v)
    assert rep.lines() == []
    assert "every non-constant orbit" in str(rep)


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------

def test_array_file_round_trip(fs3, tmp_path):
    u, v = _starters(30)
    ta = assemble(fs3, u, v)
    path = tmp_path / "array.txt"
    write_array(ta, path)
    text = path.read_text()
    assert text.startswith(f"CA k={ta.k} n={ta.n} g=3 t=4")
    back = read_array(path)
    assert back.g == ta.g
    assert (back.entries == ta.entries).all()


def test_read_array_rejects_corrupt_files(fs3, tmp_path):
    u, v = _starters(30)
    ta = assemble(fs3, u, v)
    good = tmp_path / "good.txt"
    write_array(ta, good)
    lines = good.read_text().splitlines()

    bad_header = tmp_path / "bad_header.txt"
    bad_header.write_text("\n".join(["nonsense"] + lines[1:]) + "\n")
    with pytest.raises(ValueError):
        read_array(bad_header)

    bad_t = tmp_path / "bad_t.txt"
    bad_t.write_text("\n".join([lines[0].replace("t=4", "t=3")] + lines[1:]) + "\n")
    with pytest.raises(ValueError):
        read_array(bad_t)

    short_row = tmp_path / "short_row.txt"
    truncated = lines[1].split()[:-1]
    short_row.write_text("\n".join([lines[0], " ".join(truncated)] + lines[2:]) + "\n")
    with pytest.raises(ValueError):
        read_array(short_row)


def test_vector_file_round_trip(fs3, tmp_path):
    u, v = _starters(21)
    path = tmp_path / "vectors.txt"
    write_vectors(path, fs3, u, v)
    back = read_vectors(path, fs3)
    assert len(back) == 2
    assert (back[0] == u).all()
    assert (back[1] == v).all()


def test_matrix_file_round_trip(fs3, tmp_path):
    mat = _transposed_block(C1_SEARCHED_22)
    path = tmp_path / "matrix.txt"
    write_matrix(path, fs3, mat)
    back = read_matrix(path, fs3)
    assert (back == mat).all()
