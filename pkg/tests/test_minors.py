import random
from itertools import combinations
from math import comb

import pytest

from arcstraight.errors import UsageError
from arcstraight.minors import (expand_minor, expand_product, f_sum,
                                fundamental_relation, in_ideal, make_minor,
                                minor_det, minor_from_obj, minor_to_obj,
                                normalize_sequence, parse_minor,
                                parse_product, relation_coeffs,
                                rename_indices)
from arcstraight.ring import Polynomial, bidegree_split, dbar, x_var


def xp(i, j, k=0):
    return Polynomial.var(x_var(i, j, k))


# -- construction and normalization ---------------------------------------


def test_make_minor_validates():
    with pytest.raises(UsageError):
        make_minor(0, [1, 2], [1])
    with pytest.raises(UsageError):
        make_minor(0, [2, 1], [1, 2])
    with pytest.raises(UsageError):
        make_minor(-1, [1], [1])
    with pytest.raises(UsageError):
        make_minor(0, [], [])


def test_normalize_sequence_transposition():
    sign, sym = normalize_sequence([2, 1], [1, 2], 0)
    assert sign == -1
    assert sym == make_minor(0, [1, 2], [1, 2])


def test_normalize_sequence_repeat_is_zero():
    assert normalize_sequence([1, 1], [1, 2], 3).sign == 0


def test_normalize_sequence_trivial():
    sign, sym = normalize_sequence([1], [1], 5)
    assert sign == 1 and sym == make_minor(5, [1], [1])


def test_normalize_sequence_double_swap():
    sign, sym = normalize_sequence([2, 1], [2, 1], 4)
    assert sign == 1 and sym == make_minor(4, [1, 2], [1, 2])


# -- expansion -------------------------------------------------------------


def test_expand_weight0_2minor():
    got = expand_minor(make_minor(0, [1, 2], [1, 3]))
    assert got == xp(1, 1) * xp(2, 3) - xp(1, 3) * xp(2, 1)


def test_expand_single_cell():
    assert expand_minor(make_minor(0, [1], [1])) == xp(1, 1)
    assert expand_minor(make_minor(5, [1], [1])) == xp(1, 1, 5)


def test_expand_weight1_2minor():
    # independent oracle: derive the weight-0 expansion once
    expected = dbar(expand_minor(make_minor(0, [1, 2], [1, 2])), 1)
    got = expand_minor(make_minor(1, [1, 2], [1, 2]))
    assert got == expected
    frozen = (xp(1, 1, 1) * xp(2, 2) + xp(1, 1) * xp(2, 2, 1)
              - xp(1, 2, 1) * xp(2, 1) - xp(1, 2) * xp(2, 1, 1))
    assert got == frozen


def test_expand_matches_iterated_derivative():
    for size in (1, 2, 3):
        rows = tuple(range(1, size + 1))
        cols = tuple(range(2, size + 2))
        base = expand_minor(make_minor(0, rows, cols))
        for n in range(5):
            assert expand_minor(make_minor(n, rows, cols)) == dbar(base, n)


def test_expand_bidegree():
    for n in (0, 2, 4):
        f = expand_minor(make_minor(n, [1, 3], [2, 4]))
        assert set(bidegree_split(f)) == {(2, n)}


def test_laplace_expansion():
    # expanding along the first row matches the direct determinant
    for size in (2, 3, 4):
        rows = tuple(range(1, size + 1))
        cols = tuple(range(1, size + 1))
        direct = minor_det(rows, cols)
        along = Polynomial.zero()
        for t, col in enumerate(cols):
            rest_rows = rows[1:]
            rest_cols = cols[:t] + cols[t + 1:]
            cof = minor_det(rest_rows, rest_cols) * xp(rows[0], col)
            along = along + (cof if t % 2 == 0 else -cof)
        assert direct == along


def test_minor_det_edge_cases():
    assert minor_det([1], [2]) == xp(1, 2)
    assert minor_det([], []) == Polynomial.one()
    with pytest.raises(UsageError):
        minor_det([1, 2], [1])


def test_rename_indices_merges():
    f = expand_minor(make_minor(0, [1, 2], [1, 2]))
    collapsed = rename_indices(f, {1: 1, 2: 1}, {1: 1, 2: 2})
    assert collapsed.is_zero()  # equal rows kill the determinant


# -- ideal membership -------------------------------------------------------


def test_generator_in_ideal():
    for size, n in ((2, 2), (3, 3)):
        sym = make_minor(0, range(1, size + 1), range(1, size + 1))
        assert in_ideal(expand_minor(sym), n)


def test_variable_not_in_ideal():
    assert not in_ideal(xp(1, 1), 2)


def test_derivative_of_generator_in_ideal():
    f = dbar(expand_minor(make_minor(0, [1, 2], [1, 2])), 3)
    assert in_ideal(f, 2)


def test_product_with_ideal_member():
    g = expand_minor(make_minor(1, [1, 2], [1, 2]))
    assert in_ideal(g * xp(1, 1, 2), 2)


def test_in_ideal_filtration():
    g = expand_minor(make_minor(0, [1, 2], [1, 2]))
    assert in_ideal(g, 2)
    assert not in_ideal(g, 3)


# -- f_sum -------------------------------------------------------------------


def test_f_sum_smallest_case():
    # independent oracle: expand the four singleton terms directly
    expected = Polynomial.zero()
    for n_row in (1, 2):
        for j_col in (1, 2):
            sign = -1 if (n_row + j_col) % 2 else 1
            n_bar = 3 - n_row
            j_bar = 3 - j_col
            expected = expected + (xp(n_row, j_col) * xp(n_bar, j_bar)).scale(sign)
    got = f_sum((), (), (), (), 1, 0, 0, 2)
    assert got == expected
    assert got == (xp(1, 1) * xp(2, 2) - xp(1, 2) * xp(2, 1)).scale(2)


def test_f_sum_full_size_single_term():
    got = f_sum((), (), (), (), 2, 0, 0, 2)
    assert got == minor_det([1, 2], [1, 2])


def test_f_sum_derivative_identity():
    # acting by dbar^m re-expands into the binomial-weighted family
    for (k, l, m) in ((0, 0, 1), (1, 0, 1), (1, 1, 2), (2, 1, 1)):
        lhs = dbar(f_sum((), (), (), (), 1, k, l, 2), m)
        rhs = Polynomial.zero()
        for a in range(m + 1):
            c = comb(l + a, l) * comb(k + m - l - a, k - l)
            rhs = rhs + f_sum((), (), (), (), 1, k + m, l + a, 2).scale(c)
        assert lhs == rhs


def test_f_sum_constraints():
    free = f_sum((), (), (), (), 1, 0, 0, 3)
    pinned = f_sum({1}, (), (), (), 1, 0, 0, 3)
    assert free != pinned
    with pytest.raises(UsageError):
        f_sum({1}, {1}, (), (), 1, 0, 0, 3)
    with pytest.raises(UsageError):
        f_sum({1, 2}, {3}, (), (), 1, 0, 0, 3)
    with pytest.raises(UsageError):
        f_sum((), (), (), (), 1, 1, 2, 2)


# -- relation_coeffs ---------------------------------------------------------


def test_relation_coeffs_zero_window():
    assert relation_coeffs(4, 1, [0, 0]) == [0] * 5


def test_relation_coeffs_full_window_is_identity():
    window = [3, -1, 4, 1]
    assert relation_coeffs(3, 0, window) == window


def test_relation_coeffs_singleton_window():
    # width-1 window: the completion is the l=0 binomial row, all ones
    got = relation_coeffs(3, 1, [1])
    assert got == [1, 1, 1, 1]
    assert all(isinstance(v, int) for v in got)


def test_relation_coeffs_window_respected():
    for m in (2, 3, 4):
        for k0 in range(m - 1):
            window = [1, -2]
            got = relation_coeffs(m, k0, window)
            assert got[k0:k0 + 2] == window
            assert len(got) == m + 1


def test_relation_coeffs_membership():
    # weighted families built from the coefficients land in the ideal
    for m in (1, 2, 3):
        for k0 in range(m):
            coeffs = relation_coeffs(m, k0, [1])
            total = Polynomial.zero()
            for k, c in enumerate(coeffs):
                if c:
                    total = total + f_sum((), (), (), (), 1, m, k, 2).scale(c)
            assert in_ideal(total, 2)


def test_relation_coeffs_precondition():
    with pytest.raises(UsageError):
        relation_coeffs(2, 2, [1, 1])
    with pytest.raises(UsageError):
        relation_coeffs(3, 0, [])


# -- fundamental relation -----------------------------------------------------


def test_fundamental_relation_smallest():
    rel = fundamental_relation((1,), (1,), (2,), (2,), 1, 1, 1, 1, 1, 0, [1, 1])
    assert not rel.is_zero()
    assert in_ideal(rel, 2)


def test_fundamental_relation_overlapping_indices():
    rel = fundamental_relation((1,), (1,), (1,), (1,), 1, 1, 1, 1, 2, 0, [1, 0])
    assert in_ideal(rel, 2)


def test_fundamental_relation_bihomogeneous():
    for m in (1, 2, 3):
        rel = fundamental_relation((1, 2), (1, 2), (3,), (3,),
                                   2, 2, 1, 1, m, 0, [1] * min(m + 1, 2))
        assert in_ideal(rel, 3)
        if not rel.is_zero():
            assert set(bidegree_split(rel)) == {(3, m)}


def test_fundamental_relation_zero_window():
    rel = fundamental_relation((1,), (1,), (2,), (2,), 1, 1, 1, 1, 3, 1, [0, 0])
    assert rel.is_zero()


def test_fundamental_relation_preconditions():
    with pytest.raises(UsageError):
        fundamental_relation((1,), (1,), (1, 2), (1, 2), 1, 1, 1, 1, 1, 0, [1, 1])
    with pytest.raises(UsageError):
        fundamental_relation((1,), (1,), (2,), (2,), 0, 0, 0, 0, 1, 0, [1])


# -- parsing and wire format ---------------------------------------------------


def test_parse_minor():
    assert parse_minor("0:(1,2|1,3)") == make_minor(0, [1, 2], [1, 3])
    assert parse_minor("4:(2|3)") == make_minor(4, [2], [3])
    with pytest.raises(UsageError):
        parse_minor("(1|2)")
    with pytest.raises(UsageError):
        parse_minor("0:(2,1|1,2)")


def test_parse_product():
    prod = parse_product("0:(1|2),0:(2|1)")
    assert prod == (make_minor(0, [1], [2]), make_minor(0, [2], [1]))
    with pytest.raises(UsageError):
        parse_product("nonsense")


def test_minor_obj_round_trip():
    j = make_minor(3, [1, 4], [2, 5])
    assert minor_from_obj(minor_to_obj(j)) == j


def test_expand_product():
    js = [make_minor(0, [1], [1]), make_minor(1, [1], [1])]
    assert expand_product(js) == xp(1, 1) * xp(1, 1, 1)
    assert expand_product([]) == Polynomial.one()
