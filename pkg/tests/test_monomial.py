import math
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acolen.monomial import (ColonByZeroWarning, DimensionMismatchError, MonomialIdeal,
                             NotMPrimaryError, base_digits, bracket_power, colength,
                             colength_bruteforce, colength_inclusion_exclusion, colength_value,
                             colon, contains_ideal, contains_monomial, generalized_bracket_power,
                             ideal_sum, intersect, is_m_primary, normalize, num_min_gens, power,
                             power_containment_threshold, product, staircase_boxes)
from acolen.parsing import parse_ideal

from conftest import exponent_sets, m_primary_ideals

M2 = MonomialIdeal.maximal(2)


def I(text, d=None):
    return parse_ideal(text, d)


# normalize ------------------------------------------------------------------


def test_normalize_drops_multiples():
    assert normalize({(1, 0), (2, 0), (0, 1)}, 2).gens == ((0, 1), (1, 0))


def test_normalize_empty_is_zero_ideal():
    Z = normalize([], 2)
    assert Z.is_zero and Z == MonomialIdeal.zero(2)


def test_normalize_pairwise_scan():
    got = normalize({(2, 1), (1, 2), (3, 0), (0, 3), (2, 2)}, 2)
    assert set(got.gens) == {(3, 0), (2, 1), (1, 2), (0, 3)}
    assert list(got.gens) == sorted(got.gens)


def test_normalize_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        normalize([(1, 0), (1, 0, 0)], 2)


def test_unit_ideal_absorbs_everything():
    assert normalize([(0, 0), (3, 1)], 2) == MonomialIdeal.unit(2)


@given(exponent_sets())
def test_normalize_idempotent_and_order_free(data):
    d, vecs = data
    J = normalize(vecs, d)
    assert normalize(J.gens, d) == J
    assert normalize(list(reversed(vecs)), d) == J
    for g in J.gens:
        for h in J.gens:
            assert g == h or not all(a <= b for a, b in zip(g, h))


# membership -------------------------------------------------------------------


@pytest.mark.parametrize("ideal,u,want", [
    ("x1^2, x1*x2", (1, 1), True),
    ("x1^2, x2^2", (1, 1), False),
    ("x1^3, x1^2*x2, x1*x2^2, x2^3", (2, 2), True),
])
def test_contains_monomial_examples(ideal, u, want):
    assert contains_monomial(I(ideal), u) is want


def test_contains_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        contains_monomial(M2, (1, 1, 1))


@settings(max_examples=300)
@given(exponent_sets(max_size=6), st.data())
def test_contains_matches_definition(data, draw):
    d, vecs = data
    J = normalize(vecs, d)
    u = draw.draw(st.tuples(*[st.integers(0, 7)] * d))
    assert contains_monomial(J, u) == any(all(a <= b for a, b in zip(g, u)) for g in vecs)


# operations ---------------------------------------------------------------------


def test_product_example():
    assert product(M2, I("x1^2, x2^2")) == I("x1^3, x1^2*x2, x1*x2^2, x2^3")


def test_intersect_example():
    assert intersect(I("x1", 2), I("x2", 2)) == I("x1*x2")


def test_colon_example():
    assert colon(I("x1^2, x2^2"), M2) == I("x1^2, x1*x2, x2^2")


def test_sum_example():
    assert ideal_sum(I("x1^2", 2), I("x2^3", 2)) == I("x1^2, x2^3")


def test_colon_by_zero_warns_and_returns_unit():
    with pytest.warns(ColonByZeroWarning):
        assert colon(M2, MonomialIdeal.zero(2)).is_unit


def test_operations_reject_mixed_dimensions():
    for op in (ideal_sum, product, intersect, colon):
        with pytest.raises(DimensionMismatchError):
            op(M2, MonomialIdeal.maximal(3))


def test_zero_and_unit_behaviour():
    Z, U = MonomialIdeal.zero(2), MonomialIdeal.unit(2)
    assert product(Z, M2) == Z and ideal_sum(Z, M2) == M2
    assert intersect(U, M2) == M2 and product(U, M2) == M2
    assert colon(M2, U) == M2


@pytest.mark.parametrize("base,n,want", [
    ("x1, x2", 2, "x1^2, x1*x2, x2^2"),
    ("x1^2, x2^3", 2, "x1^4, x1^2*x2^3, x2^6"),
])
def test_power_examples(base, n, want):
    assert power(I(base), n) == I(want)


def test_power_zero_is_unit():
    assert power(I("x1^2, x2^3"), 0).is_unit


@settings(max_examples=60)
@given(m_primary_ideals(max_pure=4, extra=3), m_primary_ideals(max_pure=4, extra=3),
       m_primary_ideals(max_pure=4, extra=3))
def test_colon_adjunction(A, B, C):
    if not (A.dim == B.dim == C.dim):
        return
    assert contains_ideal(A, product(C, B)) == contains_ideal(colon(A, B), C)


# brackets -----------------------------------------------------------------------


def test_bracket_examples():
    assert bracket_power(M2, 2) == I("x1^2, x2^2")
    assert bracket_power(I("x1^2, x1*x2, x2^2"), 3) == I("x1^6, x1^3*x2^3, x2^6")
    assert colength_value(bracket_power(I("x1^2, x1*x2, x2^2"), 2)) == 12


def test_generalized_bracket_examples():
    assert generalized_bracket_power(M2, 3, 2) == I("x1^3, x1^2*x2, x1*x2^2, x2^3")
    assert generalized_bracket_power(M2, 1, 2) == M2
    for p in (2, 3, 5):
        assert generalized_bracket_power(MonomialIdeal.maximal(3), p ** 2, p) == \
            bracket_power(MonomialIdeal.maximal(3), p ** 2)


def test_generalized_bracket_rejects_composite():
    with pytest.raises(ValueError):
        generalized_bracket_power(M2, 3, 4)


def test_base_digits():
    assert base_digits(11, 3) == [2, 0, 1]


@pytest.mark.parametrize("p", [2, 3])
def test_carrying_law(p):
    table = {n: generalized_bracket_power(M2, n, p) for n in range(0, 129)}
    for n in range(0, 65):
        for m in range(0, 65):
            assert contains_ideal(product(table[n], table[m]), table[n + m])


# counting ------------------------------------------------------------------------


def test_is_m_primary_examples():
    assert is_m_primary(I("x1^2, x1*x2, x2^2"))
    assert not is_m_primary(I("x1", 2))
    assert is_m_primary(bracket_power(M2, 3))


@pytest.mark.parametrize("ideal,want", [
    ("x1, x2", 1),
    ("x1^3, x1^2*x2, x1*x2^2, x2^3", 6),
    ("x1^3, x1*x2, x2^2", 4),
])
def test_colength_examples(ideal, want):
    J = I(ideal)
    assert colength(J).value == want
    assert colength(J, "inclusion-exclusion").value == want


def test_colength_points_listed():
    res = colength(I("x1^3, x1*x2, x2^2"), with_points=True)
    assert set(res.complement_points) == {(0, 0), (1, 0), (2, 0), (0, 1)}


def test_colength_not_m_primary_is_infinite():
    res = colength(I("x1", 2))
    assert res.value == math.inf and not res.finite
    with pytest.raises(NotMPrimaryError):
        colength_value(I("x1", 2))


def test_unit_ideal_colength_zero():
    assert colength(MonomialIdeal.unit(3)).value == 0


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_colength_of_maximal_powers(d):
    m = MonomialIdeal.maximal(d)
    P = MonomialIdeal.unit(d)
    for n in range(0, 51 if d <= 3 else 21):
        assert colength_value(P) == math.comb(n + d - 1, d)
        P = product(P, m)


def test_num_min_gens_examples():
    assert num_min_gens(power(M2, 2)) == 3
    assert num_min_gens(MonomialIdeal.unit(2)) == 1
    assert num_min_gens(bracket_power(M2, 3)) == 2
    assert num_min_gens(generalized_bracket_power(M2, 3, 2)) == 4


def test_threshold_examples():
    assert power_containment_threshold(I("x1^2, x2^2")) == 3
    assert power_containment_threshold(power(M2, 5)) == 5
    assert power_containment_threshold(I("x1^3, x1*x2, x2^2")) == 3
    assert power_containment_threshold(MonomialIdeal.unit(2)) == 0


@settings(max_examples=200)
@given(m_primary_ideals())
def test_counting_methods_agree(J):
    box = colength_value(J)
    assert box == colength_bruteforce(J)
    if num_min_gens(J) <= 20:
        assert box == colength_inclusion_exclusion(J)


@settings(max_examples=100)
@given(m_primary_ideals(max_pure=5), st.sampled_from([2, 3, 4, 5]))
def test_frobenius_scaling(J, q):
    assert colength_value(bracket_power(J, q)) == q ** J.dim * colength_value(J)


@settings(max_examples=100)
@given(m_primary_ideals())
def test_threshold_is_sharp(J):
    k = power_containment_threshold(J)
    m = MonomialIdeal.maximal(J.dim)
    assert contains_ideal(J, power(m, k))
    if k > 0:
        assert not contains_ideal(J, power(m, k - 1))


@settings(max_examples=100)
@given(m_primary_ideals())
def test_staircase_boxes_partition_complement(J):
    boxes = staircase_boxes(J)
    assert sum(math.prod(h - l for l, h in zip(lo, hi)) for lo, hi in boxes) == colength_value(J)
