import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acolen.charp import (OkBasis, digit_decomposition, frobenius_converse_check,
                          frobenius_cover_check, ok_basis, verify_ok_basis)
from acolen.monomial import MonomialIdeal, NotMPrimaryError
from acolen.parsing import parse_ideal

from conftest import m_primary_ideals


@pytest.mark.parametrize("d,p,size", [(2, 2, 4), (1, 3, 3), (3, 2, 8), (2, 5, 25)])
def test_ok_basis_sizes(d, p, size):
    B = ok_basis(d, p)
    assert len(B.elements) == size and verify_ok_basis(B)
    assert B.c_witness == (0,) * d


def test_ok_basis_one_variable():
    assert ok_basis(1, 3).elements == ((0,), (1,), (2,))


def test_ok_basis_rejects_composite():
    with pytest.raises(ValueError):
        ok_basis(2, 4)


def test_duplicate_residues_rejected():
    bad = OkBasis(2, 1, ((0,), (2,)), (0,))
    assert not verify_ok_basis(bad)


def test_wrong_count_rejected():
    assert not verify_ok_basis(OkBasis(3, 1, ((0,), (1,)), (0,)))


def test_shifted_residues_fail_decomposition():
    # residues distinct mod 2 but u = 0 has no representative
    assert not verify_ok_basis(OkBasis(2, 1, ((2,), (1,)), (0,)))


def test_digit_decomposition():
    assert digit_decomposition((7, 4), 3) == ((2, 1), (1, 1))


@given(st.lists(st.integers(0, 200), min_size=1, max_size=4), st.sampled_from([2, 3, 5, 7]))
def test_digit_decomposition_reconstructs(u, p):
    a, r = digit_decomposition(u, p)
    assert all(p * x + y == c and 0 <= y < p for x, y, c in zip(a, r, u))


@pytest.mark.parametrize("text,p", [("x1^2, x1*x2, x2^2", 2), ("x1^3, x1*x2, x2^2", 3),
                                    ("x1, x2, x3", 5)])
def test_cover_examples(text, p):
    I = parse_ideal(text)
    assert frobenius_cover_check(I, p) and frobenius_converse_check(I, p)


def test_cover_unit_ideal():
    assert frobenius_cover_check(MonomialIdeal.unit(2), 3)


def test_cover_requires_m_primary():
    with pytest.raises(NotMPrimaryError):
        frobenius_cover_check(parse_ideal("x1", 2), 2)


@settings(max_examples=60, deadline=None)
@given(m_primary_ideals(max_pure=4, extra=3), st.sampled_from([2, 3, 5]))
def test_cover_and_converse_hold(I, p):
    assert frobenius_cover_check(I, p)
    assert frobenius_converse_check(I, p)
