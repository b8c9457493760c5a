import json

import pytest
from hypothesis import given

from acolen.monomial import MonomialIdeal
from acolen.parsing import (IdealSyntaxError, format_ideal, ideal_from_json, ideal_to_json,
                            parse_ideal, read_ideal)

from conftest import m_primary_ideals


def test_literal_and_json_agree():
    lit = parse_ideal("x1^3, x1*x2, x2^2")
    js = ideal_from_json({"d": 2, "gens": [[3, 0], [1, 1], [0, 2]]})
    assert lit == js
    assert ideal_to_json(lit) == {"d": 2, "gens": [[0, 2], [1, 1], [3, 0]]}


def test_star_is_optional_and_parentheses_allowed():
    assert parse_ideal("(x1 x2, x1^2)") == parse_ideal("x1*x2, x1^2")


def test_format_reads_naturally():
    assert format_ideal(parse_ideal("x2^2, x1*x2, x1^3")) == "x1^3, x1*x2, x2^2"


def test_unit_and_zero():
    assert parse_ideal("1", 3) == MonomialIdeal.unit(3)
    assert parse_ideal("0", 2).is_zero
    with pytest.raises(IdealSyntaxError):
        parse_ideal("")


def test_dimension_from_largest_variable():
    assert parse_ideal("x3").dim == 3
    with pytest.raises(IdealSyntaxError):
        parse_ideal("x3", 2)


@pytest.mark.parametrize("text,pos", [("x1^2, x2^", 9), ("x1, , x2", 4), ("x1 + x2", 3),
                                      ("x0", 1), ("*x1", 0), ("x1^2,", 5)])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(IdealSyntaxError) as err:
        parse_ideal(text)
    assert err.value.position == pos


def test_read_ideal_accepts_every_form():
    want = parse_ideal("x1^2, x2^2")
    assert read_ideal("x1^2, x2^2") == want
    assert read_ideal('{"d": 2, "gens": [[2, 0], [0, 2]]}') == want
    assert read_ideal({"d": 2, "gens": [[2, 0], [0, 2]]}) == want
    assert read_ideal(want) is want


def test_json_rejects_unknown_keys():
    with pytest.raises(ValueError):
        ideal_from_json({"d": 2, "gens": [], "extra": 1})


@given(m_primary_ideals())
def test_round_trips(J):
    assert parse_ideal(format_ideal(J), J.dim) == J
    assert ideal_from_json(json.dumps(ideal_to_json(J))) == J
