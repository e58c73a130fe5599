"""Event expression grammar."""
from __future__ import annotations

import pytest

from screenoff.events import cylinder, omega
from screenoff.exprs import ExpressionError, parse_event

from test_order import coin_site


def test_atom():
    s = coin_site()
    assert parse_event(s, "c=0") == cylinder(s, "c", 0)


def test_whitespace_insignificant():
    s = coin_site()
    assert parse_event(s, "  c =  1 ") == cylinder(s, "c", 1)


def test_and_or_precedence():
    s = coin_site()
    # a | b & c parses as a | (b & c)
    got = parse_event(s, "c=0 | a_s=0 & b_s=0")
    want = cylinder(s, "c", 0) | (cylinder(s, "a_s", 0) & cylinder(s, "b_s", 0))
    assert got == want
    assert got != (cylinder(s, "c", 0) | cylinder(s, "a_s", 0)) & cylinder(s, "b_s", 0)


def test_parens_override():
    s = coin_site()
    got = parse_event(s, "(c=0 | a_s=0) & b_s=0")
    want = (cylinder(s, "c", 0) | cylinder(s, "a_s", 0)) & cylinder(s, "b_s", 0)
    assert got == want


def test_negation_tightest():
    s = coin_site()
    got = parse_event(s, "!c=0 & b_s=1")
    want = (omega(s) ^ cylinder(s, "c", 0)) & cylinder(s, "b_s", 1)
    assert got == want


def test_double_negation():
    s = coin_site()
    assert parse_event(s, "!!c=0") == cylinder(s, "c", 0)


def test_empty_event_expressible():
    s = coin_site()
    assert parse_event(s, "c=0 & c=1") == 0


def test_unknown_element():
    s = coin_site()
    with pytest.raises(ExpressionError) as err:
        parse_event(s, "zz=0")
    assert err.value.position == 0


def test_value_out_of_range():
    s = coin_site()
    with pytest.raises(ExpressionError):
        parse_event(s, "c=2")


def test_syntax_error_position():
    s = coin_site()
    with pytest.raises(ExpressionError) as err:
        parse_event(s, "c=0 & & b_s=0")
    assert err.value.position == 6


def test_trailing_garbage():
    s = coin_site()
    with pytest.raises(ExpressionError):
        parse_event(s, "c=0 )")


def test_bad_character():
    s = coin_site()
    with pytest.raises(ExpressionError) as err:
        parse_event(s, "c=0 @ b_s=0")
    assert err.value.position == 4


def test_empty_input():
    with pytest.raises(ExpressionError):
        parse_event(coin_site(), "   ")


def test_unclosed_paren():
    with pytest.raises(ExpressionError):
        parse_event(coin_site(), "(c=0")
