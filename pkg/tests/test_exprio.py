from fractions import Fraction

import pytest
from hypothesis import given

from darboux.exprio import ParseError, SourceSpan, format_rational, parse_polynomial, print_polynomial
from darboux.poly import DEFAULT_CONTEXT, Polynomial, VariableContext
from oracles import CURVE_2I
from strategies import polynomials

z, y, x, q, p, a = DEFAULT_CONTEXT.gens()


def test_parse_leading_terms():
    f = parse_polynomial("y^3 - 9/26*q^2*z")
    assert f == y**3 - Fraction(9, 26) * q * q * z


def test_parse_zero_and_whitespace():
    assert parse_polynomial("0").is_zero()
    assert parse_polynomial("  2 *y\t+ 1 ") == 2 * y + 1


def test_parse_parentheses_and_unary_minus():
    assert parse_polynomial("-(y - 1)*(y + 1)") == 1 - y * y
    assert parse_polynomial("--y") == y
    assert parse_polynomial("3/6") == Fraction(1, 2)


def test_print_examples():
    assert print_polynomial(DEFAULT_CONTEXT.zero()) == "0"
    f = Polynomial(DEFAULT_CONTEXT, {(0, 4, 0, 0, 0, 0): 1, (0, 2, 0, 1, 0, 0): Fraction(1, 19)})
    assert print_polynomial(f) == "y^4 + 1/19*q*y^2"
    assert print_polynomial(-y + 1) == "-y + 1"
    assert print_polynomial(a * a * x * x * y) == "a^2*x^2*y"


def test_format_rational():
    assert format_rational(Fraction(-3, 4)) == "-3/4"
    assert format_rational(Fraction(6, 3)) == "2"


def test_printed_catalog_curve_round_trips():
    from darboux.catalog import get_entry

    g = get_entry("2-ii").curve_polynomial()
    assert parse_polynomial(print_polynomial(g)) == g
    g1 = get_entry("2-i").curve_polynomial()
    zi, yi, qi = (DEFAULT_CONTEXT.index(v) for v in "zyq")
    got = {(e[zi], e[yi], e[qi]): c for e, c in g1.items()}
    assert got == CURVE_2I


@pytest.mark.parametrize("text, start, end", [
    ("", 0, 0),
    ("y +", 3, 3),
    ("y ^ -1", 4, 5),
    ("2*w", 2, 3),
    ("1/0", 1, 3),
    ("(y", 2, 2),
    ("y y", 2, 3),
    ("y $", 2, 3),
])
def test_parse_errors_carry_spans(text, start, end):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text)
    err = info.value
    assert isinstance(err.span, SourceSpan)
    assert (err.span.start, err.span.end) == (start, end)
    assert str(err)


def test_unknown_variable_lists_expected_names():
    with pytest.raises(ParseError) as info:
        parse_polynomial("u + 1", VariableContext(("s", "t")))
    assert info.value.expected == frozenset({"'s'", "'t'"})


def test_span_invariant():
    with pytest.raises(ValueError):
        SourceSpan(3, 1)


@given(polynomials(max_terms=6, max_exp=4, used=6))
def test_parse_print_round_trip(f):
    text = print_polynomial(f)
    assert parse_polynomial(text) == f
    assert print_polynomial(parse_polynomial(text)) == text
