from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from darboux.poly import (
    DEFAULT_CONTEXT,
    ArityMismatch,
    ContextMismatch,
    NotDivisible,
    NotHomogeneous,
    Polynomial,
    UnknownVariable,
    VariableContext,
    exact_divide,
    partial_derivative,
    quasi_weight,
)
from oracles import dict_add, dict_diff, dict_eval, dict_mul
from strategies import CTX, nonzero_polynomials, points, polynomials

z, y, x, q, p, a = DEFAULT_CONTEXT.gens()


# --- unit examples ---------------------------------------------------------------

def test_zero_and_constants():
    assert CTX.zero().is_zero()
    assert not CTX.zero()
    assert CTX.one() == 1
    assert CTX.const(Fraction(3, 4)).constant_value() == Fraction(3, 4)
    assert (y - y).is_zero()


def test_terms_are_in_descending_graded_lex_order():
    f = y + z * z * y + q + 1
    degrees = [sum(e) for e, _ in f.items()]
    assert degrees == sorted(degrees, reverse=True)
    assert f.leading_term() == ((2, 1, 0, 0, 0, 0), Fraction(1))


def test_degree_queries():
    f = q * q * z * y**3 + z
    assert f.degree() == 6
    assert f.degree(("z", "y")) == 4
    assert f.degree_in("q") == 2
    assert f.variables() == ("z", "y", "q")


def test_coefficient_lookup():
    f = (y + q).scale(Fraction(1, 2)) ** 2
    assert f.coefficient({"y": 1, "q": 1}) == Fraction(1, 2)
    assert f.coefficient({"y": 2}) == Fraction(1, 4)
    assert f.coefficient({"z": 5}) == 0


def test_power_and_binomial():
    f = (z + y) ** 3
    assert f == z**3 + 3 * z * z * y + 3 * z * y * y + y**3
    assert (z + 1) ** 0 == 1
    with pytest.raises(ValueError):
        (z + 1) ** -1


def test_division_by_scalar():
    assert (2 * y) / 4 == y.scale(Fraction(1, 2))


def test_exact_divide_examples():
    f = (y * y - z) * (q * y + 1)
    assert f.exact_divide(q * y + 1) == y * y - z
    with pytest.raises(NotDivisible):
        (y * y + 1).exact_divide(y + 2)
    with pytest.raises(ZeroDivisionError):
        y.exact_divide(CTX.zero())


def test_substitute_is_simultaneous():
    f = z * y
    assert f.substitute({"z": y, "y": z}) == z * y
    assert (q * q * z).substitute({"q": 3}) == 9 * z
    assert (q * y).substitute({"q": y + 1}) == y * y + y


def test_evaluate():
    f = 3 * z * y - q
    assert f.evaluate((2, 5, 0, 7, 0, 0)) == 23
    with pytest.raises(ArityMismatch):
        f.evaluate((1, 2))


def test_quasi_weight_and_components():
    w = {"z": -1, "y": 1, "q": 2}
    assert (y**3 + q * y + q * q * z).quasi_weight(w) == 3
    with pytest.raises(NotHomogeneous):
        (y + z).quasi_weight(w)
    parts = (y + z + q).homogeneous_components(w)
    assert set(parts) == {-1, 1, 2}
    with pytest.raises(ValueError):
        CTX.zero().quasi_weight(w)


def test_context_errors():
    other = VariableContext(("u", "v"))
    with pytest.raises(ContextMismatch):
        y + other.var("u")
    with pytest.raises(UnknownVariable):
        CTX.var("w")
    with pytest.raises(ArityMismatch):
        Polynomial(CTX, {(1, 2): 1})
    with pytest.raises(ValueError):
        VariableContext(("u", "u"))


def test_with_context_and_coefficients_in():
    small = VariableContext(("y", "q"))
    f = q * y * y + 2
    g = f.with_context(small)
    assert g.context == small
    assert g.with_context(CTX) == f
    parts = f.coefficients_in(["y"])
    assert parts[(2,)] == q and parts[(0,)] == 2


def test_content_and_monic():
    f = Fraction(2, 3) * y + Fraction(4, 9) * z * z
    assert f.content() == Fraction(2, 9)
    assert f.monic().leading_term()[1] == 1


def test_hash_and_equality():
    assert hash(y + z) == hash(z + y)
    assert {y + z: 1}[z + y] == 1
    assert y * 2 == 2 * y


def test_functional_spellings():
    f = y * y * q
    assert partial_derivative(f, "y") == 2 * y * q
    assert exact_divide(f, y) == y * q
    assert quasi_weight(f, {"y": 1, "q": 2}) == 4


# --- properties: ring axioms, derivation, exact division ----------------------------

@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + CTX.zero() == f
    assert f * CTX.one() == f
    assert (f - f).is_zero()


@given(polynomials(), polynomials())
def test_arithmetic_matches_dict_oracle(f, g):
    assert dict(f.terms) == dict_add(dict(f.terms), {})
    assert (f * g).terms == dict_mul(dict(f.terms), dict(g.terms))
    assert dict((f + g).terms) == dict_add(dict(f.terms), dict(g.terms))


@given(polynomials(), polynomials(), st.sampled_from(["z", "y", "x", "q"]))
def test_derivation_rules(f, g, v):
    assert (f + g).diff(v) == f.diff(v) + g.diff(v)
    assert (f * g).diff(v) == f.diff(v) * g + f * g.diff(v)
    assert dict(f.diff(v).terms) == dict_diff(dict(f.terms), CTX.index(v))


@given(polynomials(), nonzero_polynomials())
def test_exact_divide_round_trip(f, d):
    assert (f * d).exact_divide(d) == f


@given(polynomials(), points)
def test_evaluate_matches_oracle(f, pt):
    assert f.evaluate(pt) == dict_eval(dict(f.terms), pt)
