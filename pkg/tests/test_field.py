from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from darboux.catalog import get_entry
from darboux.exprio import parse_polynomial
from darboux.field import (
    CofactorDegreeViolation,
    CurveCertificate,
    NotInvariant,
    NotQuadratic,
    PolyVectorField,
    QuadraticNormalForm,
    QuadraticSystem,
    cofactor_of,
    is_square_free,
    lie_derivative,
    probe,
    recover_quadratic_field,
    verify_certificate,
)
from darboux.poly import DEFAULT_CONTEXT, ContextMismatch, Polynomial, VariableContext
from strategies import CTX, polynomials, rationals

z, y, x, q, p, a = DEFAULT_CONTEXT.gens()
WEIGHTS = {"z": -1, "y": 1, "q": 2}


def _normal_form(b: Fraction, c: Fraction) -> QuadraticNormalForm:
    return QuadraticNormalForm(q.scale(b), (q * q).scale(c), q)


def test_lie_derivative_of_the_oscillator_energy():
    X = PolyVectorField(-y, z)
    assert lie_derivative(X, z * z + y * y).is_zero()
    assert X(z) == -y


def test_cofactor_by_exact_division():
    X = PolyVectorField(z * y + 1, 3 * y * y + q)
    # the line z = 0 is not invariant: X(z) = z*y + 1
    with pytest.raises(NotInvariant):
        cofactor_of(X, z)
    Y = PolyVectorField(z * y, y)
    assert cofactor_of(Y, z) == y
    with pytest.raises(ValueError):
        cofactor_of(Y, CTX.zero())


def test_cofactor_degree_bound():
    # deg X(g) <= deg g + deg X - 1, so the bound holds for every true quotient
    assert cofactor_of(PolyVectorField(z * z, y), z) == z
    assert cofactor_of(PolyVectorField(z**3, y), z) == z * z
    assert issubclass(CofactorDegreeViolation, ValueError)


def test_quadratic_system_rejects_cubic():
    with pytest.raises(NotQuadratic):
        QuadraticSystem(z**3, y)
    with pytest.raises(ValueError):
        PolyVectorField(z, y, ("z", "z"))


def test_context_mismatch():
    other = VariableContext(("z", "y"))
    X = PolyVectorField(-y, z)
    with pytest.raises(ContextMismatch):
        lie_derivative(X, other.var("z"))


def test_normal_form_validation():
    with pytest.raises(ValueError):
        QuadraticNormalForm(z, q, q)


def test_catalog_2i_certificate():
    e = get_entry("2-i")
    X, g = e.system(), e.curve_polynomial()
    v = verify_certificate(CurveCertificate(X, g, 9 * y), check_square_free=True)
    assert v.passed and v.residual_terms == 0 and v.warnings == []
    bad = verify_certificate(CurveCertificate(X, g, 8 * y))
    assert not bad.passed and bad.residual_terms > 0


def test_certificate_degree_checks():
    X = PolyVectorField(-y, z)
    with pytest.raises(ValueError):
        CurveCertificate(X, CTX.zero(), CTX.zero())
    with pytest.raises(ValueError):
        CurveCertificate(X, z * z + y * y, CTX.zero(), degree=3)
    assert CurveCertificate(X, z * z + y * y, CTX.zero()).degree == 2


def test_certificate_warnings():
    X = PolyVectorField(-y, z)
    g = (z * z + y * y) ** 2
    v = verify_certificate(CurveCertificate(X, g, CTX.zero()), check_square_free=True)
    assert v.passed
    assert any("square-free" in w for w in v.warnings)


def test_probe_finds_a_counterexample_and_accepts_a_true_pair():
    X = PolyVectorField(-y, z)
    assert probe(X, z * z + y * y, CTX.zero()).passed
    bad = probe(X, z * z + 2 * y * y, CTX.zero())
    assert not bad.passed and bad.value != 0
    with pytest.raises(ValueError):
        probe(X, z, CTX.zero(), trials=0)


def test_square_free():
    assert is_square_free(z * z + y * y - 1, ("z", "y"))
    assert not is_square_free((y - z) ** 2 * (y + 1), ("z", "y"))
    # a squared parameter factor is harmless
    assert is_square_free(q * q * (y - z), ("z", "y"))


def test_recover_field_of_the_circle():
    g = z * z + y * y - 1
    fields = recover_quadratic_field(g, CTX.zero(), fixed_P=-y)
    assert fields, "the rotation field must be found"
    for X in fields:
        assert (lie_derivative(X, g)).is_zero()


def test_recover_field_reproduces_catalog_system():
    e = get_entry("2-i")
    g = e.curve_polynomial()
    found = recover_quadratic_field(g, 9 * y, fixed_P=z * y + 1)
    assert any(X.Q == e.system().Q for X in found)


# --- properties ---------------------------------------------------------------------

fields = st.builds(lambda P, Q: PolyVectorField(P, Q), polynomials(4, 2, 4), polynomials(4, 2, 4))


@given(fields, polynomials(4, 2, 4), polynomials(4, 2, 4))
def test_lie_derivative_is_a_derivation(X, f, g):
    assert lie_derivative(X, f * g) == lie_derivative(X, f) * g + f * lie_derivative(X, g)
    assert lie_derivative(X, f + g) == lie_derivative(X, f) + lie_derivative(X, g)


def _qh_polynomial(coeffs, W):
    # monomials z^i y^j q^k of weight -i + j + 2k = W with small exponents
    terms = {}
    it = iter(coeffs)
    for i in range(4):
        for j in range(4):
            twice = W + i - j
            if twice >= 0 and twice % 2 == 0:
                e = [0] * CTX.arity
                e[0], e[1], e[CTX.index("q")] = i, j, twice // 2
                terms[tuple(e)] = next(it, Fraction(0))
    return Polynomial(CTX, terms)


@given(rationals, rationals, st.lists(rationals, min_size=16, max_size=16), st.integers(-2, 4))
def test_pure_q_normal_forms_raise_quasi_weight_by_one(b, c, coeffs, W):
    X = _normal_form(b, c).field()
    g = _qh_polynomial(coeffs, W)
    image = lie_derivative(X, g)
    if g.is_zero() or image.is_zero():
        return
    assert g.quasi_weight(WEIGHTS) == W
    assert image.quasi_weight(WEIGHTS) == W + 1
