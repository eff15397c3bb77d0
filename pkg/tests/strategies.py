"""Hypothesis strategies shared by the property suites."""

from fractions import Fraction

from hypothesis import strategies as st

from darboux.poly import DEFAULT_CONTEXT, Polynomial

CTX = DEFAULT_CONTEXT
ARITY = CTX.arity

rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))
nonzero_rationals = rationals.filter(bool)


def exponents(max_exp: int = 3, used: int = 4):
    """Exponent tuples using only the first ``used`` variables of the context."""
    return st.tuples(*([st.integers(0, max_exp)] * used + [st.just(0)] * (ARITY - used)))


def polynomials(max_terms: int = 5, max_exp: int = 3, used: int = 4):
    return st.dictionaries(exponents(max_exp, used), rationals, max_size=max_terms).map(
        lambda d: Polynomial(CTX, d))


def nonzero_polynomials(max_terms: int = 4, max_exp: int = 2, used: int = 4):
    return polynomials(max_terms, max_exp, used).filter(lambda p: not p.is_zero())


points = st.tuples(*([rationals] * ARITY))
