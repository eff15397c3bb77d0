"""Thin conversions to sympy for multivariate gcd, resultants and
univariate factorization over the rationals.

Everything else in the package runs on :class:`darboux.poly.Polynomial`;
only these three primitives are delegated.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import sympy
from sympy import QQ, Poly

from .poly import Polynomial, VariableContext

__all__ = ["to_sympy", "from_sympy", "poly_gcd", "resultant", "factor_rational", "rational_roots"]

_SYMBOLS: dict[VariableContext, tuple] = {}


def _symbols(ctx: VariableContext) -> tuple:
    if ctx not in _SYMBOLS:
        _SYMBOLS[ctx] = tuple(sympy.Symbol(n) for n in ctx.names)
    return _SYMBOLS[ctx]


def to_sympy(f: Polynomial) -> Poly:
    gens = _symbols(f.context)
    rep = {e: QQ(c.numerator, c.denominator) for e, c in f.items()}
    if not rep:
        return Poly(0, *gens, domain=QQ)
    return Poly.from_dict(rep, *gens, domain=QQ)


def from_sympy(p: Poly, ctx: VariableContext) -> Polynomial:
    gens = _symbols(ctx)
    p = Poly(p, *gens, domain=QQ)
    terms = {}
    for e, c in p.terms():
        if c:
            terms[tuple(e)] = Fraction(int(c.numerator), int(c.denominator))
    return Polynomial(ctx, terms)


def poly_gcd(fs: Sequence[Polynomial]) -> Polynomial:
    """Monic (graded-lex) gcd of a list of polynomials."""
    fs = [f for f in fs if not f.is_zero()]
    if not fs:
        raise ValueError("gcd of zero polynomials")
    ctx = fs[0].context
    g = to_sympy(fs[0])
    for f in fs[1:]:
        if g.is_ground:
            break
        g = g.gcd(to_sympy(f))
    if g.is_ground:
        return ctx.one()
    return from_sympy(g, ctx).monic()


def resultant(f: Polynomial, g: Polynomial, var: str) -> Polynomial:
    ctx = f.context
    gens = _symbols(ctx)
    x = gens[ctx.index(var)]
    others = [s for s in gens if s != x]
    F = Poly(to_sympy(f).as_expr(), x, *others, domain=QQ)
    G = Poly(to_sympy(g).as_expr(), x, *others, domain=QQ)
    r = F.resultant(G)
    if not isinstance(r, Poly):
        r = Poly(r, *gens, domain=QQ)
    return from_sympy(Poly(r.as_expr(), *gens, domain=QQ), ctx)


def factor_rational(coeffs: Sequence[Fraction]) -> list[tuple[list[Fraction], int]]:
    """Factor a univariate rational polynomial (coefficients low to high).

    Returns monic irreducible factors with multiplicities; constants dropped.
    """
    t = sympy.Symbol("t")
    p = Poly.from_list([QQ(c.numerator, c.denominator) for c in reversed(list(coeffs))], t, domain=QQ)
    _, facs = p.factor_list()
    out = []
    for fac, k in facs:
        fac = fac.monic()
        cs = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(fac.all_coeffs())]
        out.append((cs, k))
    out.sort(key=lambda fk: (len(fk[0]), [(c.numerator, c.denominator) for c in fk[0]]))
    return out


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    roots = []
    for fac, _ in factor_rational(coeffs):
        if len(fac) == 2:
            roots.append(-fac[0] / fac[1])
    return sorted(roots)
