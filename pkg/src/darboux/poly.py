"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
:class:`fractions.Fraction` coefficients, tied to a :class:`VariableContext`
that fixes the variable names and their order.  Terms are kept in graded
lexicographic order (total degree first, then exponents compared in the
declared variable order), which is also the print order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence, Union

__all__ = [
    "VariableContext",
    "Polynomial",
    "DEFAULT_CONTEXT",
    "PolyError",
    "ContextMismatch",
    "UnknownVariable",
    "ArityMismatch",
    "NotDivisible",
    "NotHomogeneous",
    "add",
    "mul",
    "partial_derivative",
    "exact_divide",
    "substitute",
    "evaluate",
    "quasi_weight",
    "graded_lex_key",
]

Exponents = tuple[int, ...]
Scalar = Union[int, Fraction, Rational]


class PolyError(Exception):
    pass


class ContextMismatch(PolyError, ValueError):
    pass


class UnknownVariable(PolyError, KeyError):
    def __str__(self) -> str:  # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class ArityMismatch(PolyError, ValueError):
    pass


class NotDivisible(PolyError, ArithmeticError):
    """Raised by :func:`exact_divide`; ``term`` is the first obstructing term."""

    def __init__(self, message: str, term: tuple[Exponents, Fraction] | None = None):
        super().__init__(message)
        self.term = term


class NotHomogeneous(PolyError, ValueError):
    pass


@dataclass(frozen=True)
class VariableContext:
    """Ordered, immutable tuple of distinct variable names."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n in names:
            if not n.isidentifier():
                raise ValueError(f"bad variable name {n!r}")

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r} (context {self.names})") from None

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: Scalar) -> "Polynomial":
        return Polynomial(self, {(0,) * self.arity: c})

    def var(self, name: str) -> "Polynomial":
        e = [0] * self.arity
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): 1})

    def monomial(self, powers: Mapping[str, int], coeff: Scalar = 1) -> "Polynomial":
        e = [0] * self.arity
        for name, k in powers.items():
            if k < 0:
                raise ValueError("negative exponent")
            e[self.index(name)] += k
        return Polynomial(self, {tuple(e): coeff})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(n) for n in self.names)


# z, y: state variables of the normal form; q, p, a: parameters; x: the
# first state variable of the non-normal-form systems.
DEFAULT_CONTEXT = VariableContext(("z", "y", "x", "q", "p", "a"))


def graded_lex_key(e: Exponents) -> tuple[int, Exponents]:
    return (sum(e), e)


def _frac(c: Scalar) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


class Polynomial:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("_ctx", "_terms", "_hash")

    def __init__(self, ctx: VariableContext, terms: Mapping[Exponents, Scalar] | None = None):
        self._ctx = ctx
        clean: dict[Exponents, Fraction] = {}
        if terms:
            n = ctx.arity
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ArityMismatch(f"exponent {e} has wrong length for context {ctx.names}")
                c = _frac(c)
                if c:
                    if any(k < 0 for k in e):
                        raise ValueError(f"negative exponent in {e}")
                    clean[e] = c
        self._terms = dict(sorted(clean.items(), key=lambda t: graded_lex_key(t[0]), reverse=True))
        self._hash = None

    @classmethod
    def _raw(cls, ctx: VariableContext, terms: dict[Exponents, Fraction]) -> "Polynomial":
        # trusted constructor: terms already cleaned of zeros
        p = cls.__new__(cls)
        p._ctx = ctx
        p._terms = dict(sorted(terms.items(), key=lambda t: graded_lex_key(t[0]), reverse=True))
        p._hash = None
        return p

    # -- basic accessors -------------------------------------------------
    @property
    def context(self) -> VariableContext:
        return self._ctx

    @property
    def terms(self) -> Mapping[Exponents, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponents, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self._terms.values()), Fraction(0))

    def coefficient(self, exps: Exponents | Mapping[str, int]) -> Fraction:
        if isinstance(exps, Mapping):
            e = [0] * self._ctx.arity
            for k, v in exps.items():
                e[self._ctx.index(k)] = v
            exps = tuple(e)
        return self._terms.get(tuple(exps), Fraction(0))

    def leading_term(self) -> tuple[Exponents, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return next(iter(self._terms.items()))

    def degree(self, variables: Iterable[str] | None = None) -> int:
        """Total degree, optionally counted only in ``variables``; -1 for zero."""
        if not self._terms:
            return -1
        if variables is None:
            return max(sum(e) for e in self._terms)
        idx = [self._ctx.index(v) for v in variables]
        return max(sum(e[i] for i in idx) for e in self._terms)

    def degree_in(self, var: str) -> int:
        if not self._terms:
            return -1
        i = self._ctx.index(var)
        return max(e[i] for e in self._terms)

    def variables(self) -> tuple[str, ...]:
        used = set()
        for e in self._terms:
            used.update(i for i, k in enumerate(e) if k)
        return tuple(n for i, n in enumerate(self._ctx.names) if i in used)

    # -- arithmetic ----------------------------------------------------
    def _check(self, other: "Polynomial") -> None:
        if other._ctx != self._ctx:
            raise ContextMismatch(f"context {self._ctx.names} != {other._ctx.names}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return self._ctx.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self._ctx, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self._ctx, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c: Scalar) -> "Polynomial":
        c = _frac(c)
        if not c:
            return self._ctx.zero()
        return Polynomial._raw(self._ctx, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out: dict[Exponents, Fraction] = {}
        get = out.get
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple([a + b for a, b in zip(e1, e2)])
                out[e] = get(e, 0) + c1 * c2
        return Polynomial._raw(self._ctx, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self._ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            return self.scale(Fraction(1) / _frac(other))
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._ctx == other._ctx and self._terms == other._terms
        if isinstance(other, (int, Fraction, Rational)):
            return self._terms == self._ctx.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._ctx, tuple(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from .exprio import print_polynomial

        return f"Polynomial({print_polynomial(self)!r})"

    def __str__(self) -> str:
        from .exprio import print_polynomial

        return print_polynomial(self)

    # -- calculus and friends ------------------------------------------
    def diff(self, var: str) -> "Polynomial":
        i = self._ctx.index(var)
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] = k - 1
                out[tuple(ne)] = c * k
        return Polynomial._raw(self._ctx, out)

    def exact_divide(self, d: "Polynomial") -> "Polynomial":
        """Return ``h`` with ``self == d * h`` or raise :class:`NotDivisible`."""
        self._check(d)
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        ld, lc = d.leading_term()
        rest = [(e, c) for e, c in d._terms.items() if e != ld]
        rem = dict(self._terms)
        quot: dict[Exponents, Fraction] = {}
        while rem:
            le = max(rem, key=graded_lex_key)
            if any(a < b for a, b in zip(le, ld)):
                raise NotDivisible(
                    f"term {Polynomial._raw(self._ctx, {le: rem[le]})} is not divisible by "
                    f"the leading monomial of the divisor",
                    (le, rem[le]),
                )
            qe = tuple(a - b for a, b in zip(le, ld))
            qc = rem.pop(le) / lc
            quot[qe] = qc
            for e, c in rest:
                ne = tuple(a + b for a, b in zip(e, qe))
                v = rem.get(ne, 0) - qc * c
                if v:
                    rem[ne] = v
                else:
                    rem.pop(ne, None)
        return Polynomial._raw(self._ctx, quot)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self._ctx.arity:
            raise ArityMismatch(f"point has {len(point)} coordinates, context has {self._ctx.arity}")
        pt = [_frac(v) for v in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            t = c
            for v, k in zip(pt, e):
                if k:
                    t *= v**k
            total += t
        return total

    def substitute(self, bindings: Mapping[str, "Polynomial | Scalar"]) -> "Polynomial":
        """Simultaneous substitution of variables by polynomials or rationals."""
        idx = {}
        for name, val in bindings.items():
            i = self._ctx.index(name)
            if isinstance(val, Polynomial):
                self._check(val)
            else:
                val = self._ctx.const(val)
            idx[i] = val
        if not idx:
            return self
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(i: int, k: int) -> Polynomial:
            key = (i, k)
            if key not in powers:
                powers[key] = idx[i] ** k
            return powers[key]

        result: dict[Exponents, Fraction] = {}
        for e, c in self._terms.items():
            kept = tuple(0 if i in idx else k for i, k in enumerate(e))
            term = Polynomial._raw(self._ctx, {kept: c})
            for i, k in enumerate(e):
                if k and i in idx:
                    term = term * power(i, k)
            for te, tc in term._terms.items():
                v = result.get(te, 0) + tc
                if v:
                    result[te] = v
                else:
                    result.pop(te, None)
        return Polynomial._raw(self._ctx, result)

    def quasi_weight(self, weights: Mapping[str, int] | Sequence[int]) -> int:
        """Common weighted degree of all terms; raises :class:`NotHomogeneous`."""
        if self.is_zero():
            raise ValueError("quasi_weight of the zero polynomial is undefined")
        w = _weight_vector(self._ctx, weights)
        values = {sum(a * b for a, b in zip(e, w)) for e in self._terms}
        if len(values) != 1:
            raise NotHomogeneous(f"terms have weights {sorted(values)}")
        return values.pop()

    def homogeneous_components(self, weights: Mapping[str, int] | Sequence[int]) -> dict[int, "Polynomial"]:
        w = _weight_vector(self._ctx, weights)
        parts: dict[int, dict[Exponents, Fraction]] = {}
        for e, c in self._terms.items():
            parts.setdefault(sum(a * b for a, b in zip(e, w)), {})[e] = c
        return {k: Polynomial._raw(self._ctx, v) for k, v in sorted(parts.items())}

    def coefficients_in(self, variables: Sequence[str]) -> dict[Exponents, "Polynomial"]:
        """Split into ``{exponents in variables: coefficient polynomial}``."""
        idx = [self._ctx.index(v) for v in variables]
        out: dict[Exponents, dict[Exponents, Fraction]] = {}
        for e, c in self._terms.items():
            key = tuple(e[i] for i in idx)
            rest = list(e)
            for i in idx:
                rest[i] = 0
            out.setdefault(key, {})[tuple(rest)] = c
        return {k: Polynomial._raw(self._ctx, v) for k, v in out.items()}

    def content(self) -> Fraction:
        """Positive rational ``c`` making ``self / c`` integral and primitive."""
        from math import gcd, lcm

        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self._terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def monic(self) -> "Polynomial":
        """Scale so the graded-lex leading coefficient is 1."""
        if self.is_zero():
            return self
        return self.scale(1 / self.leading_term()[1])

    def with_context(self, ctx: VariableContext) -> "Polynomial":
        """Re-express in another context containing every used variable."""
        if ctx == self._ctx:
            return self
        names = self._ctx.names
        out = {}
        for e, c in self._terms.items():
            ne = [0] * ctx.arity
            for i, k in enumerate(e):
                if k:
                    ne[ctx.index(names[i])] = k
            out[tuple(ne)] = c
        return Polynomial._raw(ctx, out)


def _weight_vector(ctx: VariableContext, weights) -> list[int]:
    if isinstance(weights, Mapping):
        w = [0] * ctx.arity
        for name, k in weights.items():
            w[ctx.index(name)] = int(k)
        return w
    w = list(weights)
    if len(w) > ctx.arity:
        raise ArityMismatch("too many weights for context")
    return w + [0] * (ctx.arity - len(w))


# Functional spellings of the core operations.


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    return f * g


def partial_derivative(f: Polynomial, var: str) -> Polynomial:
    return f.diff(var)


def exact_divide(f: Polynomial, d: Polynomial) -> Polynomial:
    return f.exact_divide(d)


def substitute(f: Polynomial, bindings: Mapping[str, Polynomial | Scalar]) -> Polynomial:
    return f.substitute(bindings)


def evaluate(f: Polynomial, point: Sequence[Scalar]) -> Fraction:
    return f.evaluate(point)


def quasi_weight(f: Polynomial, weights: Mapping[str, int] | Sequence[int]) -> int:
    return f.quasi_weight(weights)
