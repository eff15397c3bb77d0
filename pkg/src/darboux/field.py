"""Planar polynomial vector fields, Lie derivatives and invariance certificates."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .poly import DEFAULT_CONTEXT, ContextMismatch, NotDivisible, Polynomial, VariableContext

__all__ = [
    "PolyVectorField",
    "QuadraticNormalForm",
    "CurveCertificate",
    "Verdict",
    "ProbeVerdict",
    "NotInvariant",
    "CofactorDegreeViolation",
    "NotQuadratic",
    "lie_derivative",
    "cofactor_of",
    "verify_certificate",
    "probe",
    "is_square_free",
    "recover_quadratic_field",
]


class NotInvariant(ArithmeticError):
    def __init__(self, message: str, obstruction=None):
        super().__init__(message)
        self.obstruction = obstruction


class CofactorDegreeViolation(ValueError):
    pass


class NotQuadratic(ValueError):
    pass


@dataclass(frozen=True)
class PolyVectorField:
    """The field ``d(first)/dt = P``, ``d(second)/dt = Q``."""

    P: Polynomial
    Q: Polynomial
    state_vars: tuple[str, str] = ("z", "y")

    def __post_init__(self) -> None:
        if self.P.context != self.Q.context:
            raise ContextMismatch("P and Q live in different contexts")
        a, b = self.state_vars
        if a == b:
            raise ValueError("state variables must differ")
        self.P.context.index(a)
        self.P.context.index(b)

    @property
    def context(self) -> VariableContext:
        return self.P.context

    @property
    def parameters(self) -> tuple[str, ...]:
        used = set(self.P.variables()) | set(self.Q.variables())
        return tuple(v for v in self.context.names if v in used and v not in self.state_vars)

    def state_degree(self) -> int:
        return max(self.P.degree(self.state_vars), self.Q.degree(self.state_vars))

    def substitute(self, bindings: Mapping[str, Polynomial | Fraction | int]) -> "PolyVectorField":
        return PolyVectorField(self.P.substitute(bindings), self.Q.substitute(bindings), self.state_vars)

    def __call__(self, g: Polynomial) -> Polynomial:
        return lie_derivative(self, g)


class QuadraticSystem(PolyVectorField):
    """A :class:`PolyVectorField` checked to be of degree at most two."""

    def __init__(self, P: Polynomial, Q: Polynomial, state_vars: tuple[str, str] = ("z", "y")):
        super().__init__(P, Q, state_vars)
        if self.state_degree() > 2:
            raise NotQuadratic(f"field has degree {self.state_degree()} in {state_vars}")


@dataclass(frozen=True)
class QuadraticNormalForm:
    """``z' = z*y + 1``, ``y' = 3*y^2 + beta*z*y + gamma*z^2 + delta``."""

    beta: Polynomial
    gamma: Polynomial
    delta: Polynomial

    def __post_init__(self) -> None:
        for name, c in (("beta", self.beta), ("gamma", self.gamma), ("delta", self.delta)):
            if c.degree_in("z") > 0 or c.degree_in("y") > 0:
                raise ValueError(f"{name} must not involve the state variables")

    def field(self) -> PolyVectorField:
        ctx = self.beta.context
        z, y = ctx.var("z"), ctx.var("y")
        P = z * y + 1
        Q = 3 * y * y + self.beta * z * y + self.gamma * z * z + self.delta
        return QuadraticSystem(P, Q, ("z", "y"))


def lie_derivative(X: PolyVectorField, g: Polynomial) -> Polynomial:
    if g.context != X.context:
        raise ContextMismatch("curve and field live in different contexts")
    a, b = X.state_vars
    return X.P * g.diff(a) + X.Q * g.diff(b)


def cofactor_of(X: PolyVectorField, g: Polynomial) -> Polynomial:
    """Exact cofactor ``X(g) / g``.

    Raises :class:`NotInvariant` when ``g`` does not divide ``X(g)`` and
    :class:`CofactorDegreeViolation` when the quotient has degree larger than
    ``deg X - 1`` in the state variables.
    """
    if g.is_zero():
        raise ValueError("the zero polynomial defines no curve")
    try:
        K = lie_derivative(X, g).exact_divide(g)
    except NotDivisible as exc:
        raise NotInvariant("X(g) is not divisible by g", exc.term) from None
    bound = max(X.state_degree() - 1, 0)
    if K.degree(X.state_vars) > bound:
        raise CofactorDegreeViolation(
            f"cofactor has degree {K.degree(X.state_vars)} > {bound} in {X.state_vars}"
        )
    return K


def is_square_free(g: Polynomial, state_vars: Sequence[str]) -> bool:
    """``gcd(g, dg/da, dg/db)`` is free of the state variables."""
    from .symbridge import poly_gcd

    h = poly_gcd([g] + [g.diff(v) for v in state_vars])
    return h.degree(state_vars) <= 0


@dataclass(frozen=True)
class CurveCertificate:
    system: PolyVectorField
    g: Polynomial
    K: Polynomial
    degree: int = -1

    def __post_init__(self) -> None:
        if self.g.is_zero():
            raise ValueError("certificate curve must be nonzero")
        d = self.g.degree(self.system.state_vars)
        if self.degree < 0:
            object.__setattr__(self, "degree", d)
        elif self.degree != d:
            raise ValueError(f"stated degree {self.degree} but g has degree {d}")

    def residual(self) -> Polynomial:
        return lie_derivative(self.system, self.g) - self.K * self.g


@dataclass
class Verdict:
    passed: bool
    residual: Polynomial
    residual_terms: int
    elapsed: float
    warnings: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


def verify_certificate(c: CurveCertificate, check_square_free: bool = False) -> Verdict:
    """Check ``X(g) - K*g == 0`` exactly; failures come back as data."""
    t0 = time.perf_counter()
    r = c.residual()
    warnings = []
    bound = max(c.system.state_degree() - 1, 0)
    if c.K.degree(c.system.state_vars) > bound:
        warnings.append(f"cofactor degree exceeds {bound}")
    if check_square_free and not is_square_free(c.g, c.system.state_vars):
        warnings.append("g is not square-free in the state variables")
    return Verdict(r.is_zero(), r, len(r), time.perf_counter() - t0, warnings)


@dataclass
class ProbeVerdict:
    passed: bool
    trials: int
    first_failure: tuple[Fraction, ...] | None
    value: Fraction | None


def _random_rational(rng: random.Random, bound: int = 10**6) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def probe(X: PolyVectorField, g: Polynomial, K: Polynomial, trials: int = 8, seed: int = 0) -> ProbeVerdict:
    """Evaluate ``X(g) - K*g`` at pseudo-random rational points.

    Passing is evidence only; a failure is a proof of non-invariance.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    ctx = g.context
    rng = random.Random(seed)
    r = lie_derivative(X, g) - K * g
    for _ in range(trials):
        pt = tuple(_random_rational(rng) for _ in range(ctx.arity))
        v = r.evaluate(pt)
        if v:
            return ProbeVerdict(False, trials, pt, v)
    return ProbeVerdict(True, trials, None, None)


def recover_quadratic_field(
    g: Polynomial,
    K: Polynomial,
    state_vars: tuple[str, str] = ("z", "y"),
    fixed_P: Polynomial | None = None,
    parameter_degree: int = 2,
) -> list[PolyVectorField]:
    """Quadratic fields ``X`` with ``X(g) = K*g``, found by linear algebra.

    The identity is linear in the coefficients of ``P`` and ``Q`` (only ``Q``
    when ``fixed_P`` is given).  One field is returned per nullspace vector
    with a nonzero inhomogeneous part; an empty list means no field fits.
    Coefficients may be polynomials of degree ``<= parameter_degree`` in the
    parameters occurring in ``g`` or ``K``.
    """
    from .linalg import ExactMatrix, kernel_basis

    ctx = g.context
    a, b = state_vars
    va, vb = ctx.var(a), ctx.var(b)
    params = [v for v in ctx.names if v not in state_vars and (v in g.variables() or v in K.variables())]
    pmonos = [ctx.one()]
    for d in range(1, parameter_degree + 1):
        for combo in itertools.combinations_with_replacement(params, d):
            m = ctx.one()
            for v in combo:
                m = m * ctx.var(v)
            pmonos.append(m)
    basis = [s * t for s in (ctx.one(), va, vb, va * va, va * vb, vb * vb) for t in pmonos]
    ga, gb = g.diff(a), g.diff(b)
    images = []
    labels = []
    if fixed_P is None:
        for m in basis:
            images.append(m * ga)
            labels.append(("P", m))
    for m in basis:
        images.append(m * gb)
        labels.append(("Q", m))
    rhs = K * g
    if fixed_P is not None:
        rhs = rhs - fixed_P * ga
    # homogeneous column for the right-hand side; solutions with a nonzero
    # entry there are the fields we want
    images.append(-rhs)
    labels.append(("1", ctx.one()))
    M = ExactMatrix.from_images(images, [str(i) for i in range(len(images))])
    out = []
    for v in kernel_basis(M):
        if v[-1] == 0:
            continue
        v = [Fraction(x, v[-1]) for x in v]
        P = fixed_P if fixed_P is not None else ctx.zero()
        Q = ctx.zero()
        for (which, m), c in zip(labels, v):
            if which == "P":
                P = P + m * c
            elif which == "Q":
                Q = Q + m * c
        out.append(PolyVectorField(P, Q, state_vars))
    return out
