"""Geometric genus of plane curves by resolving singular points.

Singular points are found chart by chart (resultant, then univariate
factorization over Q, then a gcd over the residue field) and kept as Galois
orbits: one representative point with coordinates in ``Q[t]/(m)``.  Each
representative is resolved by repeated blowups over number fields, and
``delta`` is the sum of ``m(m-1)/2`` over the singular infinitely near points.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .numberfield import (
    NumberField,
    extend,
    factor_over,
    qpoly_gcdex,
    squarefree_decomposition,
    upoly_gcd,
    upoly_shift,
    upoly_trim,
)
from .poly import Polynomial, VariableContext

__all__ = [
    "PROJECTIVE",
    "ProjectiveCurve",
    "SingularOrbit",
    "GenusReport",
    "GenusError",
    "NotSquareFree",
    "DepthExceeded",
    "ReducibleSuspected",
    "OrbitDegreeExceeded",
    "singular_points",
    "multiplicity_sequence",
    "curve_genus",
    "genus",
    "oval_bound",
    "delta_from_sequence",
]

PROJECTIVE = VariableContext(("X0", "X1", "X2"))
DEFAULT_DEPTH = 24
DEFAULT_FIELD_DEGREE = 40


class GenusError(ArithmeticError):
    pass


class NotSquareFree(GenusError):
    pass


class DepthExceeded(GenusError):
    pass


class ReducibleSuspected(GenusError):
    pass


class OrbitDegreeExceeded(GenusError):
    pass


@dataclass(frozen=True)
class ProjectiveCurve:
    """Homogeneous ``F(X0, X1, X2)`` of degree ``d``; ``X0 = 0`` is the line at infinity."""

    F: Polynomial

    def __post_init__(self) -> None:
        if self.F.context != PROJECTIVE:
            raise ValueError("F must live in the (X0, X1, X2) context")
        if self.F.is_zero() or self.F.is_constant():
            raise ValueError("a curve needs a non-constant form")
        degs = {sum(e) for e, _ in self.F.items()}
        if len(degs) != 1:
            raise ValueError("F is not homogeneous")

    @property
    def d(self) -> int:
        return self.F.degree()

    @classmethod
    def from_affine(cls, g: Polynomial, state_vars: Sequence[str] = ("z", "y")) -> "ProjectiveCurve":
        """Homogenize ``g``; every other variable must already be specialized."""
        ctx = g.context
        ia, ib = ctx.index(state_vars[0]), ctx.index(state_vars[1])
        others = [v for v in g.variables() if v not in state_vars]
        if others:
            raise ValueError(f"unbound parameters {others}; specialize them first")
        d = g.degree(state_vars)
        terms = {}
        for e, c in g.items():
            a, b = e[ia], e[ib]
            terms[(d - a - b, a, b)] = c
        return cls(Polynomial(PROJECTIVE, terms))

    def is_square_free(self) -> bool:
        from .symbridge import poly_gcd

        h = poly_gcd([self.F] + [self.F.diff(v) for v in PROJECTIVE.names])
        return h.is_constant()

    def transformed(self, M: Sequence[Sequence[int]]) -> "ProjectiveCurve":
        """``F(M X)`` for an invertible 3x3 matrix ``M``."""
        X = PROJECTIVE.gens()
        images = {PROJECTIVE.names[i]: sum((X[j] * Fraction(M[i][j]) for j in range(3)), PROJECTIVE.zero())
                  for i in range(3)}
        return ProjectiveCurve(self.F.substitute(images))


@dataclass(frozen=True)
class SingularOrbit:
    """A Galois orbit of singular points.

    ``minimal_polynomial`` defines the residue field ``Q[t]/(m)`` (coefficients
    low to high); ``coordinates`` are the projective coordinates of one
    representative as polynomials in ``t``.  ``multiplicities`` lists the
    multiplicities (all >= 2) of the singular infinitely near points of that
    representative, conjugate branches repeated; ``delta`` is for the whole
    orbit, i.e. ``degree * delta_point``.
    """

    chart: str
    minimal_polynomial: tuple[Fraction, ...]
    coordinates: tuple[tuple[Fraction, ...], tuple[Fraction, ...], tuple[Fraction, ...]]
    multiplicities: tuple[int, ...] = ()
    delta_point: int = 0

    @property
    def degree(self) -> int:
        return len(self.minimal_polynomial) - 1

    @property
    def field(self) -> NumberField:
        return NumberField(self.minimal_polynomial)

    @property
    def multiplicity(self) -> int:
        return self.multiplicities[0] if self.multiplicities else 0

    @property
    def delta(self) -> int:
        return self.degree * self.delta_point

    def to_dict(self) -> dict:
        from .exprio import format_rational

        return {
            "chart": self.chart,
            "minimal_polynomial": [format_rational(c) for c in self.minimal_polynomial],
            "coordinates": [[format_rational(c) for c in x] for x in self.coordinates],
            "degree": self.degree,
            "multiplicities": list(self.multiplicities),
            "delta_point": self.delta_point,
            "delta": self.delta,
        }


@dataclass(frozen=True)
class GenusReport:
    d: int
    orbits: tuple[SingularOrbit, ...]
    delta_total: int
    genus: int
    oval_bound: int
    bindings: Mapping[str, str] = field(default_factory=dict)
    irreducibility: str = "asserted-by-caller"

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "genus": self.genus,
            "oval_bound": self.oval_bound,
            "delta_total": self.delta_total,
            "bindings": dict(self.bindings),
            "irreducibility": self.irreducibility,
            "orbits": [o.to_dict() for o in self.orbits],
        }


def oval_bound(G: int) -> int:
    if G < 0:
        raise ValueError("genus must be non-negative")
    return G + 1


def delta_from_sequence(multiplicities: Sequence[int]) -> int:
    return sum(m * (m - 1) // 2 for m in multiplicities)


# --- bivariate polynomials over a number field: {(i, j): element} -----------

def _chart(F: Polynomial, chart: str) -> dict[tuple[int, int], Fraction]:
    """Dehomogenize: the two remaining coordinates in a fixed order."""
    keep = {"X0=1": (1, 2), "X2=1": (1, 0), "X1=1": (0, 2)}[chart]
    out: dict[tuple[int, int], Fraction] = {}
    for e, c in F.items():
        k = (e[keep[0]], e[keep[1]])
        out[k] = out.get(k, 0) + c
    return {k: v for k, v in out.items() if v}


def _embed(K: NumberField, f: Mapping[tuple[int, int], Fraction]) -> dict:
    return {k: K.from_rational(c) for k, c in f.items()}


def _translate(K: NumberField, f: Mapping, a, b) -> dict:
    """``f(x + a, y + b)``."""
    out: dict = {}
    by_j: dict[int, list] = {}
    for (i, j), c in f.items():
        row = by_j.setdefault(j, [])
        row.extend([K.zero()] * (i + 1 - len(row)))
        row[i] = c
    tmp: dict[int, list] = {}
    for j, row in by_j.items():
        for i, c in enumerate(upoly_shift(K, row, a)):
            if any(c):
                col = tmp.setdefault(i, [])
                col.extend([K.zero()] * (j + 1 - len(col)))
                col[j] = c
    for i, col in tmp.items():
        for j, c in enumerate(upoly_shift(K, col, b)):
            if any(c):
                out[(i, j)] = c
    return out


def _order(f: Mapping) -> int:
    return min(i + j for i, j in f)


def _blow_up_y(f: Mapping, m: int) -> dict:
    """Chart ``y = x*t``: strict transform ``f(x, x t) / x^m`` in ``(x, t)``."""
    return {(i + j - m, j): c for (i, j), c in f.items()}


def _blow_up_x(f: Mapping, m: int) -> dict:
    """Chart ``x = s*y``: strict transform ``f(s y, y) / y^m`` in ``(s, y)``."""
    return {(i, i + j - m): c for (i, j), c in f.items()}


def _resolve(K: NumberField, f: dict, depth: int, max_depth: int, seq: list[int]) -> int:
    """Delta of the point ``(0, 0)`` of ``f``; appends the singular multiplicities."""
    m = _order(f)
    if m <= 1:
        return 0
    if depth >= max_depth:
        raise DepthExceeded(f"resolution deeper than {max_depth} blowups")
    seq.append(m)
    delta = m * (m - 1) // 2
    cone = [K.zero()] * (m + 1)
    for (i, j), c in f.items():
        if i + j == m:
            cone[j] = c
    cone = upoly_trim(K, cone)
    vertical = m - (len(cone) - 1)
    if vertical >= 2:
        delta += _resolve(K, _blow_up_x(f, m), depth + 1, max_depth, seq)
    blown = None
    for part, mult in squarefree_decomposition(K, cone):
        if mult < 2:
            continue
        for h, _ in factor_over(K, part):
            if blown is None:
                blown = _blow_up_y(f, m)
            if len(h) == 2:
                t0 = K.neg(h[0])
                delta += _resolve(K, _translate(K, blown, K.zero(), t0), depth + 1, max_depth, seq)
            else:
                L, emb, beta = extend(K, h)
                sub: list[int] = []
                fl = {k: emb(c) for k, c in blown.items()}
                d = _resolve(L, _translate(L, fl, L.zero(), beta), depth + 1, max_depth, sub)
                e = len(h) - 1
                delta += e * d
                seq.extend(sub * e)
    return delta


# --- finding the singular points --------------------------------------------

def _coeffs_in(f: Mapping, var: int) -> dict[int, dict[int, Fraction]]:
    """Group a rational bivariate dict by the exponent of ``var`` (0 or 1)."""
    out: dict[int, dict[int, Fraction]] = {}
    for k, c in f.items():
        out.setdefault(k[var], {})[k[1 - var]] = c
    return out


def _diff(f: Mapping, var: int) -> dict:
    out = {}
    for (i, j), c in f.items():
        e = (i, j)[var]
        if e:
            k = (i - 1, j) if var == 0 else (i, j - 1)
            out[k] = c * e
    return out


def _specialize(K: NumberField, f: Mapping, var: int, value) -> list:
    """``f`` with coordinate ``var`` set to ``value``, as a polynomial in the other one."""
    groups: dict[int, dict[int, Fraction]] = {}
    for k, c in f.items():
        groups.setdefault(k[1 - var], {})[k[var]] = c
    n = max(groups) + 1 if groups else 0
    out = [K.zero()] * n
    for e, coeffs in groups.items():
        dense = [Fraction(0)] * (max(coeffs) + 1)
        for i, c in coeffs.items():
            dense[i] = c
        out[e] = K.eval_rational_poly(dense, value)
    return upoly_trim(K, out)


def _as_polynomial(f: Mapping) -> Polynomial:
    ctx = VariableContext(("u", "v"))
    return Polynomial(ctx, dict(f))


def _univariate(p: Polynomial, var: str) -> list[Fraction]:
    i = p.context.index(var)
    n = p.degree_in(var)
    out = [Fraction(0)] * (n + 1)
    for e, c in p.items():
        out[e[i]] = c
    return out


def _affine_orbits(f: dict, max_field: int) -> list[tuple[NumberField, object, object]]:
    """Singular points of the affine curve ``f(u, v) = 0`` as (field, u, v)."""
    from .symbridge import factor_rational, resultant

    if not f:
        return []
    deg_u = max(i for i, _ in f)
    deg_v = max(j for _, j in f)
    if deg_v == 0:
        # a union of vertical lines: singular only where two of them meet, never in the affine plane
        return []
    # eliminate the variable of lower degree
    vi = 1 if (deg_v <= deg_u or deg_u == 0) else 0
    ui = 1 - vi
    fp = _as_polynomial(f)
    names = ("u", "v")
    fv = fp.diff(names[vi])
    R = resultant(fp, fv, names[vi])
    if R.is_zero():
        raise ReducibleSuspected("the curve contains a line parallel to a coordinate axis")
    Ru = _univariate(R, names[ui])
    lead = _coeffs_in(f, vi)[max(k[vi] for k in f)]
    lead_dense = [Fraction(0)] * (max(lead) + 1)
    for i, c in lead.items():
        lead_dense[i] = c
    fu_d = _diff(f, ui)
    fv_d = _diff(f, vi)
    out = []
    # singular points show up as repeated factors, except above zeros of the
    # leading coefficient where branches escape to infinity
    for m, k in factor_rational(Ru):
        if k < 2 and (len(lead_dense) == 1 or len(qpoly_gcdex(m, lead_dense)[2]) == 1):
            continue
        if len(m) - 1 > max_field:
            raise OrbitDegreeExceeded(f"eliminant factor of degree {len(m) - 1} exceeds cap {max_field}")
        K = NumberField(tuple(m))
        alpha = K.gen()
        h = _specialize(K, f, ui, alpha)
        for extra in (fv_d, fu_d):
            h = upoly_gcd(K, h, _specialize(K, extra, ui, alpha))
        if len(h) <= 1:
            continue
        for p, _ in factor_over(K, h):
            if len(p) == 2:
                pts = (K, alpha, K.neg(p[0]))
            else:
                if K.degree * (len(p) - 1) > max_field:
                    raise OrbitDegreeExceeded("residue field degree exceeds cap")
                L, emb, beta = extend(K, p)
                pts = (L, emb(alpha), beta)
            F_, a, b = pts
            out.append((F_, a, b) if ui == 0 else (F_, b, a))
    return out


def singular_points(C: ProjectiveCurve, max_field: int = DEFAULT_FIELD_DEGREE) -> list[SingularOrbit]:
    """All singular points of ``C`` as Galois orbits (multiplicities not yet filled)."""
    if not C.is_square_free():
        raise NotSquareFree("F has a repeated factor")
    orbits: list[SingularOrbit] = []
    F = C.F
    # affine part X0 = 1, coordinates (X1, X2)
    f = _chart(F, "X0=1")
    for K, a, b in _affine_orbits(f, max_field):
        orbits.append(SingularOrbit("X0=1", K.modulus, (K.one(), a, b)))
    # line at infinity minus (0:1:0): chart X2 = 1, coordinates (X1, X0), X0 = 0
    h = _chart(F, "X2=1")
    restricted = []
    for poly in (h, _diff(h, 0), _diff(h, 1)):
        dense: list[Fraction] = []
        for (i, j), c in poly.items():
            if j == 0:
                dense.extend([Fraction(0)] * (i + 1 - len(dense)))
                dense[i] = c
        restricted.append(dense)
    G = restricted[0]
    for p in restricted[1:]:
        G = qpoly_gcdex(G, p)[2] if (G or p) else []
    if len(G) > 1:
        from .symbridge import factor_rational

        for m, _ in factor_rational(G):
            if len(m) - 1 > max_field:
                raise OrbitDegreeExceeded(f"orbit degree {len(m) - 1} exceeds cap {max_field}")
            K = NumberField(tuple(m))
            orbits.append(SingularOrbit("X2=1", K.modulus, (K.zero(), K.gen(), K.one())))
    # the point (0:1:0): chart X1 = 1, coordinates (X0, X2)
    k = _chart(F, "X1=1")
    if not k or _order(k) >= 2:
        Q = NumberField((Fraction(0), Fraction(1)))
        orbits.append(SingularOrbit("X1=1", Q.modulus, (Q.zero(), Q.one(), Q.zero())))
    return orbits


def _local_equation(C: ProjectiveCurve, orbit: SingularOrbit) -> tuple[NumberField, dict]:
    K = orbit.field
    X0, X1, X2 = orbit.coordinates
    f = _embed(K, _chart(C.F, orbit.chart))
    if orbit.chart == "X0=1":
        a, b = X1, X2
    elif orbit.chart == "X2=1":
        a, b = X1, X0
    else:
        a, b = X0, X2
    return K, _translate(K, f, a, b)


def multiplicity_sequence(orbit: SingularOrbit, C: ProjectiveCurve, max_depth: int = DEFAULT_DEPTH) -> tuple[int, ...]:
    """Multiplicities of the singular infinitely near points over one representative."""
    K, f = _local_equation(C, orbit)
    seq: list[int] = []
    _resolve(K, f, 0, max_depth, seq)
    return tuple(seq)


def curve_genus(C: ProjectiveCurve, max_depth: int = DEFAULT_DEPTH, bindings: Mapping[str, str] | None = None,
                max_field: int = DEFAULT_FIELD_DEGREE) -> GenusReport:
    resolved = []
    for orbit in singular_points(C, max_field):
        seq = multiplicity_sequence(orbit, C, max_depth)
        if not seq:
            # a point from the elimination that turned out smooth cannot happen
            raise GenusError("internal: orbit reported singular is smooth")
        resolved.append(replace(orbit, multiplicities=seq, delta_point=delta_from_sequence(seq)))
    d = C.d
    delta_total = sum(o.delta for o in resolved)
    G = (d - 1) * (d - 2) // 2 - delta_total
    if G < 0:
        raise ReducibleSuspected(f"delta total {delta_total} exceeds the arithmetic genus "
                                 f"{(d - 1) * (d - 2) // 2}; the curve cannot be irreducible")
    return GenusReport(d, tuple(resolved), delta_total, G, oval_bound(G), dict(bindings or {}))


def genus(
    g: Polynomial,
    bindings: Mapping[str, object] | None = None,
    state_vars: Sequence[str] = ("z", "y"),
    max_depth: int = DEFAULT_DEPTH,
) -> GenusReport:
    """Genus of ``g = 0`` after substituting ``bindings`` for the parameters.

    Irreducibility is assumed, not checked; a resolution that proves the
    curve reducible raises :class:`ReducibleSuspected`.
    """
    from .exprio import format_rational

    vals = {k: Fraction(v) for k, v in (bindings or {}).items() if k in g.variables()}
    gs = g.substitute(vals) if vals else g
    if gs.is_zero():
        raise ValueError("the specialized curve is the zero polynomial")
    C = ProjectiveCurve.from_affine(gs, state_vars)
    return curve_genus(C, max_depth, {k: format_rational(v) for k, v in sorted(vals.items())})
