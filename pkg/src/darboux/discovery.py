"""Search for invariant algebraic curves by exact nullspace computation.

A candidate curve ``g`` is an unknown combination of the monomials in an
:class:`AnsatzSpec`.  ``X(g) - K*g = 0`` is linear in those unknowns, so for
a fixed cofactor ``K`` the invariant curves on the support are exactly the
nullspace of one rational matrix.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Iterable, Mapping, Sequence

from .field import CurveCertificate, PolyVectorField, lie_derivative, verify_certificate
from .linalg import ExactMatrix, bareiss_determinant, echelon_rows, kernel_basis
from .poly import DEFAULT_CONTEXT, NotDivisible, Polynomial, VariableContext, graded_lex_key

log = logging.getLogger(__name__)

__all__ = [
    "AnsatzSpec",
    "FamilySpec",
    "AnsatzTooLarge",
    "SoundnessError",
    "NoCurveFound",
    "InterpolationGridTooSmall",
    "infer_weights",
    "default_ansatz",
    "enumerate_support",
    "build_linear_system",
    "kernel_curves",
    "find_invariant_curves",
    "normalize_curve",
    "EliminationReport",
    "eliminate_family",
    "common_rational_zeros",
    "ScanReport",
    "scan_family",
    "RepairReport",
    "repair",
    "quotient_hint",
]

STATE_WEIGHTS = {"z": -1, "y": 1}


class AnsatzTooLarge(ValueError):
    pass


class SoundnessError(AssertionError):
    """A kernel element failed exact re-verification (an internal bug)."""


class NoCurveFound(LookupError):
    pass


class InterpolationGridTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class AnsatzSpec:
    """Monomial support for a curve search.

    ``param_caps`` bounds the degree in each parameter; ``qh`` optionally
    restricts to monomials of one quasi-weight, given as ``(weights, W)``.
    """

    max_state_degree: int
    param_caps: tuple[tuple[str, int], ...] = ()
    qh: tuple[tuple[tuple[str, int], ...], int] | None = None
    state_vars: tuple[str, str] = ("z", "y")

    def __post_init__(self) -> None:
        if self.max_state_degree < 0:
            raise ValueError("max_state_degree must be non-negative")
        object.__setattr__(self, "param_caps", tuple(sorted(dict(self.param_caps).items())))
        if self.qh is not None:
            w, W = self.qh
            object.__setattr__(self, "qh", (tuple(sorted(dict(w).items())), int(W)))

    @property
    def weights(self) -> dict[str, int] | None:
        return dict(self.qh[0]) if self.qh else None


def infer_weights(X: PolyVectorField) -> dict[str, int] | None:
    """Integer parameter weights making ``X`` quasi-homogeneous.

    The state variables get the normal-form weights ``z:-1, y:1``; every
    term of ``P`` must then have weight 0 and every term of ``Q`` weight 2
    (the time derivative raises weight by one).  Returns ``None`` when the
    field is not of that shape or the constraints have no integer solution.
    """
    if tuple(X.state_vars) != ("z", "y"):
        return None
    ctx = X.context
    params = X.parameters
    pidx = [ctx.index(p) for p in params]
    zi, yi = ctx.index("z"), ctx.index("y")
    rows = []
    for poly, target in ((X.P, 0), (X.Q, 2)):
        for e, _ in poly.items():
            base = -e[zi] + e[yi]
            rows.append(([e[i] for i in pidx], target - base))
    weights: dict[str, int] = {}
    # each row reads sum(exp * w) = rhs; solve by exact elimination
    if not params:
        return {} if all(r == 0 for _, r in rows) else None
    M = ExactMatrix.from_dense([list(a) + [-r] for a, r in rows])
    basis = [v for v in kernel_basis(M) if v[-1] != 0]
    if len(basis) != 1 or len(kernel_basis(M)) != 1:
        return None
    v = basis[0]
    for name, num in zip(params, v[:-1]):
        w = Fraction(num, v[-1])
        if w.denominator != 1:
            return None
        weights[name] = int(w)
    return weights


def default_ansatz(
    X: PolyVectorField,
    n: int,
    qh: bool | None = None,
    param_caps: Mapping[str, int] | None = None,
    target_weight: int | None = None,
) -> AnsatzSpec:
    """Degree box with headroom: ``q`` up to ``ceil(2n/3)``, others ``ceil(n/2)``.

    Under the quasi-homogeneous filter a parameter of weight ``w`` is capped
    at ``(W + n) // w`` instead, the largest degree the weight allows.
    ``qh=None`` enables the quasi-homogeneous filter whenever the field admits
    integer weights and ``n`` is a multiple of 3 (target weight ``n/3``, the
    weight of ``y^(n/3)``); an explicit ``target_weight`` overrides that.
    """
    caps = {}
    for name in X.parameters:
        caps[name] = ceil(2 * n / 3) if name == "q" else ceil(n / 2)
    if param_caps:
        caps.update(param_caps)
    qspec = None
    if qh is not False:
        w = infer_weights(X)
        W = target_weight if target_weight is not None else (n // 3 if n % 3 == 0 else None)
        if w is not None and W is not None and all(w.get(p, 0) > 0 for p in X.parameters):
            full = dict(STATE_WEIGHTS)
            full.update(w)
            qspec = (tuple(full.items()), W)
            # the weight equation already bounds each parameter degree
            for name in X.parameters:
                if not param_caps or name not in param_caps:
                    caps[name] = max(0, (W + n) // w[name])
        elif qh:
            raise ValueError("quasi-homogeneous filter requested but unavailable for this field/degree")
    return AnsatzSpec(n, tuple(caps.items()), qspec, tuple(X.state_vars))


def enumerate_support(spec: AnsatzSpec, ctx: VariableContext = DEFAULT_CONTEXT) -> list[tuple[int, ...]]:
    """All support monomials, in descending graded-lex order."""
    n = spec.max_state_degree
    a, b = spec.state_vars
    ai, bi = ctx.index(a), ctx.index(b)
    caps = dict(spec.param_caps)
    pnames = list(caps)
    pidx = [ctx.index(p) for p in pnames]
    weights = spec.weights
    wvec = [0] * ctx.arity
    if weights is not None:
        for name, w in weights.items():
            wvec[ctx.index(name)] = w
        if any(weights.get(p, 0) == 0 for p in pnames):
            raise ValueError("every parameter needs a nonzero weight under the qh filter")
    target = spec.qh[1] if spec.qh else None
    out = []
    for i in range(n + 1):
        for j in range(n + 1 - i):
            base = i * wvec[ai] + j * wvec[bi]
            for pe in itertools.product(*(range(caps[p] + 1) for p in pnames)):
                if target is not None:
                    if base + sum(k * wvec[pi] for k, pi in zip(pe, pidx)) != target:
                        continue
                e = [0] * ctx.arity
                e[ai], e[bi] = i, j
                for k, pi in zip(pe, pidx):
                    e[pi] = k
                out.append(tuple(e))
    out.sort(key=graded_lex_key, reverse=True)
    return out


def build_linear_system(X: PolyVectorField, K: Polynomial, spec: AnsatzSpec) -> ExactMatrix:
    """Matrix ``M`` with ``M @ coeffs == 0`` iff ``X(g) - K*g == 0``."""
    ctx = X.context
    if K.context != ctx:
        raise ValueError("cofactor lives in another context")
    support = enumerate_support(spec, ctx)
    images = []
    for e in support:
        m = Polynomial(ctx, {e: 1})
        images.append(lie_derivative(X, m) - K * m)
    return ExactMatrix.from_images(images, support)


def normalize_curve(g: Polynomial, state_vars: Sequence[str] = ("z", "y")) -> Polynomial:
    """Scale ``g`` so its highest pure power of the second state variable has
    coefficient 1 (``g = y^k + ...``); without such a term, make the
    graded-lex leading coefficient 1."""
    if g.is_zero():
        return g
    bi = g.context.index(state_vars[1])
    pure = [(e[bi], c) for e, c in g.items() if sum(e) == e[bi] and e[bi] > 0]
    if pure:
        return g.scale(1 / max(pure)[1])
    return g.monic()


def kernel_curves(M: ExactMatrix, ctx: VariableContext) -> list[Polynomial]:
    out = []
    for v in kernel_basis(M):
        out.append(Polynomial(ctx, {e: c for e, c in zip(M.col_labels, v) if c}))
    return out


def find_invariant_curves(
    X: PolyVectorField,
    n: int,
    cofactor: Polynomial | None = None,
    spec: AnsatzSpec | None = None,
    affine_sweep: bool = False,
    sweep_range: int | None = None,
) -> list[CurveCertificate]:
    """Every kernel generator for degree ``n``, each exactly verified.

    Without a cofactor the normal form's ``n*y`` is used.  ``affine_sweep``
    (only consulted when that hinted search is empty) additionally tries
    ``K = k0 + k1*a + k2*b`` for integers ``|k| <= sweep_range``.
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    ctx = X.context
    spec = spec or default_ansatz(X, n)
    a, b = X.state_vars
    if cofactor is None:
        cofactor = ctx.var(b).scale(n)
    certs = _certified(X, cofactor, spec)
    if certs or not affine_sweep:
        return certs
    r = n if sweep_range is None else sweep_range
    va, vb = ctx.var(a), ctx.var(b)
    for k1, k2, k0 in itertools.product(range(-r, r + 1), repeat=3):
        K = ctx.const(k0) + va.scale(k1) + vb.scale(k2)
        if K == cofactor:
            continue
        certs = _certified(X, K, spec)
        if certs:
            return certs
    return []


def _certified(X: PolyVectorField, K: Polynomial, spec: AnsatzSpec) -> list[CurveCertificate]:
    M = build_linear_system(X, K, spec)
    out = []
    for g in kernel_curves(M, X.context):
        g = normalize_curve(g, X.state_vars)
        cert = CurveCertificate(X, g, K)
        verdict = verify_certificate(cert)
        if not verdict.passed:
            raise SoundnessError(f"kernel element failed verification ({verdict.residual_terms} residual terms)")
        out.append(cert)
    return out


def quotient_hint(X: PolyVectorField, g: Polynomial) -> Polynomial | None:
    """Leading part of ``X(g) / g`` by division with remainder.

    Useful when ``g`` is a slightly corrupted invariant curve: its top terms
    still fix the cofactor.  Returns ``None`` unless the quotient has degree
    at most one in the state variables.
    """
    if g.is_zero():
        return None
    f = lie_derivative(X, g)
    ld, lc = g.leading_term()
    rest = [(e, c) for e, c in g.items() if e != ld]
    rem = dict(f.items())
    quot: dict = {}
    steps = 0
    while rem and steps < 64:
        le = max(rem, key=graded_lex_key)
        if any(x < y for x, y in zip(le, ld)):
            break
        qe = tuple(x - y for x, y in zip(le, ld))
        qc = rem.pop(le) / lc
        quot[qe] = qc
        for e, c in rest:
            ne = tuple(x + y for x, y in zip(e, qe))
            v = rem.get(ne, 0) - qc * c
            if v:
                rem[ne] = v
            else:
                rem.pop(ne, None)
        steps += 1
    K = Polynomial(g.context, quot)
    if K.degree(X.state_vars) > 1:
        return None
    return K


# ---------------------------------------------------------------------------
# Two-parameter families  beta = b*q, gamma = c*q^2, delta = q


BC = VariableContext(("b", "c"))


@dataclass(frozen=True)
class FamilySpec:
    """``y' = 3y^2 + b*s*z*y + c*s^2*z^2 + s`` for the parameter ``s``."""

    degree: int
    parameter: str = "q"
    qh: bool = True

    def system(self, b: Fraction, c: Fraction, ctx: VariableContext = DEFAULT_CONTEXT) -> PolyVectorField:
        z, y, s = ctx.var("z"), ctx.var("y"), ctx.var(self.parameter)
        P = z * y + 1
        Q = 3 * y * y + (s * z * y).scale(b) + (s * s * z * z).scale(c) + s
        return PolyVectorField(P, Q, ("z", "y"))

    def ansatz(self) -> AnsatzSpec:
        X = self.system(Fraction(1, 3), Fraction(2, 7))
        return default_ansatz(X, self.degree, qh=None if self.qh else False)

    def cofactor(self, ctx: VariableContext = DEFAULT_CONTEXT) -> Polynomial:
        return ctx.var("y").scale(self.degree)

    def matrix(self, b: Fraction, c: Fraction) -> ExactMatrix:
        X = self.system(Fraction(b), Fraction(c))
        return build_linear_system(X, self.cofactor(), self.ansatz())

    def kernel_dimension(self, b: Fraction, c: Fraction) -> int:
        M = self.matrix(b, c)
        return len(M.col_labels) - len(echelon_rows(M)[1])


DEFAULT_GRID = (Fraction(0), Fraction(1), Fraction(-1))


def interpolate_family_matrix(
    f: FamilySpec, grid: Sequence[Fraction] = DEFAULT_GRID, check_point=(Fraction(2), Fraction(-3))
) -> tuple[list[list[Polynomial]], tuple, tuple]:
    """Entry-wise interpolation of ``M(b, c)`` on ``grid x grid``.

    Entries are recovered as polynomials of degree < len(grid) in each of
    ``b`` and ``c``, then checked against a direct evaluation at
    ``check_point``; a mismatch means the grid is too small for the family.
    """
    k = len(grid)
    if len(set(grid)) != k:
        raise InterpolationGridTooSmall("grid values must be distinct")
    samples = {}
    rows: set = set()
    cols = None
    for bv in grid:
        for cv in grid:
            M = f.matrix(bv, cv)
            cols = M.col_labels
            samples[(bv, cv)] = {(M.row_labels[i], j): v for i, r in enumerate(M.rows) for j, v in r.items()}
            rows.update(M.row_labels)
    row_labels = tuple(sorted(rows, key=graded_lex_key, reverse=True))
    basis_b = _lagrange_basis(grid, "b")
    basis_c = _lagrange_basis(grid, "c")
    keys = set()
    for s in samples.values():
        keys.update(s)
    entries: dict = {}
    for key in keys:
        acc = BC.zero()
        for i, bv in enumerate(grid):
            for j, cv in enumerate(grid):
                v = samples[(bv, cv)].get(key)
                if v:
                    acc = acc + basis_b[i] * basis_c[j] * v
        if acc:
            entries[key] = acc
    ridx = {r: i for i, r in enumerate(row_labels)}
    dense = [[BC.zero() for _ in cols] for _ in row_labels]
    for (r, j), v in entries.items():
        dense[ridx[r]][j] = v
    # check
    bv, cv = check_point
    direct = f.matrix(bv, cv)
    want = {(direct.row_labels[i], j): v for i, r in enumerate(direct.rows) for j, v in r.items()}
    for i, r in enumerate(row_labels):
        for j in range(len(cols)):
            got = dense[i][j].evaluate((bv, cv))
            if got != want.get((r, j), 0):
                raise InterpolationGridTooSmall(f"entry ({r}, {cols[j]}) is not reproduced off the grid")
    extra = set(want) - {(r, j) for r in row_labels for j in range(len(cols))}
    if extra:
        raise InterpolationGridTooSmall("rows appear off the grid that the grid never produced")
    return dense, row_labels, cols


def _lagrange_basis(nodes: Sequence[Fraction], var: str) -> list[Polynomial]:
    t = BC.var(var)
    out = []
    for i, xi in enumerate(nodes):
        L = BC.one()
        for j, xj in enumerate(nodes):
            if j != i:
                L = L * (t - xj).scale(Fraction(1) / (xi - xj))
        out.append(L)
    return out


def _poly_divide(a: Polynomial, b: Polynomial) -> Polynomial:
    return a.exact_divide(b)


def _minor(dense: list[list[Polynomial]], rows: Sequence[int]) -> Polynomial:
    sub = [dense[r] for r in rows]
    return bareiss_determinant(sub, BC.zero(), BC.one(), _poly_divide)


@dataclass
class EliminationReport:
    degree: int
    pairs: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    kernel_dims: dict = field(default_factory=dict)
    rejected: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    components: list[str] = field(default_factory=list)
    on_components: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    minors_used: int = 0
    columns: int = 0
    rows: int = 0


def eliminate_family(f: FamilySpec, grid: Sequence[Fraction] = DEFAULT_GRID, max_minors: int = 64) -> EliminationReport:
    """All rational ``(b, c)`` where the degree-``n`` kernel is nontrivial.

    Steps: interpolate ``M(b, c)``; take maximal minors (pivot rows at a
    fixed generic point, then single-row exchanges) until their gcd is
    constant; intersect them by resultants in ``c``; extract rational roots;
    confirm every candidate by an exact kernel computation.
    """
    dense, row_labels, cols = interpolate_family_matrix(f, grid)
    report = EliminationReport(f.degree, columns=len(cols), rows=len(row_labels))
    ncols = len(cols)
    if ncols == 0:
        return report
    generic = (Fraction(1, 3), Fraction(2, 7))
    numeric = ExactMatrix.from_dense([[e.evaluate(generic) for e in row] for row in dense])
    # transpose trick: pivot columns of M^T are independent rows of M
    prows, pcols = echelon_rows(ExactMatrix.from_dense([list(col) for col in zip(*numeric.to_dense())]))
    if len(pcols) < ncols:
        report.components.append("kernel is nontrivial for generic (b, c)")
        return report
    base = list(pcols)
    others = [r for r in range(len(row_labels)) if r not in set(base)]
    minors: list[Polynomial] = []
    from .symbridge import poly_gcd

    def add_minor(rows):
        D = _minor(dense, sorted(rows))
        if D:
            minors.append(D)

    add_minor(base)
    candidates = ((r, i) for r in others for i in range(len(base)))
    for r, i in candidates:
        if len(minors) >= max_minors:
            break
        g = poly_gcd(minors)
        if g.is_constant() and len(minors) >= 3:
            break
        rows = list(base)
        rows[i] = r
        add_minor(rows)
    report.minors_used = len(minors)
    points, comps = common_rational_zeros(minors)
    report.components.extend(comps)
    common = poly_gcd(minors)
    for bv, cv in points:
        dim = f.kernel_dimension(bv, cv)
        if dim > 0 and not common.is_constant() and common.evaluate((bv, cv)) == 0:
            # a root of the cofactor left after removing the common factor,
            # but sitting on that one-dimensional component: not isolated
            report.on_components.append((bv, cv))
            report.kernel_dims[(bv, cv)] = dim
        elif dim > 0:
            report.pairs.append((bv, cv))
            report.kernel_dims[(bv, cv)] = dim
        else:
            report.rejected.append((bv, cv))
    report.pairs.sort()
    report.on_components.sort()
    return report


def common_rational_zeros(polys: Sequence[Polynomial]) -> tuple[list[tuple[Fraction, Fraction]], list[str]]:
    """Rational common zeros of bivariate polynomials in ``(b, c)``.

    One-dimensional components (a common factor, or a line ``b = b0`` on
    which everything vanishes) are described in the second return value;
    their rational points are not enumerated.
    """
    from .symbridge import poly_gcd, rational_roots, resultant

    polys = [p for p in polys if p]
    if not polys:
        return [], ["every (b, c)"]
    comps = []
    G = poly_gcd(polys)
    if not G.is_constant():
        comps.append(f"common factor {G}")
        polys = [p.exact_divide(G) for p in polys]
    if any(p.is_constant() for p in polys):
        return [], comps
    b, c = BC.var("b"), BC.var("c")
    R = None
    for u, v in _combinations(polys):
        if u.degree_in("c") == 0 and v.degree_in("c") == 0:
            r = poly_gcd([u, v]) if not u.is_constant() else BC.one()
        else:
            r = resultant(u, v, "c")
        if r:
            R = r if R is None else poly_gcd([R, r])
            if R.is_constant():
                break
    if R is None:
        comps.append("resultants vanish identically")
        return [], comps
    bcoeffs = _univariate(R, "b")
    points = []
    for b0 in rational_roots(bcoeffs):
        specs = [p.substitute({"b": b0}) for p in polys]
        specs = [s for s in specs if s]
        if not specs:
            comps.append(f"line b = {b0}")
            continue
        h = poly_gcd(specs)
        if h.is_constant():
            continue
        for c0 in rational_roots(_univariate(h, "c")):
            points.append((b0, c0))
    return sorted(set(points)), comps


def _combinations(polys: Sequence[Polynomial]) -> Iterable[tuple[Polynomial, Polynomial]]:
    n = len(polys)
    for i in range(n):
        for j in range(i + 1, n):
            yield polys[i], polys[j]
    # generic combinations break pairwise common factors
    for s in range(1, 4):
        u = BC.zero()
        v = BC.zero()
        for i, p in enumerate(polys):
            u = u + p.scale(i + s)
            v = v + p.scale((i + 1) ** 2 + s)
        yield u, v


def _univariate(f: Polynomial, var: str) -> list[Fraction]:
    i = f.context.index(var)
    deg = f.degree_in(var)
    coeffs = [Fraction(0)] * (deg + 1)
    for e, c in f.items():
        if any(k for j, k in enumerate(e) if j != i):
            raise ValueError(f"polynomial is not univariate in {var}")
        coeffs[e[i]] += c
    return coeffs


@dataclass
class ScanReport:
    degree: int
    dims: dict = field(default_factory=dict)

    @property
    def hits(self) -> list[tuple[Fraction, Fraction]]:
        return [k for k, d in self.dims.items() if d > 0]


def scan_family(f: FamilySpec, points: Iterable[tuple[Fraction, Fraction]], threads: int = 1) -> ScanReport:
    """Kernel dimension at each grid point; results keyed and sorted by point."""
    pts = sorted(set((Fraction(b), Fraction(c)) for b, c in points))
    report = ScanReport(f.degree)
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(threads) as ex:
            dims = list(ex.map(lambda bc: f.kernel_dimension(*bc), pts))
    else:
        dims = [f.kernel_dimension(*bc) for bc in pts]
    report.dims = dict(zip(pts, dims))
    return report


# ---------------------------------------------------------------------------
# Repair of transcribed entries


@dataclass
class RepairReport:
    entry_id: str
    status: str  # verified | replaced | system-corrected
    cofactor: Polynomial
    kernel_dimension: int
    certified: CurveCertificate
    curve_diffs: list[tuple[tuple[int, ...], Fraction, Fraction]] = field(default_factory=list)
    system_diffs: list[tuple[str, str, str]] = field(default_factory=list)
    candidates: int = 1


def _reference_scale(g: Polynomial, ref: Polynomial, state_vars) -> Polynomial:
    """Scale ``g`` to agree with ``ref`` on one shared monomial (the highest
    pure power of the second state variable if possible)."""
    bi = g.context.index(state_vars[1])
    shared = [e for e, _ in g.items() if ref.coefficient(e)]
    if not shared:
        return normalize_curve(g, state_vars)
    pure = [e for e in shared if sum(e) == e[bi]]
    e = max(pure, key=lambda e: e[bi]) if pure else max(shared, key=graded_lex_key)
    return g.scale(ref.coefficient(e) / g.coefficient(e))


def _diffs(g: Polynomial, ref: Polynomial):
    keys = sorted(set(e for e, _ in g.items()) | set(e for e, _ in ref.items()), key=graded_lex_key, reverse=True)
    return [(e, ref.coefficient(e), g.coefficient(e)) for e in keys if ref.coefficient(e) != g.coefficient(e)]


def repair(
    X: PolyVectorField,
    verbatim: Polynomial | None,
    degree: int,
    cofactor: Polynomial | None = None,
    entry_id: str = "",
    spec: AnsatzSpec | None = None,
) -> RepairReport:
    """Certify or replace a transcribed (system, curve) pair.

    Order of attempts: the verbatim pair as printed; the degree-``degree``
    kernel of the printed system; finally, when that kernel is empty, the
    quadratic field recovered from the verbatim curve.  Raises
    :class:`NoCurveFound` when all three fail.
    """
    from .field import cofactor_of, recover_quadratic_field, NotInvariant, CofactorDegreeViolation

    ctx = X.context
    sv = X.state_vars
    if verbatim is not None and not verbatim.is_zero():
        try:
            K0 = cofactor_of(X, verbatim)
        except (NotInvariant, CofactorDegreeViolation):
            K0 = None
        if K0 is not None and (cofactor is None or K0 == cofactor):
            cert = CurveCertificate(X, verbatim, K0)
            return RepairReport(entry_id, "verified", K0, 1, cert)
    hint = cofactor
    if hint is None and verbatim is not None:
        hint = quotient_hint(X, verbatim)
    if hint is None:
        hint = ctx.var(sv[1]).scale(degree)
    spec = spec or default_ansatz(X, degree)
    certs = find_invariant_curves(X, degree, hint, spec)
    if certs:
        best = None
        for cert in certs:
            g = cert.g
            if verbatim is not None:
                g = _reference_scale(g, verbatim, sv)
                d = _diffs(g, verbatim)
            else:
                d = []
            if best is None or len(d) < len(best[1]):
                best = (CurveCertificate(X, g, cert.K), d)
        return RepairReport(entry_id, "replaced", hint, len(certs), best[0], curve_diffs=best[1], candidates=len(certs))
    if verbatim is not None:
        fixed_P = X.P if tuple(sv) == ("z", "y") else None
        fields = recover_quadratic_field(verbatim, hint, tuple(sv), fixed_P=fixed_P)
        if not fields and fixed_P is not None:
            fields = recover_quadratic_field(verbatim, hint, tuple(sv))
        for Y in fields:
            cert = CurveCertificate(Y, verbatim, hint)
            if verify_certificate(cert).passed:
                sd = []
                from .exprio import print_polynomial

                for name, old, new in (("P", X.P, Y.P), ("Q", X.Q, Y.Q)):
                    if old != new:
                        sd.append((name, print_polynomial(old), print_polynomial(new)))
                return RepairReport(entry_id, "system-corrected", hint, 0, cert, system_diffs=sd, candidates=len(fields))
    raise NoCurveFound(
        f"{entry_id or 'entry'}: no invariant curve of degree {degree} with cofactor {hint} "
        f"and no quadratic field fits the printed curve"
    )
