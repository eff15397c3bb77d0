"""Numeric look at the real picture: oval counts and SVG rendering.

This is the only module that uses floating point.  Exact coefficients are
converted once, by ``float(Fraction)``, which rounds correctly.  Nothing
here is certified; oval counts are evidence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .field import PolyVectorField
from .poly import Polynomial

__all__ = [
    "Window",
    "OvalReport",
    "DegenerateWindow",
    "StepLimitExceeded",
    "DEFAULT_WINDOW",
    "count_ovals",
    "contour_components",
    "render_svg",
    "integrate_trajectory",
    "numeric_evaluator",
]


class DegenerateWindow(ValueError):
    pass


class StepLimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Window:
    xmin: Fraction
    xmax: Fraction
    ymin: Fraction
    ymax: Fraction
    resolution: int = 512

    def __post_init__(self) -> None:
        for name in ("xmin", "xmax", "ymin", "ymax"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise DegenerateWindow("window needs xmin < xmax and ymin < ymax")
        if self.resolution < 16:
            raise DegenerateWindow("resolution must be at least 16")

    def with_resolution(self, r: int) -> "Window":
        return Window(self.xmin, self.xmax, self.ymin, self.ymax, r)


DEFAULT_WINDOW = Window(-8, 8, -8, 8, 512)


@dataclass(frozen=True)
class OvalReport:
    bounded: int
    open: int
    boxes: tuple[tuple[float, float, float, float], ...]
    resolution: int
    stable: bool
    bounded_at_double: int | None = None

    def to_dict(self) -> dict:
        return {
            "bounded": self.bounded,
            "open": self.open,
            "boxes": [list(b) for b in self.boxes],
            "resolution": self.resolution,
            "stable": self.stable,
            "bounded_at_double": self.bounded_at_double,
        }


def _specialize(g: Polynomial, bindings: Mapping[str, object] | None, state_vars: Sequence[str]) -> Polynomial:
    vals = {k: Fraction(v) for k, v in (bindings or {}).items() if k in g.variables()}
    gs = g.substitute(vals) if vals else g
    left = [v for v in gs.variables() if v not in state_vars]
    if left:
        raise ValueError(f"unbound parameters {left}")
    return gs


def numeric_evaluator(g: Polynomial, state_vars: Sequence[str]):
    """Vectorized float evaluator of a parameter-free polynomial."""
    ia, ib = g.context.index(state_vars[0]), g.context.index(state_vars[1])
    terms = [(e[ia], e[ib], float(c)) for e, c in g.items()]

    def f(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        for i, j, c in terms:
            out = out + c * x ** i * y ** j
        return out

    return f


# cell corners: 0 = (i, j), 1 = (i+1, j), 2 = (i+1, j+1), 3 = (i, j+1)
# cell edges:   0 = bottom, 1 = right, 2 = top, 3 = left
_EDGE_CORNERS = ((0, 1), (1, 2), (3, 2), (0, 3))


def _grid_values(f, w: Window) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    r = w.resolution
    xs = float(w.xmin) + (float(w.xmax) - float(w.xmin)) * np.arange(r + 1) / r
    ys = float(w.ymin) + (float(w.ymax) - float(w.ymin)) * np.arange(r + 1) / r
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    V = f(X, Y)
    # an exact zero at a node is treated as the smallest positive value, so
    # every node has a definite sign
    V = np.where(V == 0.0, np.nextafter(0.0, 1.0), V)
    return xs, ys, V


def contour_components(g: Polynomial, bindings=None, w: Window = DEFAULT_WINDOW, state_vars=("z", "y")):
    """Marching squares on ``g = 0``.

    Returns a list of ``(closed, points)`` polylines in window coordinates,
    one per connected component, in a deterministic order.
    """
    gs = _specialize(g, bindings, state_vars)
    f = numeric_evaluator(gs, state_vars)
    xs, ys, V = _grid_values(f, w)
    r = w.resolution
    pos = V > 0
    # edge ids: horizontal edge (i, j)-(i+1, j) -> i*(r+1)+j ; vertical (i, j)-(i, j+1) -> H + i*r + j
    H = r * (r + 1)

    def hid(i, j):
        return i * (r + 1) + j

    def vid(i, j):
        return H + i * r + j

    corners = np.stack([pos[:-1, :-1], pos[1:, :-1], pos[1:, 1:], pos[:-1, 1:]], axis=-1)
    mixed = np.argwhere(corners.any(axis=-1) & ~corners.all(axis=-1))
    src, dst = [], []
    for i, j in mixed:
        i, j = int(i), int(j)
        c = corners[i, j]
        eids = (hid(i, j), vid(i + 1, j), hid(i, j + 1), vid(i, j))
        crossing = [k for k, (a, b) in enumerate(_EDGE_CORNERS) if c[a] != c[b]]
        if len(crossing) == 2:
            pairs = [tuple(crossing)]
        else:
            # saddle: decide by the value at the cell centre
            centre = f(0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1]))
            if (centre > 0) == bool(c[0]):
                pairs = [(0, 1), (2, 3)]
            else:
                pairs = [(0, 3), (1, 2)]
        for a, b in pairs:
            src.append(eids[a])
            dst.append(eids[b])
    if not src:
        return []
    nodes = sorted(set(src) | set(dst))
    index = {n: k for k, n in enumerate(nodes)}
    si = np.array([index[s] for s in src])
    di = np.array([index[d] for d in dst])
    n = len(nodes)
    G = coo_matrix((np.ones(len(si)), (si, di)), shape=(n, n))
    ncomp, labels = connected_components(G, directed=False)
    adj: dict[int, list[int]] = {k: [] for k in range(n)}
    for a, b in zip(si.tolist(), di.tolist()):
        adj[a].append(b)
        adj[b].append(a)

    def point(eid):
        if eid < H:
            i, j = divmod(eid, r + 1)
            v0, v1 = V[i, j], V[i + 1, j]
            t = v0 / (v0 - v1)
            return (xs[i] + t * (xs[i + 1] - xs[i]), ys[j])
        i, j = divmod(eid - H, r)
        v0, v1 = V[i, j], V[i, j + 1]
        t = v0 / (v0 - v1)
        return (xs[i], ys[j] + t * (ys[j + 1] - ys[j]))

    out = []
    members: dict[int, list[int]] = {}
    for k, lab in enumerate(labels.tolist()):
        members.setdefault(lab, []).append(k)
    for lab in sorted(members, key=lambda l: members[l][0]):
        ks = members[lab]
        ends = [k for k in ks if len(adj[k]) == 1]
        start = ends[0] if ends else ks[0]
        path = [start]
        prev, cur = None, start
        while True:
            nxt = [m for m in adj[cur] if m != prev]
            if not nxt or (nxt[0] == start):
                break
            prev, cur = cur, nxt[0]
            path.append(cur)
        out.append((not ends, [point(nodes[k]) for k in path]))
    return out


def _count(g, bindings, w: Window, state_vars):
    comps = contour_components(g, bindings, w, state_vars)
    bounded = [pts for closed, pts in comps if closed]
    boxes = tuple(
        (float(min(p[0] for p in pts)), float(max(p[0] for p in pts)),
         float(min(p[1] for p in pts)), float(max(p[1] for p in pts)))
        for pts in bounded
    )
    return len(bounded), len(comps) - len(bounded), boxes


def count_ovals(g: Polynomial, bindings=None, w: Window = DEFAULT_WINDOW, state_vars=("z", "y"),
                check_stability: bool = True) -> OvalReport:
    """Bounded components of ``g = 0`` inside ``w``.

    A component is bounded when it closes up without touching the window
    border.  With ``check_stability`` the count is repeated at twice the
    resolution and ``stable`` records whether both runs agree.
    """
    b, o, boxes = _count(g, bindings, w, state_vars)
    if not check_stability:
        return OvalReport(b, o, boxes, w.resolution, False)
    b2, o2, _ = _count(g, bindings, w.with_resolution(2 * w.resolution), state_vars)
    return OvalReport(b, o, boxes, w.resolution, b == b2 and o == o2, b2)


# --- trajectories -----------------------------------------------------------

def integrate_trajectory(X: PolyVectorField, seed: Sequence[float], t_end: float = 20.0,
                         bindings=None, bounds: Window | None = None, max_steps: int = 10**6,
                         rtol: float = 1e-9, atol: float = 1e-12) -> np.ndarray:
    """Integrate ``X`` from ``seed`` with an adaptive embedded Runge-Kutta pair.

    Stops at ``t_end`` (negative for backward time), when the orbit leaves
    ``bounds`` enlarged by half its size, or raises
    :class:`StepLimitExceeded` after ``max_steps`` steps.  Returns an
    ``(n, 2)`` array of dense-output samples.
    """
    vals = {k: Fraction(v) for k, v in (bindings or {}).items()}
    Y = X.substitute(vals) if vals else X
    sv = tuple(X.state_vars)
    fp = numeric_evaluator(_specialize(Y.P, None, sv), sv)
    fq = numeric_evaluator(_specialize(Y.Q, None, sv), sv)
    nfev = [0]
    # RK45 takes six evaluations per accepted step
    limit = 6 * max_steps

    def rhs(_t, u):
        nfev[0] += 1
        if nfev[0] > limit:
            raise StepLimitExceeded(f"more than {max_steps} steps")
        return [float(fp(u[0], u[1])), float(fq(u[0], u[1]))]

    events = []
    if bounds is not None:
        cx = 0.5 * float(bounds.xmin + bounds.xmax)
        cy = 0.5 * float(bounds.ymin + bounds.ymax)
        hx = float(bounds.xmax - bounds.xmin)
        hy = float(bounds.ymax - bounds.ymin)

        def leave(_t, u):
            return min(hx - abs(u[0] - cx), hy - abs(u[1] - cy))

        leave.terminal = True
        events.append(leave)
    sol = solve_ivp(rhs, (0.0, t_end), [float(seed[0]), float(seed[1])], method="RK45",
                    rtol=rtol, atol=atol, events=events or None, dense_output=False)
    return np.column_stack([sol.y[0], sol.y[1]])


# --- SVG ------------------------------------------------------------------------

_SIZE = 600
_MARGIN = 40


def _fmt(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def render_svg(g: Polynomial, bindings=None, X: PolyVectorField | None = None, w: Window = DEFAULT_WINDOW,
               trajectories: Sequence[Sequence[float]] = (), state_vars=("z", "y"), t_end: float = 20.0,
               title: str = "") -> str:
    """Deterministic SVG 1.1 drawing of ``g = 0`` and optional trajectories."""
    x0, x1, y0, y1 = float(w.xmin), float(w.xmax), float(w.ymin), float(w.ymax)
    sx = _SIZE / (x1 - x0)
    sy = _SIZE / (y1 - y0)

    def px(x):
        return _MARGIN + (x - x0) * sx

    def py(y):
        return _MARGIN + (y1 - y) * sy

    def path(points, closed):
        pts = [f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in points]
        d = "M" + " L".join(pts) + (" Z" if closed else "")
        return d

    total = _SIZE + 2 * _MARGIN
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total}" height="{total}" '
        f'viewBox="0 0 {total} {total}">',
        f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{_SIZE}" height="{_SIZE}" fill="white" stroke="black"/>',
        '<g id="axes" stroke="#999999" stroke-width="0.5">',
    ]
    if x0 < 0 < x1:
        lines.append(f'<line x1="{_fmt(px(0))}" y1="{_MARGIN}" x2="{_fmt(px(0))}" y2="{_MARGIN + _SIZE}"/>')
    if y0 < 0 < y1:
        lines.append(f'<line x1="{_MARGIN}" y1="{_fmt(py(0))}" x2="{_MARGIN + _SIZE}" y2="{_fmt(py(0))}"/>')
    lines.append("</g>")
    lines.append('<g id="curve" fill="none" stroke="#c00000" stroke-width="1.5">')
    for closed, pts in contour_components(g, bindings, w, state_vars):
        lines.append(f'<path d="{path(pts, closed)}"/>')
    lines.append("</g>")
    if trajectories:
        if X is None:
            raise ValueError("trajectories need a vector field")
        lines.append('<g id="trajectories" fill="none" stroke="#0050c0" stroke-width="0.8">')
        for seed in trajectories:
            for direction in (1.0, -1.0):
                pts = integrate_trajectory(X, seed, direction * t_end, bindings, w)
                lines.append(f'<path d="{path(pts.tolist(), False)}"/>')
        lines.append("</g>")
    label = title or "g = 0"
    lines.append('<g id="legend" font-family="monospace" font-size="12">')
    lines.append(f'<text x="{_MARGIN}" y="{_MARGIN - 12}">{_escape(label)}</text>')
    lines.append(f'<text x="{_MARGIN}" y="{total - 12}">[{_fmt(x0)}, {_fmt(x1)}] x [{_fmt(y0)}, {_fmt(y1)}], '
                 f'{w.resolution} cells</text>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
