import math
import xml.etree.ElementTree as ET
from fractions import Fraction

import numpy as np
import pytest

from darboux.exprio import parse_polynomial
from darboux.field import PolyVectorField
from darboux.poly import DEFAULT_CONTEXT
from darboux.realcurve import (
    DEFAULT_WINDOW,
    DegenerateWindow,
    StepLimitExceeded,
    Window,
    contour_components,
    count_ovals,
    integrate_trajectory,
    numeric_evaluator,
    render_svg,
)

z, y = DEFAULT_CONTEXT.var("z"), DEFAULT_CONTEXT.var("y")
CIRCLE = parse_polynomial("z^2 + y^2 - 1")
HYPERBOLA = parse_polynomial("z*y - 1")
OSCILLATOR = PolyVectorField(-y, z)


def test_window_validation():
    with pytest.raises(DegenerateWindow):
        Window(1, 1, 0, 1)
    with pytest.raises(DegenerateWindow):
        Window(0, 1, 0, 1, resolution=8)
    assert DEFAULT_WINDOW.with_resolution(64).resolution == 64
    assert Window("-1/2", 1, 0, 1).xmin == Fraction(-1, 2)


def test_numeric_evaluator_vectorizes():
    f = numeric_evaluator(CIRCLE, ("z", "y"))
    assert f(1.0, 0.0) == 0.0
    assert np.allclose(f(np.array([0.0, 2.0]), np.array([0.0, 0.0])), [-1.0, 3.0])


def test_circle_is_one_stable_oval():
    rep = count_ovals(CIRCLE)
    assert (rep.bounded, rep.open, rep.stable) == (1, 0, True)
    x0, x1, y0, y1 = rep.boxes[0]
    assert all(type(v) is float for v in rep.boxes[0])
    assert x0 == pytest.approx(-1, abs=0.05) and x1 == pytest.approx(1, abs=0.05)
    assert y0 == pytest.approx(-1, abs=0.05) and y1 == pytest.approx(1, abs=0.05)


def test_hyperbola_has_no_oval():
    rep = count_ovals(HYPERBOLA)
    assert rep.bounded == 0 and rep.open == 2 and rep.stable


def test_two_circles_and_empty_curve():
    two = ((z - 3) ** 2 + y * y - 1) * ((z + 3) ** 2 + y * y - 1)
    assert count_ovals(two, w=DEFAULT_WINDOW.with_resolution(128)).bounded == 2
    assert count_ovals(parse_polynomial("z^2 + y^2 + 1")).bounded == 0


def test_contour_points_lie_near_the_curve():
    comps = contour_components(CIRCLE, w=DEFAULT_WINDOW.with_resolution(256))
    (closed, pts), = comps
    assert closed
    assert max(abs(math.hypot(px, py) - 1) for px, py in pts) < 0.01


def test_bindings_and_unbound_parameters():
    g = parse_polynomial("z^2 + y^2 - q")
    assert count_ovals(g, {"q": 4}).bounded == 1
    with pytest.raises(ValueError):
        count_ovals(g)


def test_oscillator_returns_to_its_seed():
    pts = integrate_trajectory(OSCILLATOR, (1.0, 0.0), t_end=2 * math.pi)
    assert np.hypot(*(pts[-1] - pts[0])) < 1e-8
    # the energy is conserved along the orbit
    assert np.max(np.abs(np.hypot(pts[:, 0], pts[:, 1]) - 1)) < 1e-8


def test_trajectory_stops_outside_bounds_and_step_limit():
    X = PolyVectorField(z * z, y.scale(0))  # blows up in finite time
    pts = integrate_trajectory(X, (1.0, 0.0), t_end=5.0, bounds=Window(-2, 2, -2, 2))
    assert abs(pts[-1, 0]) <= 4.0 + 1e-6
    with pytest.raises(StepLimitExceeded):
        integrate_trajectory(OSCILLATOR, (1.0, 0.0), t_end=1e4, max_steps=10)


def test_svg_is_deterministic_and_well_formed():
    a = render_svg(CIRCLE, None, OSCILLATOR, DEFAULT_WINDOW.with_resolution(64), [(0.5, 0.0)], title="c<1>")
    b = render_svg(CIRCLE, None, OSCILLATOR, DEFAULT_WINDOW.with_resolution(64), [(0.5, 0.0)], title="c<1>")
    assert a == b
    root = ET.fromstring(a.encode())
    ids = [g.get("id") for g in root.iter("{http://www.w3.org/2000/svg}g")]
    assert ids == ["axes", "curve", "trajectories", "legend"]
    assert "c&lt;1&gt;" in a
    with pytest.raises(ValueError):
        render_svg(CIRCLE, trajectories=[(0.0, 0.0)])
