import random
from fractions import Fraction

import pytest
import sympy

from darboux.catalog import builtin_errata, get_entry
from darboux.exprio import parse_polynomial
from darboux.genus import (
    PROJECTIVE,
    NotSquareFree,
    ProjectiveCurve,
    ReducibleSuspected,
    curve_genus,
    delta_from_sequence,
    genus,
    multiplicity_sequence,
    oval_bound,
    singular_points,
)
from darboux.poly import DEFAULT_CONTEXT, Polynomial
from oracles import GENUS

z, y = DEFAULT_CONTEXT.var("z"), DEFAULT_CONTEXT.var("y")


def _curve(text: str) -> ProjectiveCurve:
    return ProjectiveCurve.from_affine(parse_polynomial(text))


def _random_invertible(rng: random.Random):
    while True:
        M = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        if sympy.Matrix(M).det() != 0:
            return M


def test_oval_bound_and_delta():
    assert oval_bound(1) == 2 and oval_bound(2) == 3
    with pytest.raises(ValueError):
        oval_bound(-1)
    assert delta_from_sequence((2,)) == 1
    assert delta_from_sequence((6, 3, 3)) == 21
    assert delta_from_sequence(()) == 0


def test_projective_curve_validation():
    with pytest.raises(ValueError):
        ProjectiveCurve(PROJECTIVE.one())
    with pytest.raises(ValueError):
        ProjectiveCurve(PROJECTIVE.var("X0") + PROJECTIVE.var("X1") ** 2)
    with pytest.raises(ValueError):
        ProjectiveCurve.from_affine(parse_polynomial("y - q*z"))
    assert _curve("y^2 - z^3").d == 3


@pytest.mark.parametrize("text, G, sequences", [
    ("y^2 - z^2 - z^3", 0, [(2,)]),              # node
    ("y^2 - z^3", 0, [(2,)]),                    # cusp
    ("y^2 - z^4 - z^5", 0, [(2, 2), (3, 2)]),    # tacnode plus the point at infinity
    ("y^2 - z^3 + z", 1, []),                    # smooth cubic
    ("z^2 + y^2 - 1", 0, []),                    # circle
])
def test_textbook_curves(text, G, sequences):
    rep = curve_genus(_curve(text))
    assert rep.genus == G
    assert sorted(o.multiplicities for o in rep.orbits) == sorted(sequences)


def test_quadrifolium_has_a_conjugate_pair_of_nodes():
    g = (z * z + y * y) ** 3 - 4 * z * z * y * y
    rep = curve_genus(ProjectiveCurve.from_affine(g))
    assert rep.genus == 0
    by_degree = {o.degree: o for o in rep.orbits}
    assert by_degree[1].multiplicities == (4, 2, 2)
    assert by_degree[2].multiplicities == (2,)
    assert by_degree[2].delta == 2


def test_reducible_and_non_square_free_inputs():
    with pytest.raises(NotSquareFree):
        genus((y - z) ** 2 * (y + z + 1))
    with pytest.raises(ReducibleSuspected):
        genus(parse_polynomial("y^2 - z^4"))
    with pytest.raises(ValueError):
        genus(parse_polynomial("q*y"), {"q": 0})


def test_singular_points_and_sequence_api():
    C = _curve("y^2 - z^2 - z^3")
    (orbit,) = singular_points(C)
    assert orbit.chart == "X0=1"
    assert orbit.degree == 1
    assert multiplicity_sequence(orbit, C) == (2,)
    d = orbit.to_dict()
    assert d["minimal_polynomial"] == ["0", "1"]


def test_invariance_under_projective_changes_of_coordinates():
    rng = random.Random(31)
    curves = [
        _curve("y^2 - z^4 - z^5"),
        ProjectiveCurve.from_affine((z * z + y * y) ** 3 - 4 * z * z * y * y),
        ProjectiveCurve.from_affine(get_entry("2-i").curve_polynomial().substitute({"q": 1})),
    ]
    for C in curves:
        base = curve_genus(C)
        for _ in range(5):
            T = curve_genus(C.transformed(_random_invertible(rng)))
            assert T.genus == base.genus
            assert T.delta_total == base.delta_total
            assert sorted((o.degree, o.multiplicities) for o in T.orbits) == \
                sorted((o.degree, o.multiplicities) for o in base.orbits)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_smooth_random_curves_have_the_arithmetic_genus(d):
    rng = random.Random(100 + d)
    for _ in range(4):
        terms = {}
        for i in range(d + 1):
            for j in range(d + 1 - i):
                e = [0] * DEFAULT_CONTEXT.arity
                e[0], e[1] = i, j
                terms[tuple(e)] = rng.randint(-9, 9) or 1
        rep = genus(Polynomial(DEFAULT_CONTEXT, terms))
        assert rep.orbits == ()
        assert rep.genus == (d - 1) * (d - 2) // 2


def test_delta_recomputes_from_stored_sequences():
    rep = genus(get_entry("2-i").curve_polynomial(), {"q": 1})
    for o in rep.orbits:
        assert o.delta_point == delta_from_sequence(o.multiplicities)
        assert o.delta == o.degree * o.delta_point
        assert all(m >= 2 for m in o.multiplicities)
    assert rep.delta_total == sum(o.delta for o in rep.orbits)
    assert rep.genus == (rep.d - 1) * (rep.d - 2) // 2 - rep.delta_total


@pytest.mark.parametrize("entry_id", sorted(GENUS))
def test_catalog_genus(entry_id):
    e = get_entry(entry_id)
    errata = builtin_errata()
    g = parse_polynomial(errata[entry_id].curve) if entry_id in errata else e.curve_polynomial()
    rep = genus(g, e.parameter_values(), e.state_vars)
    assert rep.genus == GENUS[entry_id] == e.stated_genus
    assert rep.oval_bound == GENUS[entry_id] + 1


def test_replacement_for_3i_is_a_square():
    e = get_entry("3-i")
    g = parse_polynomial(builtin_errata()["3-i"].curve)
    with pytest.raises(NotSquareFree):
        genus(g, e.parameter_values(), e.state_vars)


def test_report_serializes():
    rep = genus(parse_polynomial("y^2 - z^2 - z^3"))
    d = rep.to_dict()
    assert d["genus"] == 0 and d["oval_bound"] == 1
    assert d["irreducibility"] == "asserted-by-caller"
    assert d["orbits"][0]["multiplicities"] == [2]
