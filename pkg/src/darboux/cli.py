"""Command-line interface: ``darboux <command> ...``.

Exit codes: 0 success, 1 a verification or expectation failed, 2 usage
error (bad arguments, unknown id, unreadable input).  Every command takes
``--json`` and then prints one JSON document carrying ``schema_version``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .catalog import (
    CatalogEntry,
    CatalogSchemaError,
    ChecksumMismatch,
    builtin_catalog,
    builtin_errata,
    certificate_mapping,
    dumps_certificates,
    export_catalog,
    load_catalog,
    loads_certificates,
)
from .exprio import ParseError, format_rational, parse_polynomial, print_polynomial

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def _threads() -> int:
    raw = os.environ.get("DARBOUX_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"DARBOUX_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


class _Ctx:
    """Shared state for one invocation: catalog source and output mode."""

    def __init__(self, args):
        self.args = args
        self.json = getattr(args, "json", False)
        self._entries = None
        self._errata = None

    @property
    def entries(self) -> list[CatalogEntry]:
        if self._entries is None:
            path = getattr(self.args, "catalog", None)
            self._entries = load_catalog(path) if path else builtin_catalog()
        return self._entries

    @property
    def errata(self):
        if self._errata is None:
            self._errata = builtin_errata()
        return self._errata

    def entry(self, entry_id: str) -> CatalogEntry:
        for e in self.entries:
            if e.id == entry_id:
                return e
        raise UsageError(f"unknown id {entry_id!r}")

    def emit(self, command: str, data: dict, text: str) -> None:
        if self.json:
            doc = {"schema_version": SCHEMA_VERSION, "command": command}
            doc.update(data)
            print(json.dumps(doc, indent=2, sort_keys=False))
        else:
            sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _params(args) -> dict[str, Fraction]:
    return {k: getattr(args, k) for k in ("q", "p", "a") if getattr(args, k, None) is not None}


def _curve_for(ctx: _Ctx, e: CatalogEntry, verbatim: bool):
    """(curve, system, source): the erratum version unless ``verbatim``."""
    if not verbatim and e.id in ctx.errata:
        er = ctx.errata[e.id]
        return parse_polynomial(er.curve), er.system(e.state_vars), "erratum"
    return e.curve_polynomial(), e.system(), "printed"


# --- verify -------------------------------------------------------------------

def _verify_entry(e: CatalogEntry, errata: dict, use_errata: bool, timings: bool) -> dict:
    from .field import CofactorDegreeViolation, CurveCertificate, NotInvariant, cofactor_of, verify_certificate

    t0 = time.perf_counter()
    row = {"id": e.id, "trust": e.trust, "source": "printed"}
    try:
        if use_errata and e.id in errata:
            er = errata[e.id]
            X, g, row["source"] = er.system(e.state_vars), parse_polynomial(er.curve), "erratum"
        else:
            X, g = e.system(), e.curve_polynomial()
    except ParseError as exc:
        row.update(passed=False, verdict="UNPARSABLE", cofactor=None, residual_terms=None, detail=str(exc))
        return row
    detail = ""
    try:
        K = cofactor_of(X, g)
        cert = CurveCertificate(X, g, K)
        v = verify_certificate(cert)
        passed = v.passed
        stated = e.stated_cofactor_polynomial()
        if row["source"] == "printed" and stated is not None and K != stated:
            passed = False
            detail = f"cofactor {print_polynomial(K)} differs from stated {e.stated_cofactor}"
        row.update(cofactor=print_polynomial(K), residual_terms=v.residual_terms)
    except NotInvariant:
        passed = False
        r = None
        row.update(cofactor=None, residual_terms=r)
        detail = "X(g) is not divisible by g"
    except CofactorDegreeViolation as exc:
        passed = False
        row.update(cofactor=None, residual_terms=None)
        detail = str(exc)
    row["passed"] = passed
    row["verdict"] = "PASS" if passed else "FAIL"
    row["erratum"] = e.id in errata
    row["detail"] = detail
    if timings:
        row["seconds"] = round(time.perf_counter() - t0, 4)
    return row


def cmd_verify(ctx: _Ctx) -> int:
    args = ctx.args
    if args.certificate:
        return _verify_certificates(ctx)
    if not args.all and not args.ids:
        raise UsageError("give one or more ids, --all, or --certificate FILE")
    entries = ctx.entries if args.all else [ctx.entry(i) for i in args.ids]
    errata = ctx.errata if args.errata else {}
    threads = _threads()
    if threads > 1 and len(entries) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(threads) as ex:
            rows = list(ex.map(lambda e: _verify_entry(e, errata, args.errata, args.timings), entries))
    else:
        rows = [_verify_entry(e, errata, args.errata, args.timings) for e in entries]
    rows.sort(key=lambda r: [e.id for e in ctx.entries].index(r["id"]))
    failed_trusted = [r["id"] for r in rows if not r["passed"] and r["trust"] == "verbatim-trusted"]
    lines = []
    for r in rows:
        tag = r["verdict"] if r["trust"] == "verbatim-trusted" else f"{r['verdict']} (untrusted)"
        k = f"K={r['cofactor']}" if r["cofactor"] else ""
        extra = f" [{r['source']}]" if r["source"] != "printed" else ""
        hint = " (erratum available)" if not r["passed"] and r.get("erratum") and not args.errata else ""
        det = f" - {r['detail']}" if r["detail"] else ""
        secs = f" {r['seconds']}s" if "seconds" in r else ""
        lines.append(f"{r['id']:<12} {tag:<16} {k}{extra}{det}{hint}{secs}")
    lines.append(f"{sum(r['passed'] for r in rows)}/{len(rows)} passed; "
                 f"{len(failed_trusted)} trusted failure(s)")
    ctx.emit("verify", {"entries": rows, "trusted_failures": failed_trusted}, "\n".join(lines))
    return 1 if failed_trusted else 0


def _verify_certificates(ctx: _Ctx) -> int:
    from .field import verify_certificate

    try:
        certs = loads_certificates(Path(ctx.args.certificate).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(str(exc)) from None
    rows = []
    for cid, cert, _ in certs:
        v = verify_certificate(cert)
        rows.append({"id": cid, "passed": v.passed, "residual_terms": v.residual_terms,
                     "cofactor": print_polynomial(cert.K)})
    text = "\n".join(f"{r['id'] or '-':<12} {'PASS' if r['passed'] else 'FAIL'} K={r['cofactor']}" for r in rows)
    ctx.emit("verify", {"certificates": rows}, text or "no certificates")
    return 0 if all(r["passed"] for r in rows) else 1


# --- discover -------------------------------------------------------------------

def _system_from(ctx: _Ctx, ref: str):
    ids = {e.id for e in ctx.entries}
    if ref in ids:
        e = ctx.entry(ref)
        return e.system(), e.id
    path = Path(ref)
    if not path.exists():
        raise UsageError(f"unknown id {ref!r} (and no such file)")
    import yaml

    from .field import PolyVectorField

    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
        sv = tuple(raw.get("state_vars", ("z", "y")))
        X = PolyVectorField(parse_polynomial(raw["system_p"]), parse_polynomial(raw["system_q"]), sv)
    except (OSError, KeyError, TypeError, AttributeError, ParseError, yaml.YAMLError) as exc:
        raise UsageError(f"cannot read system from {ref}: {exc}") from None
    return X, path.stem


def cmd_discover(ctx: _Ctx) -> int:
    from .discovery import default_ansatz, find_invariant_curves

    args = ctx.args
    X, name = _system_from(ctx, args.system)
    vals = _params(args)
    if vals:
        X = X.substitute(vals)
    n = args.degree
    if n < 1:
        raise UsageError("--degree must be at least 1")
    K = parse_polynomial(args.cofactor) if args.cofactor else None
    caps = dict(args.cap or [])
    spec = default_ansatz(X, n, qh=False if args.no_qh else None, param_caps=caps or None)
    t0 = time.perf_counter()
    certs = find_invariant_curves(X, n, K, spec, affine_sweep=args.sweep)
    elapsed = time.perf_counter() - t0
    records = [certificate_mapping(c, name, residual_checked=True) for c in certs]
    data = {
        "system": name,
        "degree": n,
        "cofactor": print_polynomial(certs[0].K) if certs else print_polynomial(_hint_cofactor(X, n, K)),
        "quasi_homogeneous": spec.qh is not None,
        "kernel_dimension": len(certs),
        "certificates": records,
    }
    if args.timings:
        data["seconds"] = round(elapsed, 4)
    if args.out:
        Path(args.out).write_text(dumps_certificates(records), encoding="utf-8", newline="\n")
    if certs:
        lines = [f"{name}: kernel dimension {len(certs)} at degree {n}, K = {data['cofactor']}"]
        for i, r in enumerate(records, 1):
            lines.append(f"[{i}] g = {r['curve']}")
    else:
        lines = [f"{name}: no curves found at degree {n} (K = {data['cofactor']})"]
    ctx.emit("discover", data, "\n".join(lines))
    return 0


def _hint_cofactor(X, n: int, K):
    if K is not None:
        return K
    return X.context.var(X.state_vars[1]).scale(n)


# --- eliminate ------------------------------------------------------------------

def _parse_grid(text: str) -> list[tuple[Fraction, Fraction]]:
    if text == "default":
        r = range(-2, 3)
        return [(Fraction(b), Fraction(c)) for b in r for c in r]
    pts = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            b, c = item.split(":")
            pts.append((Fraction(b), Fraction(c)))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"grid points are written b:c, got {item!r}") from None
    return pts


def cmd_eliminate(ctx: _Ctx) -> int:
    from .discovery import FamilySpec, eliminate_family, scan_family

    args = ctx.args
    if args.degree < 1:
        raise UsageError("--degree must be at least 1")
    fam = FamilySpec(args.degree, args.parameter, qh=not args.no_qh)
    t0 = time.perf_counter()
    if args.grid_only:
        rep = scan_family(fam, _parse_grid(args.grid or "default"), _threads())
        pairs = rep.hits
        dims = {k: rep.dims[k] for k in pairs}
        data = {"degree": args.degree, "mode": "scan", "points_scanned": len(rep.dims),
                "pairs": [{"b": format_rational(b), "c": format_rational(c), "kernel_dimension": dims[(b, c)],
                           "verified": True} for b, c in pairs]}
    else:
        rep = eliminate_family(fam)
        data = {"degree": args.degree, "mode": "eliminate", "minors": rep.minors_used,
                "matrix": [rep.rows, rep.columns],
                "pairs": [{"b": format_rational(b), "c": format_rational(c),
                           "kernel_dimension": rep.kernel_dims[(b, c)], "verified": True} for b, c in rep.pairs],
                "on_components": [{"b": format_rational(b), "c": format_rational(c),
                                   "kernel_dimension": rep.kernel_dims[(b, c)]} for b, c in rep.on_components],
                "rejected": [{"b": format_rational(b), "c": format_rational(c)} for b, c in rep.rejected],
                "components": list(rep.components)}
    if args.timings:
        data["seconds"] = round(time.perf_counter() - t0, 3)
    lines = [f"degree {args.degree}: {len(data['pairs'])} pair(s)"]
    for p in data["pairs"]:
        lines.append(f"  b = {p['b']}, c = {p['c']}  kernel dimension {p['kernel_dimension']}  verified")
    for c in data.get("components", []):
        lines.append(f"  component: {c}")
    for p in data.get("on_components", []):
        lines.append(f"  b = {p['b']}, c = {p['c']}  on a component (not isolated)")
    ctx.emit("eliminate", data, "\n".join(lines))
    return 0


# --- genus ------------------------------------------------------------------------

def cmd_genus(ctx: _Ctx) -> int:
    from .genus import GenusError, genus

    args = ctx.args
    e = ctx.entry(args.id)
    g, _, source = _curve_for(ctx, e, args.verbatim)
    sweep = args.sweep_q or [None]
    reports = []
    for qv in sweep:
        vals = e.parameter_values(_params(args))
        if qv is not None:
            vals["q"] = qv
        t0 = time.perf_counter()
        try:
            rep = genus(g, vals, e.state_vars, max_depth=args.max_depth)
        except GenusError as exc:
            data = {"id": e.id, "source": source, "error": type(exc).__name__, "message": str(exc),
                    "bindings": {k: format_rational(v) for k, v in sorted(vals.items())}}
            ctx.emit("genus", data, f"{e.id}: {type(exc).__name__}: {exc}")
            return 1
        d = rep.to_dict()
        if args.timings:
            d["seconds"] = round(time.perf_counter() - t0, 3)
        reports.append(d)
    lines = []
    for d in reports:
        b = ", ".join(f"{k}={v}" for k, v in d["bindings"].items()) or "no parameters"
        lines.append(f"{e.id} ({source}, {b}): degree {d['d']}, genus {d['genus']}, oval bound {d['oval_bound']}")
        for o in d["orbits"]:
            lines.append(f"  {o['chart']:<5} deg {o['degree']}  m(t) = {_poly_text(o['minimal_polynomial'])}  "
                         f"multiplicities {tuple(o['multiplicities'])}  delta {o['delta']}")
    genera = sorted({d["genus"] for d in reports})
    mismatch = e.stated_genus is not None and any(gv != e.stated_genus for gv in genera)
    if len(reports) > 1 and len(genera) > 1:
        lines.append(f"genus changes across the sweep: {genera}")
    data = {"id": e.id, "source": source, "stated_genus": e.stated_genus, "reports": reports}
    ctx.emit("genus", data, "\n".join(lines))
    return 1 if (mismatch and args.check) else 0


def _poly_text(coeffs: Sequence[str]) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == "0":
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        if mono and c == "1":
            terms.append(mono)
        elif mono and c == "-1":
            terms.append("-" + mono)
        else:
            terms.append(c + ("*" + mono if mono else ""))
    return " + ".join(terms).replace("+ -", "- ") or "0"


# --- plot -------------------------------------------------------------------------

def _window(args):
    from .realcurve import DEFAULT_WINDOW, DegenerateWindow, Window

    if args.window:
        parts = args.window.split(",")
        if len(parts) != 4:
            raise UsageError("--window takes xmin,xmax,ymin,ymax")
        try:
            return Window(*(Fraction(p) for p in parts), resolution=args.resolution)
        except (ValueError, ZeroDivisionError, DegenerateWindow) as exc:
            raise UsageError(f"bad window: {exc}") from None
    try:
        return DEFAULT_WINDOW.with_resolution(args.resolution)
    except DegenerateWindow as exc:
        raise UsageError(str(exc)) from None


def cmd_plot(ctx: _Ctx) -> int:
    from .realcurve import count_ovals, render_svg

    args = ctx.args
    e = ctx.entry(args.id)
    g, X, source = _curve_for(ctx, e, args.verbatim)
    w = _window(args)
    vals = e.parameter_values(_params(args))
    seeds = []
    for s in args.seed or []:
        try:
            x, y = (float(Fraction(v)) for v in s.split(","))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--seed takes x,y, got {s!r}") from None
        seeds.append((x, y))
    svg = render_svg(g, vals, X, w, seeds, e.state_vars, title=f"{e.id} ({source})")
    rep = count_ovals(g, vals, w, e.state_vars)
    if args.out:
        Path(args.out).write_text(svg, encoding="utf-8", newline="\n")
    data = {"id": e.id, "source": source, "bindings": {k: format_rational(v) for k, v in sorted(vals.items())},
            "window": [format_rational(v) for v in (w.xmin, w.xmax, w.ymin, w.ymax)],
            "ovals": rep.to_dict(), "svg": None if args.out else svg, "out": args.out}
    if ctx.json:
        ctx.emit("plot", data, "")
    elif args.out:
        print(f"{e.id}: {rep.bounded} bounded, {rep.open} open component(s) at resolution {rep.resolution}"
              f" ({'stable' if rep.stable else 'unstable'} under doubling); wrote {args.out}")
    else:
        sys.stdout.write(svg)
    return 0


# --- repair -------------------------------------------------------------------------

def cmd_repair(ctx: _Ctx) -> int:
    from .discovery import NoCurveFound, repair
    from .errata import erratum_from_report

    args = ctx.args
    e = ctx.entry(args.id)
    try:
        g = e.curve_polynomial()
    except ParseError:
        g = None
    try:
        rep = repair(e.system(), g, args.degree or e.stated_degree, e.stated_cofactor_polynomial(), e.id)
    except NoCurveFound as exc:
        data = {"id": e.id, "status": "no-curve-found", "message": str(exc),
                "erratum": ctx.errata[e.id].to_mapping() if e.id in ctx.errata else None}
        text = f"{e.id}: no curve found - {exc}"
        if e.id in ctx.errata:
            text += f"\ncommitted erratum ({ctx.errata[e.id].kind}): {ctx.errata[e.id].reasoning}"
        ctx.emit("repair", data, text)
        return 1
    if rep.status == "verified":
        data = {"id": e.id, "status": "verified", "cofactor": print_polynomial(rep.cofactor),
                "curve_diffs": [], "system_diffs": []}
        ctx.emit("repair", data, f"{e.id}: verified as printed, K = {data['cofactor']}")
        return 0
    er = erratum_from_report(rep)
    data = {"id": e.id, "status": rep.status, "kernel_dimension": rep.kernel_dimension, **er.to_mapping()}
    data["id"] = e.id
    lines = [f"{e.id}: {rep.status}, K = {er.cofactor}"]
    if er.curve_diffs:
        lines.append(f"{len(er.curve_diffs)} coefficient difference(s) (monomial: printed -> certified):")
        lines += [f"  {m}: {old} -> {new}" for m, old, new in er.curve_diffs]
    for name, old, new in er.system_diffs:
        lines.append(f"system {name}: {old}  ->  {new}")
    lines.append(f"certified curve: {er.curve}")
    if er.reasoning:
        lines.append(er.reasoning)
    ctx.emit("repair", data, "\n".join(lines))
    return 0


# --- catalog --------------------------------------------------------------------------

def cmd_catalog(ctx: _Ctx) -> int:
    args = ctx.args
    if args.action == "list":
        rows = [{"id": e.id, "section": e.section, "state_vars": list(e.state_vars), "degree": e.stated_degree,
                 "cofactor": e.stated_cofactor, "genus": e.stated_genus, "trust": e.trust,
                 "erratum": e.id in ctx.errata} for e in ctx.entries]
        lines = [f"{'id':<12} {'sec':<4} {'deg':>3} {'genus':>5}  {'cofactor':<8} {'trust':<19} erratum"]
        for r in rows:
            lines.append(f"{r['id']:<12} {r['section']:<4} {r['degree']:>3} {str(r['genus']):>5}  "
                         f"{r['cofactor'] or '-':<8} {r['trust']:<19} {'yes' if r['erratum'] else ''}".rstrip())
        ctx.emit("catalog", {"action": "list", "entries": rows}, "\n".join(lines))
        return 0
    if args.action == "show":
        if not args.target:
            raise UsageError("catalog show needs an id")
        e = ctx.entry(args.target)
        d = e.to_mapping()
        d["erratum"] = ctx.errata[e.id].to_mapping() if e.id in ctx.errata else None
        lines = [f"{k}: {v}" for k, v in e.to_mapping().items()]
        if d["erratum"]:
            er = ctx.errata[e.id]
            lines.append(f"erratum ({er.kind}): cofactor {er.cofactor}")
            lines.append(f"  corrected curve: {er.curve}")
        ctx.emit("catalog", {"action": "show", "entry": d}, "\n".join(lines))
        return 0
    if args.action == "export":
        if not args.target:
            raise UsageError("catalog export needs a directory")
        paths = export_catalog(args.target)
        ctx.emit("catalog", {"action": "export", "files": [str(p) for p in paths]},
                 "\n".join(f"wrote {p}" for p in paths))
        return 0
    raise UsageError(f"unknown catalog action {args.action!r}")  # pragma: no cover


# --- parser ---------------------------------------------------------------------------

def _cap(text: str) -> tuple[str, int]:
    try:
        name, value = text.split("=")
        return name, int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"caps are written name=int, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a structured JSON document")
    common.add_argument("--timings", action="store_true", help="include wall-clock times (not reproducible)")
    common.add_argument("--catalog", metavar="FILE", help="use a catalog file instead of the built-in one")

    params = argparse.ArgumentParser(add_help=False)
    for name in ("q", "p", "a"):
        params.add_argument(f"--{name}", type=_rat, metavar="R", help=f"value for the parameter {name}")

    parser = argparse.ArgumentParser(prog="darboux", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="exact invariance check of catalog entries")
    p.add_argument("ids", nargs="*")
    p.add_argument("--all", action="store_true")
    p.add_argument("--errata", action="store_true", help="check the committed corrections instead of the printed text")
    p.add_argument("--certificate", metavar="FILE", help="re-check a certificate file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("discover", parents=[common, params], help="invariant curves of a given degree")
    p.add_argument("system", help="catalog id or YAML file with system_p, system_q, state_vars")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--cofactor", help="cofactor expression (default n*y)")
    p.add_argument("--no-qh", action="store_true", help="use the full degree box")
    p.add_argument("--cap", type=_cap, action="append", metavar="NAME=INT", help="parameter degree cap")
    p.add_argument("--sweep", action="store_true", help="try small affine cofactors if the hinted one fails")
    p.add_argument("--out", metavar="FILE", help="write the certificates to FILE")
    p.set_defaults(func=cmd_discover)

    p = sub.add_parser("eliminate", parents=[common], help="rational (b, c) with a degree-n curve")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--parameter", default="q")
    p.add_argument("--grid-only", action="store_true", help="scan grid points instead of eliminating")
    p.add_argument("--grid", help="'default' (integers -2..2) or b:c,b:c,...")
    p.add_argument("--no-qh", action="store_true")
    p.set_defaults(func=cmd_eliminate)

    p = sub.add_parser("genus", parents=[common, params], help="geometric genus and oval bound")
    p.add_argument("id")
    p.add_argument("--verbatim", action="store_true", help="use the printed curve even if an erratum exists")
    p.add_argument("--sweep-q", type=_rat, nargs="+", metavar="R", help="report the genus at several q")
    p.add_argument("--max-depth", type=int, default=24)
    p.add_argument("--check", action="store_true", help="exit 1 if the genus differs from the stated one")
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("plot", parents=[common, params], help="SVG of the real curve and trajectories")
    p.add_argument("id")
    p.add_argument("--window", metavar="XMIN,XMAX,YMIN,YMAX")
    p.add_argument("--resolution", type=int, default=512)
    p.add_argument("--seed", action="append", metavar="X,Y", help="trajectory seed point (repeatable)")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--verbatim", action="store_true")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("repair", parents=[common], help="certify or replace a printed entry")
    p.add_argument("id")
    p.add_argument("--degree", type=int)
    p.set_defaults(func=cmd_repair)

    p = sub.add_parser("catalog", parents=[common], help="list, show or export the fixtures")
    p.add_argument("action", choices=("list", "show", "export"))
    p.add_argument("target", nargs="?", help="entry id (show) or directory (export)")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    ctx = _Ctx(args)
    try:
        return args.func(ctx)
    except UsageError as exc:
        print(f"darboux: error: {exc}", file=sys.stderr)
        return 2
    except (CatalogSchemaError, ParseError, OSError) as exc:
        print(f"darboux: error: {exc}", file=sys.stderr)
        return 2
    except ChecksumMismatch as exc:
        print(f"darboux: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
