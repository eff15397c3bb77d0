"""Built-in fixtures: the printed systems and curves, plus committed errata.

The catalog is a YAML document::

    schema_version: 1
    entries:
    - id: 2-i
      section: '2'
      state_vars: [z, y]
      ...

Entries hold the curve text as transcribed; nothing is corrected in place.
Corrections live in a separate errata document keyed by entry id.
"""

from __future__ import annotations

import hashlib
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Mapping, Sequence

import yaml

from .exprio import ParseError, parse_polynomial
from .field import PolyVectorField
from .poly import DEFAULT_CONTEXT, Polynomial, VariableContext

__all__ = [
    "CatalogEntry",
    "Erratum",
    "CatalogSchemaError",
    "ChecksumMismatch",
    "UnknownEntry",
    "SCHEMA_VERSION",
    "TRUST_LEVELS",
    "loads_catalog",
    "dumps_catalog",
    "load_catalog",
    "save_catalog",
    "builtin_catalog",
    "builtin_errata",
    "loads_errata",
    "dumps_errata",
    "get_entry",
    "export_catalog",
    "fixture_checksum",
    "certificate_mapping",
    "dumps_certificates",
    "loads_certificates",
]

SCHEMA_VERSION = 1
TRUST_LEVELS = ("verbatim-trusted", "verbatim-untrusted")

# sha256 of the shipped fixture files, in the order catalog.yaml, errata.yaml;
# refreshed with `python3 -m darboux.catalog --rehash` after a deliberate edit
EMBEDDED_CHECKSUM = "4b59b7de53c5181270a3a6c0185ea6bfc253f1bd031e62136e41ba80ecb0757c"


class CatalogSchemaError(ValueError):
    """Raised with the path of the offending field, e.g. ``entries[3].curve``."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class ChecksumMismatch(RuntimeError):
    pass


class UnknownEntry(KeyError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    section: str
    state_vars: tuple[str, str]
    system_p: str
    system_q: str
    curve: str
    stated_degree: int
    stated_cofactor: str | None
    stated_genus: int | None
    trust: str
    bindings: Mapping[str, str] = field(default_factory=dict)
    notes: str = ""

    @property
    def trusted(self) -> bool:
        return self.trust == "verbatim-trusted"

    def system(self, ctx: VariableContext = DEFAULT_CONTEXT) -> PolyVectorField:
        return PolyVectorField(parse_polynomial(self.system_p, ctx), parse_polynomial(self.system_q, ctx),
                               tuple(self.state_vars))

    def curve_polynomial(self, ctx: VariableContext = DEFAULT_CONTEXT) -> Polynomial:
        return parse_polynomial(self.curve, ctx)

    def stated_cofactor_polynomial(self, ctx: VariableContext = DEFAULT_CONTEXT) -> Polynomial | None:
        if self.stated_cofactor is None:
            return None
        return parse_polynomial(self.stated_cofactor, ctx)

    def parameter_values(self, overrides: Mapping[str, Any] | None = None) -> dict[str, Fraction]:
        """Default numeric parameter values, updated by ``overrides``."""
        vals = {k: Fraction(v) for k, v in self.bindings.items()}
        for k, v in (overrides or {}).items():
            if v is not None:
                vals[k] = Fraction(v)
        return vals

    def to_mapping(self) -> dict:
        d = asdict(self)
        d["state_vars"] = list(self.state_vars)
        d["bindings"] = dict(self.bindings)
        return d


@dataclass(frozen=True)
class Erratum:
    """A committed correction to one catalog entry.

    ``kind`` is ``replaced`` (new curve, same system), ``system-corrected``
    (same curve, new system) or ``manual`` (both, with written reasoning).
    ``curve_diffs`` lists ``(monomial, printed, corrected)`` text triples.
    """

    id: str
    kind: str
    system_p: str
    system_q: str
    curve: str
    cofactor: str
    curve_diffs: tuple[tuple[str, str, str], ...] = ()
    system_diffs: tuple[tuple[str, str, str], ...] = ()
    reasoning: str = ""

    def system(self, state_vars: Sequence[str], ctx: VariableContext = DEFAULT_CONTEXT) -> PolyVectorField:
        return PolyVectorField(parse_polynomial(self.system_p, ctx), parse_polynomial(self.system_q, ctx),
                               tuple(state_vars))

    def to_mapping(self) -> dict:
        d = asdict(self)
        d["curve_diffs"] = [list(t) for t in self.curve_diffs]
        d["system_diffs"] = [list(t) for t in self.system_diffs]
        return d


_ENTRY_FIELDS = {
    "id": str,
    "section": str,
    "state_vars": list,
    "system_p": str,
    "system_q": str,
    "curve": str,
    "stated_degree": int,
    "stated_cofactor": (str, type(None)),
    "stated_genus": (int, type(None)),
    "trust": str,
    "bindings": dict,
    "notes": str,
}
_OPTIONAL = {"bindings": {}, "notes": "", "stated_cofactor": None, "stated_genus": None,
             "state_vars": ["z", "y"], "trust": "verbatim-trusted"}


def _check_type(path: str, value, typ) -> None:
    if typ is int and isinstance(value, bool):
        raise CatalogSchemaError(path, "expected an integer")
    if not isinstance(value, typ):
        names = typ.__name__ if isinstance(typ, type) else " or ".join(t.__name__ for t in typ)
        raise CatalogSchemaError(path, f"expected {names}, got {type(value).__name__}")


def _entry_from_mapping(raw, path: str, ctx: VariableContext) -> CatalogEntry:
    if not isinstance(raw, dict):
        raise CatalogSchemaError(path, "entry must be a mapping")
    unknown = set(raw) - set(_ENTRY_FIELDS)
    if unknown:
        raise CatalogSchemaError(f"{path}.{sorted(unknown)[0]}", "unknown field")
    vals = {}
    for name, typ in _ENTRY_FIELDS.items():
        if name not in raw:
            if name in _OPTIONAL:
                vals[name] = _OPTIONAL[name]
                continue
            raise CatalogSchemaError(f"{path}.{name}", "missing required field")
        _check_type(f"{path}.{name}", raw[name], typ)
        vals[name] = raw[name]
    sv = vals["state_vars"]
    if len(sv) != 2 or not all(isinstance(v, str) and v in ctx for v in sv) or sv[0] == sv[1]:
        raise CatalogSchemaError(f"{path}.state_vars", "need two distinct known variable names")
    if vals["trust"] not in TRUST_LEVELS:
        raise CatalogSchemaError(f"{path}.trust", f"must be one of {', '.join(TRUST_LEVELS)}")
    if vals["stated_degree"] < 0:
        raise CatalogSchemaError(f"{path}.stated_degree", "must be non-negative")
    bindings = {}
    for k, v in vals["bindings"].items():
        if not isinstance(k, str) or k not in ctx:
            raise CatalogSchemaError(f"{path}.bindings.{k}", "unknown parameter")
        try:
            bindings[k] = str(Fraction(str(v)))
        except (ValueError, ZeroDivisionError):
            raise CatalogSchemaError(f"{path}.bindings.{k}", f"not a rational: {v!r}") from None
    vals["bindings"] = bindings
    vals["state_vars"] = tuple(sv)
    for name in ("system_p", "system_q", "stated_cofactor"):
        if vals[name] is not None:
            try:
                parse_polynomial(vals[name], ctx)
            except ParseError as exc:
                raise CatalogSchemaError(f"{path}.{name}", str(exc)) from None
    if vals["trust"] == "verbatim-trusted":
        try:
            parse_polynomial(vals["curve"], ctx)
        except ParseError as exc:
            raise CatalogSchemaError(f"{path}.curve", f"{exc} (mark the entry verbatim-untrusted)") from None
    return CatalogEntry(**vals)


def _document(text: str, kind: str) -> list:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise CatalogSchemaError("$", f"not a valid YAML document: {exc}") from None
    if doc is None:
        return []
    if not isinstance(doc, dict):
        raise CatalogSchemaError("$", "top level must be a mapping")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise CatalogSchemaError("$.schema_version", f"expected {SCHEMA_VERSION}, got {version!r}")
    items = doc.get(kind, [])
    if items is None:
        return []
    if not isinstance(items, list):
        raise CatalogSchemaError(f"$.{kind}", "must be a list")
    return items


def loads_catalog(text: str, ctx: VariableContext = DEFAULT_CONTEXT) -> list[CatalogEntry]:
    entries = [_entry_from_mapping(raw, f"entries[{i}]", ctx) for i, raw in enumerate(_document(text, "entries"))]
    seen = set()
    for i, e in enumerate(entries):
        if e.id in seen:
            raise CatalogSchemaError(f"entries[{i}].id", f"duplicate id {e.id!r}")
        seen.add(e.id)
    return entries


def _dump(doc: dict) -> str:
    return yaml.safe_dump(doc, sort_keys=False, width=100000, allow_unicode=True)


def dumps_catalog(entries: Sequence[CatalogEntry]) -> str:
    return _dump({"schema_version": SCHEMA_VERSION, "entries": [e.to_mapping() for e in entries]})


def load_catalog(path: str | Path, ctx: VariableContext = DEFAULT_CONTEXT) -> list[CatalogEntry]:
    return loads_catalog(Path(path).read_text(encoding="utf-8"), ctx)


def save_catalog(entries: Sequence[CatalogEntry], path: str | Path) -> None:
    Path(path).write_text(dumps_catalog(entries), encoding="utf-8", newline="\n")


_ERRATUM_KINDS = ("replaced", "system-corrected", "manual")


def loads_errata(text: str, ctx: VariableContext = DEFAULT_CONTEXT) -> dict[str, Erratum]:
    out: dict[str, Erratum] = {}
    for i, raw in enumerate(_document(text, "errata")):
        path = f"errata[{i}]"
        if not isinstance(raw, dict):
            raise CatalogSchemaError(path, "erratum must be a mapping")
        for name in ("id", "kind", "system_p", "system_q", "curve", "cofactor"):
            if name not in raw:
                raise CatalogSchemaError(f"{path}.{name}", "missing required field")
            _check_type(f"{path}.{name}", raw[name], str)
        if raw["kind"] not in _ERRATUM_KINDS:
            raise CatalogSchemaError(f"{path}.kind", f"must be one of {', '.join(_ERRATUM_KINDS)}")
        for name in ("system_p", "system_q", "curve", "cofactor"):
            try:
                parse_polynomial(raw[name], ctx)
            except ParseError as exc:
                raise CatalogSchemaError(f"{path}.{name}", str(exc)) from None
        if raw["id"] in out:
            raise CatalogSchemaError(f"{path}.id", f"duplicate id {raw['id']!r}")
        out[raw["id"]] = Erratum(
            raw["id"], raw["kind"], raw["system_p"], raw["system_q"], raw["curve"], raw["cofactor"],
            tuple(tuple(t) for t in raw.get("curve_diffs") or ()),
            tuple(tuple(t) for t in raw.get("system_diffs") or ()),
            raw.get("reasoning", ""),
        )
    return out


def dumps_errata(errata: Mapping[str, Erratum] | Sequence[Erratum]) -> str:
    items = errata.values() if isinstance(errata, Mapping) else errata
    return _dump({"schema_version": SCHEMA_VERSION, "errata": [e.to_mapping() for e in items]})


def certificate_mapping(cert, entry_id: str = "", residual_checked: bool = False) -> dict:
    """Catalog-style record for a :class:`~darboux.field.CurveCertificate`."""
    from .exprio import print_polynomial

    return {
        "id": entry_id,
        "state_vars": list(cert.system.state_vars),
        "system_p": print_polynomial(cert.system.P),
        "system_q": print_polynomial(cert.system.Q),
        "curve": print_polynomial(cert.g),
        "stated_degree": cert.degree,
        "cofactor": print_polynomial(cert.K),
        "residual_checked": bool(residual_checked),
    }


def dumps_certificates(records: Sequence[dict]) -> str:
    return _dump({"schema_version": SCHEMA_VERSION, "certificates": list(records)})


def loads_certificates(text: str, ctx: VariableContext = DEFAULT_CONTEXT) -> list:
    """Parse a certificate document back into ``(id, CurveCertificate, residual_checked)``."""
    from .field import CurveCertificate

    out = []
    for i, raw in enumerate(_document(text, "certificates")):
        path = f"certificates[{i}]"
        if not isinstance(raw, dict):
            raise CatalogSchemaError(path, "certificate must be a mapping")
        polys = {}
        for name in ("system_p", "system_q", "curve", "cofactor"):
            if name not in raw:
                raise CatalogSchemaError(f"{path}.{name}", "missing required field")
            try:
                polys[name] = parse_polynomial(str(raw[name]), ctx)
            except ParseError as exc:
                raise CatalogSchemaError(f"{path}.{name}", str(exc)) from None
        sv = tuple(raw.get("state_vars", ("z", "y")))
        X = PolyVectorField(polys["system_p"], polys["system_q"], sv)
        try:
            cert = CurveCertificate(X, polys["curve"], polys["cofactor"], int(raw.get("stated_degree", -1)))
        except ValueError as exc:
            raise CatalogSchemaError(f"{path}.stated_degree", str(exc)) from None
        out.append((str(raw.get("id", "")), cert, bool(raw.get("residual_checked", False))))
    return out


def _fixture_bytes(name: str) -> bytes:
    return resources.files("darboux").joinpath("data", name).read_bytes()


def fixture_checksum(catalog: bytes | None = None, errata: bytes | None = None) -> str:
    h = hashlib.sha256()
    for blob in (catalog if catalog is not None else _fixture_bytes("catalog.yaml"),
                 errata if errata is not None else _fixture_bytes("errata.yaml")):
        h.update(hashlib.sha256(blob).digest())
    return h.hexdigest()


def _verified_fixture(name: str, check: bool) -> str:
    if check:
        actual = fixture_checksum()
        if actual != EMBEDDED_CHECKSUM:
            raise ChecksumMismatch(f"built-in fixtures were modified (sha256 {actual[:12]}..., "
                                   f"expected {EMBEDDED_CHECKSUM[:12]}...)")
    return _fixture_bytes(name).decode("utf-8")


def builtin_catalog(check: bool = True) -> list[CatalogEntry]:
    return loads_catalog(_verified_fixture("catalog.yaml", check))


def builtin_errata(check: bool = True) -> dict[str, Erratum]:
    return loads_errata(_verified_fixture("errata.yaml", check))


def get_entry(entry_id: str, entries: Sequence[CatalogEntry] | None = None) -> CatalogEntry:
    for e in entries if entries is not None else builtin_catalog():
        if e.id == entry_id:
            return e
    raise UnknownEntry(entry_id)


def export_catalog(directory: str | Path) -> list[Path]:
    """Write the built-in fixtures, byte for byte, into ``directory``."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    builtin_catalog()
    out = []
    for name in ("catalog.yaml", "errata.yaml"):
        p = d / name
        p.write_bytes(_fixture_bytes(name))
        out.append(p)
    return out


if __name__ == "__main__":  # pragma: no cover
    import re
    import sys

    if sys.argv[1:] == ["--rehash"]:
        src = Path(__file__)
        text = src.read_text(encoding="utf-8")
        text = re.sub(r'EMBEDDED_CHECKSUM = "[0-9a-f]*"', f'EMBEDDED_CHECKSUM = "{fixture_checksum()}"', text)
        src.write_text(text, encoding="utf-8")
        print(fixture_checksum())
