"""The two 5x5 lookup tables and their validation.

An exposure table maps (protection, connectivity) to an exposure level;
a class table maps (impact, exposure) to a security class.  The shipped
defaults live in ``data/default_tables.yaml`` and both tables can be
overridden wholesale with a custom document of the same shape.

Tables are immutable; customisation builds a new value.  Validation
never raises: it returns a report listing totality violations (always
errors) and monotonicity violations (warnings by default, errors under
``strict`` - custom domains may legitimately bend monotonicity, but CI
setups usually want to refuse that).
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from importlib import resources
from types import MappingProxyType
from typing import Mapping

import yaml

from .errors import IssueCollector, ModelValidationError, SchemaVersionError, ValidationIssue
from .levels import (
    ConnectivityLevel,
    ExposureLevel,
    ImpactLevel,
    ProtectionLevel,
    SecurityClass,
)

TABLES_SCHEMA_VERSION = 1

ORIGIN_DEFAULT = "default"
ORIGIN_CUSTOM = "custom"


@dataclass(frozen=True)
class LookupTables:
    """Both lookup tables, total over their 5x5 domains."""

    exposure: Mapping[tuple[ProtectionLevel, ConnectivityLevel], ExposureLevel]
    security: Mapping[tuple[ImpactLevel, ExposureLevel], SecurityClass]
    origin: str = ORIGIN_CUSTOM

    def __post_init__(self):
        missing = [
            f"exposure[{p.value},{c.value}]"
            for p in ProtectionLevel
            for c in ConnectivityLevel
            if (p, c) not in self.exposure
        ] + [
            f"class[{i.value},{e.value}]"
            for i in ImpactLevel
            for e in ExposureLevel
            if (i, e) not in self.security
        ]
        if missing:
            raise ValueError(f"lookup tables not total; missing cells: {missing}")
        object.__setattr__(self, "exposure", MappingProxyType(dict(self.exposure)))
        object.__setattr__(self, "security", MappingProxyType(dict(self.security)))

    def exposure_at(self, p: ProtectionLevel, c: ConnectivityLevel) -> ExposureLevel:
        return self.exposure[(p, c)]

    def class_at(self, i: ImpactLevel, e: ExposureLevel) -> SecurityClass:
        return self.security[(i, e)]

    def to_doc(self) -> dict:
        """Plain-data document form, shared by the YAML file and the wire."""
        return {
            "schema_version": TABLES_SCHEMA_VERSION,
            "origin": self.origin,
            "exposure": {
                p.value: {c.value: self.exposure[(p, c)].value for c in ConnectivityLevel}
                for p in ProtectionLevel
            },
            "class": {
                i.value: {e.value: self.security[(i, e)].value for e in ExposureLevel}
                for i in ImpactLevel
            },
        }


def lookup_exposure(
    tables: LookupTables, p: ProtectionLevel, c: ConnectivityLevel
) -> ExposureLevel:
    """Exposure cell for (protection, connectivity). Pure."""
    return tables.exposure_at(p, c)


def lookup_class(
    tables: LookupTables, i: ImpactLevel, e: ExposureLevel
) -> SecurityClass:
    """Class cell for (impact, exposure). Pure."""
    return tables.class_at(i, e)


@dataclass(frozen=True)
class TableFinding:
    """One validation finding against a tables document."""

    severity: str  # "error" | "warning"
    code: str
    message: str

    def to_doc(self) -> dict:
        return {"severity": self.severity, "code": self.code, "message": self.message}


STRICT = "strict"
WARN = "warn"


@dataclass(frozen=True)
class ValidationReport:
    """All findings for one tables document."""

    findings: tuple[TableFinding, ...]

    @property
    def errors(self) -> list[TableFinding]:
        return [f for f in self.findings if f.severity == "error"]

    @property
    def warnings(self) -> list[TableFinding]:
        return [f for f in self.findings if f.severity == "warning"]

    @property
    def ok(self) -> bool:
        return not self.errors

    def to_doc(self) -> dict:
        return {"findings": [f.to_doc() for f in self.findings]}


def _row_findings(doc, table_name, row_keys, col_keys, row_cls, col_cls, val_cls):
    """Totality/value findings for one table in a raw document."""
    findings: list[TableFinding] = []
    table = doc.get(table_name)
    if not isinstance(table, dict):
        findings.append(
            TableFinding("error", "missing-table", f"table {table_name!r} is missing")
        )
        return findings, {}
    cells: dict[tuple, object] = {}
    for rk in table:
        if rk not in row_keys:
            findings.append(
                TableFinding("error", "unknown-key", f"{table_name}: unknown row {rk!r}")
            )
    for rk in row_keys:
        row = table.get(rk)
        if row is None:
            findings.append(
                TableFinding("error", "missing-cell", f"{table_name}[{rk}]: row missing")
            )
            continue
        for ck in row:
            if ck not in col_keys:
                findings.append(
                    TableFinding(
                        "error", "unknown-key", f"{table_name}[{rk}]: unknown column {ck!r}"
                    )
                )
        for ck in col_keys:
            if ck not in row:
                findings.append(
                    TableFinding(
                        "error", "missing-cell", f"{table_name}[{rk},{ck}]: cell missing"
                    )
                )
                continue
            try:
                cells[(row_cls(rk), col_cls(ck))] = val_cls(str(row[ck]))
            except ValueError:
                findings.append(
                    TableFinding(
                        "error",
                        "invalid-level",
                        f"{table_name}[{rk},{ck}]: invalid value {row[ck]!r}",
                    )
                )
    return findings, cells


def _monotonicity_findings(exposure, security, severity: str) -> list[TableFinding]:
    """Findings for cells that break the expected ordinal directions.

    Expected: exposure never rises with stronger protection, never falls
    with more connectivity; the class never improves with higher impact
    or higher exposure.
    """
    findings: list[TableFinding] = []
    ps, cs = list(ProtectionLevel), list(ConnectivityLevel)
    imps, es = list(ImpactLevel), list(ExposureLevel)

    def warn(code: str, message: str) -> None:
        findings.append(TableFinding(severity, code, message))

    for c in cs:
        for lo, hi in zip(ps, ps[1:]):
            if (lo, c) in exposure and (hi, c) in exposure:
                if exposure[(hi, c)] > exposure[(lo, c)]:
                    warn(
                        "non-monotonic-protection",
                        f"exposure[{hi.value},{c.value}]={exposure[(hi, c)].value} exceeds "
                        f"exposure[{lo.value},{c.value}]={exposure[(lo, c)].value}; stronger "
                        "protection should not raise exposure",
                    )
    for p in ps:
        for lo, hi in zip(cs, cs[1:]):
            if (p, lo) in exposure and (p, hi) in exposure:
                if exposure[(p, hi)] < exposure[(p, lo)]:
                    warn(
                        "non-monotonic-connectivity",
                        f"exposure[{p.value},{hi.value}]={exposure[(p, hi)].value} is below "
                        f"exposure[{p.value},{lo.value}]={exposure[(p, lo)].value}; more "
                        "connectivity should not lower exposure",
                    )
    for e in es:
        for lo, hi in zip(imps, imps[1:]):
            if (lo, e) in security and (hi, e) in security:
                if security[(hi, e)] < security[(lo, e)]:
                    warn(
                        "non-monotonic-impact",
                        f"class[{hi.value},{e.value}]={security[(hi, e)].value} is better than "
                        f"class[{lo.value},{e.value}]={security[(lo, e)].value}; higher impact "
                        "should not improve the class",
                    )
    for i in imps:
        for lo, hi in zip(es, es[1:]):
            if (i, lo) in security and (i, hi) in security:
                if security[(i, hi)] < security[(i, lo)]:
                    warn(
                        "non-monotonic-exposure",
                        f"class[{i.value},{hi.value}]={security[(i, hi)].value} is better than "
                        f"class[{i.value},{lo.value}]={security[(i, lo)].value}; higher exposure "
                        "should not improve the class",
                    )
    return findings


def validate_tables(tables_or_doc, strictness: str = WARN) -> ValidationReport:
    """Validate a LookupTables value or raw document. Never raises.

    Totality violations are always errors.  Monotonicity violations are
    warnings under ``warn`` and errors under ``strict``.
    """
    if isinstance(tables_or_doc, LookupTables):
        doc = tables_or_doc.to_doc()
    else:
        doc = tables_or_doc
    findings, exposure = _row_findings(
        doc,
        "exposure",
        [p.value for p in ProtectionLevel],
        [c.value for c in ConnectivityLevel],
        ProtectionLevel,
        ConnectivityLevel,
        ExposureLevel,
    )
    more, security = _row_findings(
        doc,
        "class",
        [i.value for i in ImpactLevel],
        [e.value for e in ExposureLevel],
        ImpactLevel,
        ExposureLevel,
        SecurityClass,
    )
    findings.extend(more)
    monotonic_severity = "error" if strictness == STRICT else "warning"
    findings.extend(_monotonicity_findings(exposure, security, monotonic_severity))
    return ValidationReport(tuple(findings))


def tables_from_doc(doc: dict, strictness: str = WARN) -> LookupTables:
    """Build LookupTables from a document, enforcing validation.

    Totality/value problems always reject the document; monotonicity
    findings reject it only under ``strict``.
    """
    report = validate_tables(doc, strictness)
    if not report.ok:
        collector = IssueCollector()
        for f in report.errors:
            collector.add("tables", f.code, f.message)
        raise ModelValidationError(collector.issues)
    exposure = {
        (p, c): ExposureLevel(doc["exposure"][p.value][c.value])
        for p in ProtectionLevel
        for c in ConnectivityLevel
    }
    security = {
        (i, e): SecurityClass(doc["class"][i.value][e.value])
        for i in ImpactLevel
        for e in ExposureLevel
    }
    origin = doc.get("origin", ORIGIN_CUSTOM)
    if origin not in (ORIGIN_DEFAULT, ORIGIN_CUSTOM):
        origin = ORIGIN_CUSTOM
    return LookupTables(exposure=exposure, security=security, origin=origin)


def serialize_tables(tables: LookupTables) -> str:
    """Human-editable key-value matrix form; the shipped default resource
    is byte-identical to this serialization."""
    doc = tables.to_doc()
    out = io.StringIO()
    out.write(f"schema_version: {doc['schema_version']}\n")
    out.write(f"origin: {doc['origin']}\n")
    for table_name in ("exposure", "class"):
        out.write(f"{table_name}:\n")
        for row_key, row in doc[table_name].items():
            cells = ", ".join(f"{ck}: {cv}" for ck, cv in row.items())
            out.write(f"  {row_key}: {{{cells}}}\n")
    return out.getvalue()


def parse_tables(text: str, strictness: str = WARN) -> LookupTables:
    """Parse the serialized text document form."""
    doc = yaml.safe_load(text)
    if not isinstance(doc, dict):
        raise ModelValidationError(
            [ValidationIssue("tables", "format", "tables document must be a mapping")]
        )
    found = doc.get("schema_version")
    if found != TABLES_SCHEMA_VERSION:
        raise SchemaVersionError(found=found, supported=TABLES_SCHEMA_VERSION)
    return tables_from_doc(doc, strictness)


def default_tables() -> LookupTables:
    """The shipped default tables, loaded from the embedded resource."""
    return parse_tables(default_tables_text())


def default_tables_text() -> str:
    """Raw bytes of the embedded default-tables resource, as text."""
    return (
        resources.files("secclass").joinpath("data/default_tables.yaml").read_text("utf-8")
    )


def reset_tables() -> LookupTables:
    """Discard any customisation: identical to :func:`default_tables`."""
    return default_tables()
