"""Wire payloads and human-readable reports for classification results.

``build_compute_doc`` is the single source of the compute payload shape;
the REST service, the CLI ``--json`` output and the JSON export all emit
exactly this document (canonically serialized), which is what makes
their outputs byte-identical for identical inputs.
"""
from __future__ import annotations

from typing import Callable

from .engine import SystemClassification
from .levels import (
    ConnectivityLevel,
    ExposureLevel,
    ImpactLevel,
    ProtectionLevel,
)
from .model import SystemRecord
from .tables import LookupTables

HIGHLIGHT = "**[{}]**"


def build_compute_doc(record: SystemRecord, outcome: SystemClassification) -> dict:
    """The canonical compute payload for a classified system."""
    by_id = {c.id: c for c in record.components}
    components = []
    for result in outcome.results:
        component = by_id[result.component_id]
        doc = result.to_doc()
        doc["name"] = component.name
        doc["component_type"] = component.component_type
        components.append(doc)
    return {
        "system_id": outcome.system_id,
        "system_name": outcome.system_name,
        "system_class": outcome.system_class.value,
        "components": components,
        "input_hash": outcome.input_hash,
        "tables_origin": outcome.tables_origin,
        "catalog_version": outcome.catalog_version,
    }


def _cell_fact(trace: tuple[dict, ...], table: str) -> dict:
    return next(f for f in trace if f.get("table") == table)


def _matrix_markdown(
    title: str,
    corner: str,
    row_labels: list[str],
    col_labels: list[str],
    cell: Callable[[str, str], str],
    highlight: tuple[str, str],
) -> list[str]:
    lines = [f"#### {title}", ""]
    lines.append("| " + " | ".join([corner] + col_labels) + " |")
    lines.append("|" + "---|" * (len(col_labels) + 1))
    for row in row_labels:
        cells = []
        for col in col_labels:
            value = cell(row, col)
            if (row, col) == highlight:
                value = HIGHLIGHT.format(value)
            cells.append(value)
        lines.append("| " + " | ".join([f"**{row}**"] + cells) + " |")
    lines.append("")
    return lines


def render_markdown(
    record: SystemRecord, outcome: SystemClassification, tables: LookupTables
) -> str:
    """Assessment report: per-component derivation with both lookup
    tables shown and the chosen cell of each highlighted."""
    lines = [
        f"# Security classification: {record.name}",
        "",
        f"System class: **{outcome.system_class.value}** "
        f"(worst of {len(outcome.results)} component(s))",
        "",
        f"- tables: {outcome.tables_origin}",
        f"- catalog: {outcome.catalog_version}",
        f"- input hash: `{outcome.input_hash}`",
        "",
        "| Component | Type | Protection | Connectivity | Exposure | Impact | Class | Confidence |",
        "|---|---|---|---|---|---|---|---|",
    ]
    by_id = {c.id: c for c in record.components}
    for result in outcome.results:
        component = by_id[result.component_id]
        lines.append(
            f"| {component.name} | {component.component_type} | {result.protection.value} "
            f"| {result.connectivity.value} | {result.exposure.value} | {result.impact.value} "
            f"| **{result.security_class.value}** | {result.confidence:.6g} |"
        )
    lines.append("")

    for result in outcome.results:
        component = by_id[result.component_id]
        lines += [f"## {component.name}", ""]
        exposure_fact = _cell_fact(result.trace, "exposure")
        class_fact = _cell_fact(result.trace, "class")
        protection_fact = next(f for f in result.trace if f["step"] == "protection")
        connectivity_fact = next(f for f in result.trace if f["step"] == "connectivity")

        lines.append(
            f"- connectivity {result.connectivity.value} ({connectivity_fact['provenance']})"
        )
        if protection_fact["blocking_criteria"]:
            lines.append(
                f"- protection {result.protection.value}; "
                f"{protection_fact['blocking_level']} blocked by: "
                + ", ".join(protection_fact["blocking_criteria"])
            )
        else:
            lines.append(f"- protection {result.protection.value} (nothing blocking above)")
        if protection_fact["waived_by_connectivity"]:
            lines.append(
                "- waived at this connectivity: "
                + ", ".join(protection_fact["waived_by_connectivity"])
            )
        lines.append(
            f"- class {result.security_class.value} at impact {result.impact.value}, "
            f"exposure {result.exposure.value}; confidence {result.confidence:.6g}"
        )
        lines.append("")

        lines += _matrix_markdown(
            "Exposure lookup (protection x connectivity)",
            "P \\ C",
            [p.value for p in ProtectionLevel],
            [c.value for c in ConnectivityLevel],
            lambda r, c: tables.exposure_at(ProtectionLevel(r), ConnectivityLevel(c)).value,
            (exposure_fact["row"], exposure_fact["column"]),
        )
        lines += _matrix_markdown(
            "Class lookup (impact x exposure)",
            "Impact \\ E",
            [i.value for i in ImpactLevel],
            [e.value for e in ExposureLevel],
            lambda r, c: tables.class_at(ImpactLevel(r), ExposureLevel(c)).value,
            (class_fact["row"], class_fact["column"]),
        )
    return "\n".join(lines)
