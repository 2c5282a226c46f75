"""Terminal front door: scaffold, compute, gate, improve, serve, export.

Exit codes are a contract:
    0  success / gate passed
    1  gate failed (class worse than the required threshold)
    2  usage or validation error (bad flags, incomplete assessment,
       malformed documents)
"""
from __future__ import annotations

import functools
import sys
from pathlib import Path

import click
import yaml

from . import __version__
from .catalog import default_catalog, parse_catalog
from .engine import classify_system
from .errors import SecclassError
from .improve import (
    STATUS_ALREADY_AT_TARGET,
    STATUS_UNREACHABLE,
    improvement_search,
)
from .jsonutil import canonical_json
from .levels import SecurityClass
from .model import SYSTEM_SCHEMA_VERSION, new_id
from .report import build_compute_doc, render_markdown
from .service import ServiceConfig, create_app, default_answers_doc
from .store import FileStore, load_system_file
from .tables import default_tables, parse_tables

CLASS_CHOICES = click.Choice([c.value for c in SecurityClass])

GUIDE = """\
# System assessment document.
# Fill the fields in this order; `secclass compute` does the rest.
#   Step 1   Define the system          -> name, description
#   Step 2   List its components        -> components[].name, component_type
#   Step 3   Describe their features    -> components[].description, features
#   Step 4   Set the impact level       -> components[].impact
#            (Insignificant | Minor | Moderate | Major | Catastrophic)
#   Step 5   Communication mechanisms   -> components[].communication_mechanisms
#   Step 6   Network scope              -> components[].network_scope
#            (isolated | home_area | wide_area)
#   Step 7   Connectivity level         -> components[].connectivity
#            (leave null to derive it from steps 5-6; set
#             {level: C1..C5, provenance: user_override} to pin it)
#   Step 8   Answer protection criteria -> components[].answers
#            (satisfied | unsatisfied | not_applicable, belief 0..1, weight >= 0)
#   Step 9   Exposure level             -> computed from steps 7-8
#   Step 10  Security class             -> computed from steps 4 and 9
"""


def _fail(message: str, code: int = 2) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except SecclassError as exc:
            _fail(str(exc))

    return wrapper


def _load_tables(path: str | None):
    if path is None:
        return default_tables()
    return parse_tables(Path(path).read_text("utf-8"))


def _load_catalog(path: str | None):
    if path is None:
        return default_catalog()
    return parse_catalog(Path(path).read_text("utf-8"))


@click.group()
@click.version_option(version=__version__, prog_name="secclass")
def main():
    """Security classification: assess components, compute classes, gate CI."""


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--name", default="my-system", help="System name.", show_default=True)
@click.option(
    "--components", "component_count", default=1, show_default=True, help="Number of component stubs."
)
@click.option(
    "--component-type",
    default="IoT device",
    show_default=True,
    help="Component type for the stubs.",
)
@click.option("--force", is_flag=True, help="Overwrite an existing file.")
@handle_errors
def init(path, name, component_count, component_type, force):
    """Scaffold a new system document with component stubs."""
    target = Path(path)
    if target.exists() and not force:
        _fail(f"{path} already exists (use --force to overwrite)")
    if component_count < 1:
        _fail("--components must be at least 1")
    catalog = default_catalog()
    if catalog.component_type(component_type) is None:
        known = ", ".join(t.name for t in catalog.component_types)
        _fail(f"unknown component type {component_type!r}; expected one of: {known}")
    components = [
        {
            "id": f"cmp-{i:04d}",
            "name": f"component-{i}",
            "component_type": component_type,
            "description": "",
            "features": "",
            "impact": None,
            "communication_mechanisms": [],
            "network_scope": None,
            "connectivity": None,
            "answers": default_answers_doc(catalog, component_type),
        }
        for i in range(1, component_count + 1)
    ]
    doc = {
        "schema_version": SYSTEM_SCHEMA_VERSION,
        "id": new_id("sys"),
        "name": name,
        "description": "",
        "version": 0,
        "components": components,
        "last_results": None,
    }
    target.write_text(GUIDE + yaml.safe_dump(doc, sort_keys=True), "utf-8")
    click.echo(f"wrote {path} ({component_count} component stub(s))")


def _classify_file(system_file, tables_path, catalog_path):
    record = load_system_file(system_file)
    tables = _load_tables(tables_path)
    catalog = _load_catalog(catalog_path)
    outcome = classify_system(tables, catalog, record)
    return record, tables, catalog, outcome


_TABLE_HEADER = (
    f"{'component':<24} {'type':<16} {'prot':<5} {'conn':<5} "
    f"{'expo':<5} {'impact':<14} {'class':<5} confidence"
)


def _print_results(record, outcome, trace: bool) -> None:
    by_id = {c.id: c for c in record.components}
    click.echo(_TABLE_HEADER)
    click.echo("-" * len(_TABLE_HEADER))
    for result in outcome.results:
        component = by_id[result.component_id]
        click.echo(
            f"{component.name:<24} {component.component_type:<16} "
            f"{result.protection.value:<5} {result.connectivity.value:<5} "
            f"{result.exposure.value:<5} {result.impact.value:<14} "
            f"{result.security_class.value:<5} {result.confidence:.6g}"
        )
    click.echo(f"\nsystem class: {outcome.system_class.value}")
    if trace:
        click.echo("\nderivation trace:")
        for result in outcome.results:
            click.echo(f"  {by_id[result.component_id].name}:")
            for fact in result.trace:
                click.echo(f"    {canonical_json(fact)}")


@main.command()
@click.argument("system_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--tables", "tables_path", type=click.Path(exists=True), help="Lookup-table override file.")
@click.option("--catalog", "catalog_path", type=click.Path(exists=True), help="Criteria catalog override file.")
@click.option("--trace", is_flag=True, help="Print derivation facts.")
@click.option("--json", "as_json", is_flag=True, help="Emit the canonical JSON compute payload.")
@handle_errors
def compute(system_file, tables_path, catalog_path, trace, as_json):
    """Classify every component and print the system class."""
    record, _, _, outcome = _classify_file(system_file, tables_path, catalog_path)
    if as_json:
        click.echo(canonical_json(build_compute_doc(record, outcome)), nl=False)
        return
    _print_results(record, outcome, trace)


@main.command()
@click.argument("system_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--min-class", required=True, type=CLASS_CHOICES, help="Worst acceptable class.")
@click.option(
    "--per-component",
    is_flag=True,
    help="Gate every component individually instead of the system class.",
)
@click.option("--tables", "tables_path", type=click.Path(exists=True))
@click.option("--catalog", "catalog_path", type=click.Path(exists=True))
@handle_errors
def gate(system_file, min_class, per_component, tables_path, catalog_path):
    """CI gate: succeed only if the class meets the threshold."""
    record, _, _, outcome = _classify_file(system_file, tables_path, catalog_path)
    threshold = SecurityClass(min_class)
    by_id = {c.id: c for c in record.components}
    if per_component:
        failing = [r for r in outcome.results if not r.security_class.at_or_better_than(threshold)]
    else:
        failing = (
            []
            if outcome.system_class.at_or_better_than(threshold)
            else [r for r in outcome.results if not r.security_class.at_or_better_than(threshold)]
        )
    if not failing:
        click.echo(
            f"gate passed: class {outcome.system_class.value} meets required {threshold.value}"
        )
        return
    click.echo(
        f"gate FAILED: system class {outcome.system_class.value} "
        f"(required {threshold.value} or better)",
        err=True,
    )
    for result in failing:
        click.echo(
            f"- {by_id[result.component_id].name}: class {result.security_class.value} "
            f"(protection {result.protection.value}, exposure {result.exposure.value}, "
            f"impact {result.impact.value})",
            err=True,
        )
    sys.exit(1)


@main.command()
@click.argument("system_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--target", required=True, type=CLASS_CHOICES, help="Class to reach.")
@click.option("--component", "component_ref", help="Component id or name (default: all).")
@click.option("--max-plans", default=5, show_default=True, help="Plans to print per component.")
@click.option("--tables", "tables_path", type=click.Path(exists=True))
@click.option("--catalog", "catalog_path", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True, help="Emit plans as canonical JSON.")
@handle_errors
def improve(system_file, target, component_ref, max_plans, tables_path, catalog_path, as_json):
    """Find the smallest changes that reach the target class."""
    record = load_system_file(system_file)
    tables = _load_tables(tables_path)
    catalog = _load_catalog(catalog_path)
    goal = SecurityClass(target)
    components = list(record.components)
    if component_ref:
        components = [c for c in components if component_ref in (c.id, c.name)]
        if not components:
            _fail(f"component not found: {component_ref}")
    if not components:
        _fail(f"system {record.id!r} has no components")

    outcomes = []
    for component in components:
        outcome = improvement_search(tables, catalog, component, goal)
        outcomes.append((component, outcome))

    if as_json:
        docs = []
        for component, outcome in outcomes:
            doc = outcome.to_doc()
            doc["component_id"] = component.id
            doc["name"] = component.name
            docs.append(doc)
        click.echo(
            canonical_json({"system_id": record.id, "target": goal.value, "components": docs}),
            nl=False,
        )
        return

    for component, outcome in outcomes:
        current = outcome.current
        click.echo(
            f"{component.name}: class {current.security_class.value} "
            f"(protection {current.protection.value}, connectivity {current.connectivity.value}), "
            f"target {goal.value}"
        )
        if outcome.status == STATUS_ALREADY_AT_TARGET:
            click.echo(f"  {outcome.note}; nothing to do")
            continue
        if outcome.status == STATUS_UNREACHABLE:
            click.echo(f"  {outcome.note}")
            continue
        for i, plan in enumerate(outcome.plans[:max_plans], start=1):
            changes = []
            if plan.criteria_to_satisfy:
                changes.append("satisfy " + ", ".join(plan.criteria_to_satisfy))
            if plan.connectivity_change:
                frm, to = plan.connectivity_change
                changes.append(f"reduce connectivity {frm.value} -> {to.value}")
            click.echo(
                f"  plan {i}: reach ({plan.protection.value}, {plan.connectivity.value}) "
                f"=> exposure {plan.exposure.value}, class {plan.security_class.value}"
            )
            click.echo(f"          {'; '.join(changes) or 'no changes needed'}")
        remaining = len(outcome.plans) - max_plans
        if remaining > 0:
            click.echo(f"  ... {remaining} more plan(s); use --max-plans to see them")


@main.command()
@click.argument("system_file", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["markdown", "json"]),
    default="markdown",
    show_default=True,
)
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Write to a file instead of stdout.")
@click.option("--tables", "tables_path", type=click.Path(exists=True))
@click.option("--catalog", "catalog_path", type=click.Path(exists=True))
@handle_errors
def export(system_file, fmt, output, tables_path, catalog_path):
    """Full assessment report with highlighted lookup-table cells."""
    record, tables, _, outcome = _classify_file(system_file, tables_path, catalog_path)
    if fmt == "json":
        rendered = canonical_json(build_compute_doc(record, outcome))
    else:
        rendered = render_markdown(record, outcome, tables)
    if output:
        Path(output).write_text(rendered + "\n", "utf-8")
        click.echo(f"wrote {output}")
    else:
        click.echo(rendered, nl=(fmt == "markdown"))


@main.command()
@click.option("--store", "store_path", default="./secclass-store", show_default=True)
@click.option("--workspace", default="default", show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8754, show_default=True)
@click.option(
    "--token",
    envvar="SECCLASS_TOKEN",
    default=None,
    help="Require this bearer token on every request (env: SECCLASS_TOKEN).",
)
@handle_errors
def serve(store_path, workspace, host, port, token):
    """Run the REST service against a store directory."""
    import uvicorn

    app = create_app(
        ServiceConfig(store=FileStore(store_path), workspace=workspace, token=token)
    )
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
