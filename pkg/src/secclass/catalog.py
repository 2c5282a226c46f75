"""Protection-criteria catalog: criteria, component types, loading.

The catalog drives protection-level evaluation: each criterion names
the lowest protection level that requires it, which component types it
applies to, and optionally a connectivity threshold below which it does
not gate the level.  Requirement sets are cumulative.

The shipped default catalog is an explicitly replaceable starting
point; deployments load their own via the same document format.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

import yaml

from .errors import IssueCollector, SchemaVersionError
from .levels import ConnectivityLevel, ProtectionLevel

CATALOG_SCHEMA_VERSION = 1

BUILT_IN_COMPONENT_TYPES = ("IoT device", "Hub", "Backend System")


@dataclass(frozen=True)
class Criterion:
    """One security functionality that can gate the protection level."""

    id: str
    title: str
    help: str
    required_from_level: ProtectionLevel
    applies_to: tuple[str, ...] = ()  # empty = all component types
    min_connectivity: ConnectivityLevel | None = None

    def applies_to_type(self, component_type: str) -> bool:
        return not self.applies_to or component_type in self.applies_to

    def active_at(self, connectivity: ConnectivityLevel) -> bool:
        """Whether the criterion gates protection at this connectivity."""
        return self.min_connectivity is None or self.min_connectivity <= connectivity

    def to_doc(self) -> dict:
        doc = {
            "id": self.id,
            "title": self.title,
            "help": self.help,
            "required_from_level": self.required_from_level.value,
            "applies_to": list(self.applies_to),
        }
        if self.min_connectivity is not None:
            doc["min_connectivity"] = self.min_connectivity.value
        return doc


@dataclass(frozen=True)
class ComponentType:
    """A category of component; determines criteria applicability defaults."""

    name: str
    built_in: bool = False
    default_na_criteria: tuple[str, ...] = ()

    def to_doc(self) -> dict:
        return {
            "name": self.name,
            "built_in": self.built_in,
            "default_na_criteria": list(self.default_na_criteria),
        }


@dataclass(frozen=True)
class CriteriaCatalog:
    """A versioned criteria catalog plus its component types."""

    version: str
    criteria: tuple[Criterion, ...]
    component_types: tuple[ComponentType, ...] = field(default=())

    def __post_init__(self):
        issues = IssueCollector()
        if not self.criteria:
            issues.add("criteria", "non-empty", "catalog has no criteria")
        seen: set[str] = set()
        for i, c in enumerate(self.criteria):
            if c.id in seen:
                issues.add(f"criteria[{i}].id", "unique", f"duplicate criterion id {c.id!r}")
            seen.add(c.id)
        type_names: set[str] = set()
        for i, t in enumerate(self.component_types):
            if t.name in type_names:
                issues.add(
                    f"component_types[{i}].name", "unique", f"duplicate type {t.name!r}"
                )
            type_names.add(t.name)
            for na in t.default_na_criteria:
                if na not in seen:
                    issues.add(
                        f"component_types[{i}].default_na_criteria",
                        "unknown-criterion",
                        f"default N/A id {na!r} does not exist in the catalog",
                    )
        built_ins = {t.name for t in self.component_types if t.built_in}
        if built_ins != set(BUILT_IN_COMPONENT_TYPES):
            issues.add(
                "component_types",
                "built-ins",
                "built-in component types must be exactly "
                f"{', '.join(BUILT_IN_COMPONENT_TYPES)}",
            )
        covered = {c.required_from_level for c in self.criteria}
        for level in (ProtectionLevel.P2, ProtectionLevel.P3, ProtectionLevel.P4, ProtectionLevel.P5):
            if level not in covered:
                issues.add(
                    "criteria",
                    "level-coverage",
                    f"no criterion is required from level {level.value}",
                )
        issues.raise_if_any()

    def criterion(self, criterion_id: str) -> Criterion | None:
        return next((c for c in self.criteria if c.id == criterion_id), None)

    def component_type(self, name: str) -> ComponentType | None:
        return next((t for t in self.component_types if t.name == name), None)

    def applicable_criteria(self, component_type: str) -> list[Criterion]:
        """Criteria an assessment of this component type must answer."""
        return [c for c in self.criteria if c.applies_to_type(component_type)]

    def to_doc(self) -> dict:
        return {
            "schema_version": CATALOG_SCHEMA_VERSION,
            "version": self.version,
            "component_types": [t.to_doc() for t in self.component_types],
            "criteria": [c.to_doc() for c in self.criteria],
        }


def catalog_from_doc(doc: dict) -> CriteriaCatalog:
    """Build a catalog from its document form, validating field values."""
    issues = IssueCollector()
    if not isinstance(doc, dict):
        issues.add("catalog", "format", "catalog document must be a mapping")
        issues.raise_if_any()
    found = doc.get("schema_version", CATALOG_SCHEMA_VERSION)
    if found > CATALOG_SCHEMA_VERSION:
        raise SchemaVersionError(found=found, supported=CATALOG_SCHEMA_VERSION)

    types: list[ComponentType] = []
    for i, raw in enumerate(doc.get("component_types", [])):
        types.append(
            ComponentType(
                name=str(raw.get("name", "")),
                built_in=bool(raw.get("built_in", False)),
                default_na_criteria=tuple(raw.get("default_na_criteria", []) or ()),
            )
        )
        if not types[-1].name:
            issues.add(f"component_types[{i}].name", "required", "type name is required")

    criteria: list[Criterion] = []
    for i, raw in enumerate(doc.get("criteria", [])):
        path = f"criteria[{i}]"
        cid = str(raw.get("id", "")).strip()
        if not cid:
            issues.add(f"{path}.id", "required", "criterion id is required")
        try:
            required = ProtectionLevel.parse(str(raw.get("required_from_level", "")))
        except ValueError as exc:
            issues.add(f"{path}.required_from_level", "enum", str(exc))
            continue
        min_conn = None
        if raw.get("min_connectivity") is not None:
            try:
                min_conn = ConnectivityLevel.parse(str(raw["min_connectivity"]))
            except ValueError as exc:
                issues.add(f"{path}.min_connectivity", "enum", str(exc))
                continue
        criteria.append(
            Criterion(
                id=cid,
                title=str(raw.get("title", cid)),
                help=str(raw.get("help", "")).strip(),
                required_from_level=required,
                applies_to=tuple(raw.get("applies_to", []) or ()),
                min_connectivity=min_conn,
            )
        )
    issues.raise_if_any()
    return CriteriaCatalog(
        version=str(doc.get("version", "unversioned")),
        criteria=tuple(criteria),
        component_types=tuple(types),
    )


def parse_catalog(text: str) -> CriteriaCatalog:
    return catalog_from_doc(yaml.safe_load(text))


def serialize_catalog(catalog: CriteriaCatalog) -> str:
    return yaml.safe_dump(catalog.to_doc(), sort_keys=False, allow_unicode=True)


def default_catalog() -> CriteriaCatalog:
    """The shipped default catalog, loaded from the embedded resource."""
    text = resources.files("secclass").joinpath("data/default_catalog.yaml").read_text("utf-8")
    return parse_catalog(text)
