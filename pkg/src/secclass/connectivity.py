"""Rule-based connectivity suggestion from captured networking facts.

The mapping from communication mechanisms and network scope to a
connectivity level is configuration, not doctrine: it ships as a
versioned rule file (``data/connectivity_rules.yaml``) that deployments
can replace.  The derived level is a suggestion the user may override;
provenance is recorded either way.
"""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

import yaml

from .errors import IssueCollector
from .levels import ConnectivityLevel, NetworkScope

RULES_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ConnectivityRules:
    """Parsed rule file: scope floors plus mechanism categories."""

    version: str
    scope_floor: dict[NetworkScope, ConnectivityLevel]
    category_levels: dict[str, ConnectivityLevel]
    mechanisms: dict[str, str]
    unknown_category: str

    def category_of(self, tag: str) -> str | None:
        return self.mechanisms.get(normalize_tag(tag))


@dataclass(frozen=True)
class ConnectivitySuggestion:
    """Derived level plus the facts that produced it."""

    level: ConnectivityLevel
    notes: tuple[str, ...]
    unknown_tags: tuple[str, ...]


def normalize_tag(tag: str) -> str:
    return tag.strip().lower().replace(" ", "-").replace("_", "-")


def rules_from_doc(doc: dict) -> ConnectivityRules:
    issues = IssueCollector()
    if not isinstance(doc, dict):
        issues.add("rules", "format", "rule document must be a mapping")
        issues.raise_if_any()

    def parse_level(path: str, raw) -> ConnectivityLevel | None:
        try:
            return ConnectivityLevel.parse(str(raw))
        except ValueError as exc:
            issues.add(path, "enum", str(exc))
            return None

    scope_floor: dict[NetworkScope, ConnectivityLevel] = {}
    for scope in NetworkScope:
        raw = doc.get("scope_floor", {}).get(scope.value)
        if raw is None:
            issues.add(f"scope_floor.{scope.value}", "required", "scope floor missing")
            continue
        level = parse_level(f"scope_floor.{scope.value}", raw)
        if level:
            scope_floor[scope] = level

    category_levels: dict[str, ConnectivityLevel] = {}
    for name, raw in (doc.get("category_levels") or {}).items():
        level = parse_level(f"category_levels.{name}", raw)
        if level:
            category_levels[name] = level

    mechanisms = {
        normalize_tag(str(tag)): str(cat) for tag, cat in (doc.get("mechanisms") or {}).items()
    }
    for tag, cat in mechanisms.items():
        if cat not in category_levels:
            issues.add(f"mechanisms.{tag}", "unknown-category", f"unknown category {cat!r}")

    unknown_category = str(doc.get("unknown_category", ""))
    if unknown_category not in category_levels:
        issues.add("unknown_category", "unknown-category", f"unknown category {unknown_category!r}")

    issues.raise_if_any()
    return ConnectivityRules(
        version=str(doc.get("version", "unversioned")),
        scope_floor=scope_floor,
        category_levels=category_levels,
        mechanisms=mechanisms,
        unknown_category=unknown_category,
    )


def default_rules() -> ConnectivityRules:
    text = (
        resources.files("secclass")
        .joinpath("data/connectivity_rules.yaml")
        .read_text("utf-8")
    )
    return rules_from_doc(yaml.safe_load(text))


def derive_connectivity(
    scope: NetworkScope,
    mechanisms: tuple[str, ...] | list[str],
    rules: ConnectivityRules | None = None,
) -> ConnectivitySuggestion:
    """Suggest a connectivity level from scope and mechanism tags.

    The result is the maximum of the scope floor and every mechanism's
    category level.  Unrecognised tags are rated at the rule file's
    ``unknown_category`` (conservatively high) and reported in the notes.
    """
    rules = rules or default_rules()
    level = rules.scope_floor[scope]
    notes = [f"network scope {scope.value} sets floor {level.value}"]
    unknown: list[str] = []
    for tag in mechanisms:
        category = rules.category_of(tag)
        if category is None:
            unknown.append(tag)
            category = rules.unknown_category
            notes.append(
                f"unknown mechanism {tag!r} rated conservatively as "
                f"{category} ({rules.category_levels[category].value})"
            )
        else:
            notes.append(
                f"mechanism {tag!r} is {category} "
                f"({rules.category_levels[category].value})"
            )
        candidate = rules.category_levels[category]
        if candidate > level:
            level = candidate
    notes.append(f"suggested connectivity {level.value}")
    return ConnectivitySuggestion(level=level, notes=tuple(notes), unknown_tags=tuple(unknown))
