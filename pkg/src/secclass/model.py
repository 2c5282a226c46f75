"""Assessment and system records: the captured inputs of an evaluation.

A ``SystemRecord`` is the unit of storage: a named system holding typed
components, each with its assessment inputs (impact, networking facts,
criteria answers, beliefs and weights).  Documents carry an explicit
``schema_version``; older versions are migrated forward on load, newer
ones are refused.
"""
from __future__ import annotations

import uuid
from dataclasses import dataclass, field, replace

from .errors import IssueCollector, SchemaVersionError
from .levels import (
    AnswerStatus,
    ConnectivityLevel,
    ConnectivityProvenance,
    ImpactLevel,
    NetworkScope,
)

SYSTEM_SCHEMA_VERSION = 2


def new_id(prefix: str) -> str:
    return f"{prefix}-{uuid.uuid4().hex[:10]}"


@dataclass(frozen=True)
class CriterionAnswer:
    """One criterion's evaluation plus the assessor's confidence in it."""

    criterion_id: str
    status: AnswerStatus
    belief: float = 1.0
    weight: float = 1.0

    def to_doc(self) -> dict:
        return {
            "criterion_id": self.criterion_id,
            "status": self.status.value,
            "belief": self.belief,
            "weight": self.weight,
        }


@dataclass(frozen=True)
class ConnectivitySelection:
    """A chosen connectivity level and how it was chosen."""

    level: ConnectivityLevel
    provenance: ConnectivityProvenance

    def to_doc(self) -> dict:
        return {"level": self.level.value, "provenance": self.provenance.value}


@dataclass(frozen=True)
class ComponentAssessment:
    """A component and everything captured about it.

    Fields follow the capture order of the guided workflow: identity and
    description first, then impact, then networking facts, then the
    criteria answers.  ``connectivity`` may stay unset; classification
    derives it from scope and mechanisms when absent.
    """

    id: str
    name: str
    component_type: str
    description: str = ""
    features: str = ""
    impact: ImpactLevel | None = None
    communication_mechanisms: tuple[str, ...] = ()
    network_scope: NetworkScope | None = None
    connectivity: ConnectivitySelection | None = None
    answers: tuple[CriterionAnswer, ...] = ()

    def answer_for(self, criterion_id: str) -> CriterionAnswer | None:
        return next((a for a in self.answers if a.criterion_id == criterion_id), None)

    def with_answer(self, answer: CriterionAnswer) -> "ComponentAssessment":
        """Copy with one answer replaced (or appended)."""
        rest = tuple(a for a in self.answers if a.criterion_id != answer.criterion_id)
        return replace(self, answers=rest + (answer,))

    def to_doc(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "component_type": self.component_type,
            "description": self.description,
            "features": self.features,
            "impact": self.impact.value if self.impact else None,
            "communication_mechanisms": list(self.communication_mechanisms),
            "network_scope": self.network_scope.value if self.network_scope else None,
            "connectivity": self.connectivity.to_doc() if self.connectivity else None,
            "answers": [a.to_doc() for a in self.answers],
        }

    def assessment_inputs(self) -> dict:
        """The result-relevant subset, used for staleness hashing.

        Descriptive free text is deliberately excluded: editing prose
        does not invalidate a computed class.
        """
        return {
            "id": self.id,
            "component_type": self.component_type,
            "impact": self.impact.value if self.impact else None,
            "communication_mechanisms": list(self.communication_mechanisms),
            "network_scope": self.network_scope.value if self.network_scope else None,
            "connectivity": self.connectivity.to_doc() if self.connectivity else None,
            "answers": sorted(
                (a.to_doc() for a in self.answers), key=lambda d: d["criterion_id"]
            ),
        }


@dataclass(frozen=True)
class SystemRecord:
    """A stored system: components plus optional cached results."""

    id: str
    name: str
    description: str = ""
    version: int = 0  # optimistic-concurrency version, bumped by the store
    components: tuple[ComponentAssessment, ...] = ()
    last_results: dict | None = None  # {"input_hash": ..., "computed": {...}}

    def component(self, component_id: str) -> ComponentAssessment | None:
        return next((c for c in self.components if c.id == component_id), None)

    def with_component(self, component: ComponentAssessment) -> "SystemRecord":
        ids = [c.id for c in self.components]
        if component.id in ids:
            comps = tuple(
                component if c.id == component.id else c for c in self.components
            )
        else:
            comps = self.components + (component,)
        return replace(self, components=comps)

    def without_component(self, component_id: str) -> "SystemRecord":
        return replace(
            self,
            components=tuple(c for c in self.components if c.id != component_id),
        )

    def to_doc(self) -> dict:
        return {
            "schema_version": SYSTEM_SCHEMA_VERSION,
            "id": self.id,
            "name": self.name,
            "description": self.description,
            "version": self.version,
            "components": [c.to_doc() for c in self.components],
            "last_results": self.last_results,
        }


# --------------------------------------------------------------------------
# document parsing with per-field validation paths


def _parse_answer(raw: dict, path: str, issues: IssueCollector) -> CriterionAnswer | None:
    cid = str(raw.get("criterion_id", "")).strip()
    if not cid:
        issues.add(f"{path}.criterion_id", "required", "criterion_id is required")
        return None
    try:
        status = AnswerStatus(str(raw.get("status", "")))
    except ValueError:
        choices = ", ".join(s.value for s in AnswerStatus)
        issues.add(
            f"{path}.status", "enum", f"invalid status {raw.get('status')!r}; expected one of: {choices}"
        )
        return None
    belief = raw.get("belief", 1.0)
    weight = raw.get("weight", 1.0)
    ok = True
    if not isinstance(belief, (int, float)) or isinstance(belief, bool) or not 0.0 <= belief <= 1.0:
        issues.add(f"{path}.belief", "range", "belief must be a number within [0, 1]")
        ok = False
    if not isinstance(weight, (int, float)) or isinstance(weight, bool) or weight < 0.0:
        issues.add(f"{path}.weight", "range", "weight must be a number >= 0")
        ok = False
    if not ok:
        return None
    return CriterionAnswer(criterion_id=cid, status=status, belief=float(belief), weight=float(weight))


def component_from_doc(raw: dict, path: str, issues: IssueCollector) -> ComponentAssessment | None:
    issues_at_entry = len(issues.issues)
    name = str(raw.get("name", "")).strip()
    if not name:
        issues.add(f"{path}.name", "required", "component name is required")
    ctype = str(raw.get("component_type", "")).strip()
    if not ctype:
        issues.add(f"{path}.component_type", "required", "component_type is required")

    impact = None
    if raw.get("impact") is not None:
        try:
            impact = ImpactLevel.parse(str(raw["impact"]))
        except ValueError as exc:
            issues.add(f"{path}.impact", "enum", str(exc))

    scope = None
    if raw.get("network_scope") is not None:
        try:
            scope = NetworkScope.parse(str(raw["network_scope"]))
        except ValueError as exc:
            issues.add(f"{path}.network_scope", "enum", str(exc))

    connectivity = None
    if raw.get("connectivity") is not None:
        conn_raw = raw["connectivity"]
        if not isinstance(conn_raw, dict):
            issues.add(
                f"{path}.connectivity",
                "format",
                'connectivity must be an object {"level": .., "provenance": ..}',
            )
        else:
            try:
                level = ConnectivityLevel.parse(str(conn_raw.get("level", "")))
                provenance = ConnectivityProvenance(
                    str(conn_raw.get("provenance", ConnectivityProvenance.USER_OVERRIDE.value))
                )
                connectivity = ConnectivitySelection(level=level, provenance=provenance)
            except ValueError as exc:
                issues.add(f"{path}.connectivity", "enum", str(exc))

    answers: list[CriterionAnswer] = []
    seen: set[str] = set()
    for i, answer_raw in enumerate(raw.get("answers", []) or []):
        answer = _parse_answer(answer_raw, f"{path}.answers[{i}]", issues)
        if answer:
            if answer.criterion_id in seen:
                issues.add(
                    f"{path}.answers[{i}].criterion_id",
                    "unique",
                    f"duplicate answer for criterion {answer.criterion_id!r}",
                )
                continue
            seen.add(answer.criterion_id)
            answers.append(answer)

    if len(issues.issues) > issues_at_entry:
        return None
    return ComponentAssessment(
        id=str(raw.get("id") or new_id("cmp")),
        name=name,
        component_type=ctype,
        description=str(raw.get("description", "") or ""),
        features=str(raw.get("features", "") or ""),
        impact=impact,
        communication_mechanisms=tuple(str(m) for m in raw.get("communication_mechanisms", []) or []),
        network_scope=scope,
        connectivity=connectivity,
        answers=tuple(answers),
    )


def _migrate_v1(doc: dict) -> dict:
    """v1 -> v2: connectivity becomes {level, provenance}; answers gain
    explicit belief/weight defaults."""
    doc = dict(doc)
    components = []
    for comp in doc.get("components", []) or []:
        comp = dict(comp)
        conn = comp.get("connectivity")
        if isinstance(conn, str):
            # v1 stored a bare level string, always user-entered
            comp["connectivity"] = {
                "level": conn,
                "provenance": ConnectivityProvenance.USER_OVERRIDE.value,
            }
        answers = []
        for answer in comp.get("answers", []) or []:
            answer = dict(answer)
            answer.setdefault("belief", 1.0)
            answer.setdefault("weight", 1.0)
            answers.append(answer)
        comp["answers"] = answers
        components.append(comp)
    doc["components"] = components
    doc["schema_version"] = 2
    return doc


_MIGRATIONS = {1: _migrate_v1}


def migrate_system_doc(doc: dict) -> dict:
    """Bring a document to the current schema version (forward only)."""
    version = int(doc.get("schema_version", 1))
    if version > SYSTEM_SCHEMA_VERSION:
        raise SchemaVersionError(found=version, supported=SYSTEM_SCHEMA_VERSION)
    while version < SYSTEM_SCHEMA_VERSION:
        doc = _MIGRATIONS[version](doc)
        version = int(doc["schema_version"])
    return doc


def system_from_doc(doc: dict) -> SystemRecord:
    """Parse (and if needed migrate) a system document. Raises
    ModelValidationError with field paths on bad values."""
    issues = IssueCollector()
    if not isinstance(doc, dict):
        issues.add("system", "format", "system document must be a mapping")
        issues.raise_if_any()
    doc = migrate_system_doc(doc)

    name = str(doc.get("name", "")).strip()
    if not name:
        issues.add("name", "required", "system name is required")

    components: list[ComponentAssessment] = []
    seen_ids: set[str] = set()
    seen_names: set[str] = set()
    for i, raw in enumerate(doc.get("components", []) or []):
        comp_issues = IssueCollector()
        comp = component_from_doc(raw, f"components[{i}]", comp_issues)
        issues.issues.extend(comp_issues.issues)
        if comp is None:
            continue
        if comp.id in seen_ids:
            issues.add(f"components[{i}].id", "unique", f"duplicate component id {comp.id!r}")
            continue
        if comp.name in seen_names:
            issues.add(
                f"components[{i}].name", "unique", f"duplicate component name {comp.name!r}"
            )
        seen_ids.add(comp.id)
        seen_names.add(comp.name)
        components.append(comp)

    issues.raise_if_any()
    return SystemRecord(
        id=str(doc.get("id") or new_id("sys")),
        name=name,
        description=str(doc.get("description", "") or ""),
        version=int(doc.get("version", 0)),
        components=tuple(components),
        last_results=doc.get("last_results"),
    )
