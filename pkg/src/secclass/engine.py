"""Classification pipeline: protection, connectivity, exposure, class.

Everything here is pure: identical (tables, catalog, assessment) inputs
produce identical results and traces.  The class is fully table-driven;
beliefs and weights feed only the confidence reported alongside it.

The confidence aggregation is a deliberately simple weighted arithmetic
mean over the answered (non-N/A) criteria.  It is a documented project
default, not an implementation of any particular belief calculus.
"""
from __future__ import annotations

from dataclasses import dataclass

from .catalog import CriteriaCatalog
from .connectivity import ConnectivityRules, derive_connectivity
from .errors import EmptySystemError, IncompleteAssessmentError, IssueCollector
from .jsonutil import content_hash
from .levels import (
    AnswerStatus,
    ConnectivityLevel,
    ConnectivityProvenance,
    ExposureLevel,
    ImpactLevel,
    ProtectionLevel,
    SecurityClass,
)
from .model import ComponentAssessment, CriterionAnswer, SystemRecord
from .tables import LookupTables, lookup_class, lookup_exposure


@dataclass(frozen=True)
class ClassificationResult:
    """Final levels for one component plus the derivation trace.

    The trace is an ordered list of facts: the connectivity choice, the
    criteria that gated the protection level, and the exact table cells
    read for exposure and class.
    """

    component_id: str
    protection: ProtectionLevel
    connectivity: ConnectivityLevel
    exposure: ExposureLevel
    impact: ImpactLevel
    security_class: SecurityClass
    confidence: float
    trace: tuple[dict, ...]

    def to_doc(self) -> dict:
        return {
            "component_id": self.component_id,
            "protection": self.protection.value,
            "connectivity": self.connectivity.value,
            "exposure": self.exposure.value,
            "impact": self.impact.value,
            "class": self.security_class.value,
            "confidence": self.confidence,
            "trace": [dict(f) for f in self.trace],
        }


@dataclass(frozen=True)
class SystemClassification:
    """Per-component results plus the aggregated system class."""

    system_id: str
    system_name: str
    system_class: SecurityClass
    results: tuple[ClassificationResult, ...]
    input_hash: str
    tables_origin: str
    catalog_version: str


# --------------------------------------------------------------------------
# protection


def evaluate_protection(
    catalog: CriteriaCatalog,
    assessment: ComponentAssessment,
    connectivity: ConnectivityLevel,
) -> tuple[ProtectionLevel, dict]:
    """Highest level whose full (cumulative) requirement set is met.

    A criterion gates a level when it applies to the component type, is
    active at the given connectivity, and its answer is unsatisfied.
    Returns the level and a trace fact describing what gated it.
    """
    applicable = catalog.applicable_criteria(assessment.component_type)
    answers = {a.criterion_id: a for a in assessment.answers}

    unknown = sorted(set(answers) - {c.id for c in catalog.criteria})
    if unknown:
        issues = IssueCollector()
        for cid in unknown:
            issues.add(
                "answers",
                "unknown-criterion",
                f"answer references unknown criterion {cid!r}",
            )
        issues.raise_if_any()

    missing = sorted(c.id for c in applicable if c.id not in answers)
    if missing:
        raise IncompleteAssessmentError(
            step=8,
            message="answer the protection criteria (step 8); missing: "
            + ", ".join(missing),
            missing=missing,
        )

    active = [c for c in applicable if c.active_at(connectivity)]
    waived = sorted(c.id for c in applicable if not c.active_at(connectivity))
    not_applicable = sorted(
        a.criterion_id
        for a in assessment.answers
        if a.status is AnswerStatus.NOT_APPLICABLE
    )

    level = ProtectionLevel.P1
    blocking_level: ProtectionLevel | None = None
    blocking: list[str] = []
    for candidate in (
        ProtectionLevel.P2,
        ProtectionLevel.P3,
        ProtectionLevel.P4,
        ProtectionLevel.P5,
    ):
        required = [c for c in active if c.required_from_level <= candidate]
        unsatisfied = sorted(
            c.id for c in required if answers[c.id].status is AnswerStatus.UNSATISFIED
        )
        if unsatisfied:
            blocking_level = candidate
            blocking = unsatisfied
            break
        level = candidate

    fact = {
        "step": "protection",
        "value": level.value,
        "blocking_level": blocking_level.value if blocking_level else None,
        "blocking_criteria": blocking,
        "waived_by_connectivity": waived,
        "not_applicable": not_applicable,
    }
    return level, fact


# --------------------------------------------------------------------------
# confidence


def aggregate_confidence(answers: list[CriterionAnswer] | tuple[CriterionAnswer, ...]) -> tuple[float, str | None]:
    """Weighted mean of beliefs over answered (non-N/A) criteria.

    Returns (confidence, note).  A zero total weight yields a neutral
    confidence of 1 with a note saying so.
    """
    issues = IssueCollector()
    for i, a in enumerate(answers):
        if not 0.0 <= a.belief <= 1.0:
            issues.add(f"answers[{i}].belief", "range", "belief must be within [0, 1]")
        if a.weight < 0.0:
            issues.add(f"answers[{i}].weight", "range", "weight must be >= 0")
    issues.raise_if_any()

    counted = [a for a in answers if a.status is not AnswerStatus.NOT_APPLICABLE]
    total_weight = sum(a.weight for a in counted)
    if total_weight == 0:
        return 1.0, "all answer weights are zero; confidence defaults to 1"
    return sum(a.weight * a.belief for a in counted) / total_weight, None


# --------------------------------------------------------------------------
# component classification


def resolve_connectivity(
    assessment: ComponentAssessment,
    rules: ConnectivityRules | None = None,
) -> tuple[ConnectivityLevel, dict]:
    """The assessment's connectivity: explicit selection, else derived."""
    if assessment.connectivity is not None:
        sel = assessment.connectivity
        fact = {
            "step": "connectivity",
            "value": sel.level.value,
            "provenance": sel.provenance.value,
            "notes": [],
        }
        return sel.level, fact
    if assessment.network_scope is None:
        raise IncompleteAssessmentError(
            step=6,
            message="describe the network scope (step 6) or set a connectivity level",
        )
    suggestion = derive_connectivity(
        assessment.network_scope, assessment.communication_mechanisms, rules
    )
    fact = {
        "step": "connectivity",
        "value": suggestion.level.value,
        "provenance": ConnectivityProvenance.DERIVED.value,
        "notes": list(suggestion.notes),
    }
    return suggestion.level, fact


def classify_component(
    tables: LookupTables,
    catalog: CriteriaCatalog,
    assessment: ComponentAssessment,
    rules: ConnectivityRules | None = None,
) -> ClassificationResult:
    """Run the full pipeline for one component.

    Incomplete assessments raise IncompleteAssessmentError naming the
    first missing capture step.
    """
    if not assessment.name:
        raise IncompleteAssessmentError(step=2, message="name the component (step 2)")
    if catalog.component_type(assessment.component_type) is None:
        raise IncompleteAssessmentError(
            step=2,
            message=f"unknown component type {assessment.component_type!r} (step 2)",
        )
    if assessment.impact is None:
        raise IncompleteAssessmentError(
            step=4, message="set the impact level (step 4)"
        )

    connectivity, connectivity_fact = resolve_connectivity(assessment, rules)
    protection, protection_fact = evaluate_protection(catalog, assessment, connectivity)

    exposure = lookup_exposure(tables, protection, connectivity)
    security_class = lookup_class(tables, assessment.impact, exposure)
    confidence, confidence_note = aggregate_confidence(assessment.answers)

    trace = (
        connectivity_fact,
        protection_fact,
        {
            "step": "exposure",
            "table": "exposure",
            "row": protection.value,
            "column": connectivity.value,
            "value": exposure.value,
            "tables_origin": tables.origin,
        },
        {
            "step": "class",
            "table": "class",
            "row": assessment.impact.value,
            "column": exposure.value,
            "value": security_class.value,
            "tables_origin": tables.origin,
        },
        {
            "step": "confidence",
            "value": confidence,
            **({"note": confidence_note} if confidence_note else {}),
        },
    )
    return ClassificationResult(
        component_id=assessment.id,
        protection=protection,
        connectivity=connectivity,
        exposure=exposure,
        impact=assessment.impact,
        security_class=security_class,
        confidence=confidence,
        trace=trace,
    )


# --------------------------------------------------------------------------
# system level


def aggregate_system_class(results: list[ClassificationResult]) -> SecurityClass:
    """Worst component class; a system is as weak as its weakest part."""
    if not results:
        raise EmptySystemError("<none>")
    return SecurityClass.worst([r.security_class for r in results])


def compute_input_hash(
    tables: LookupTables,
    catalog: CriteriaCatalog,
    components: tuple[ComponentAssessment, ...],
) -> str:
    """Hash of everything a classification result depends on."""
    return content_hash(
        {
            "tables": tables.to_doc(),
            "catalog": catalog.to_doc(),
            "components": sorted(
                (c.assessment_inputs() for c in components), key=lambda d: d["id"]
            ),
        }
    )


def classify_system(
    tables: LookupTables,
    catalog: CriteriaCatalog,
    record: SystemRecord,
    rules: ConnectivityRules | None = None,
) -> SystemClassification:
    """Classify every component and aggregate the system class."""
    if not record.components:
        raise EmptySystemError(record.id)
    results = tuple(
        classify_component(tables, catalog, component, rules)
        for component in record.components
    )
    return SystemClassification(
        system_id=record.id,
        system_name=record.name,
        system_class=aggregate_system_class(list(results)),
        results=results,
        input_hash=compute_input_hash(tables, catalog, record.components),
        tables_origin=tables.origin,
        catalog_version=catalog.version,
    )
