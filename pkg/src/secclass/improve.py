"""What-if search: smallest changes that reach a target class.

The search enumerates the 25 (protection, connectivity) states, keeps
the ones whose class at the assessment's impact is at or better than
the target, and turns each into a concrete plan: which currently
unsatisfied criteria must become satisfied to reach that protection
level at that connectivity, plus any connectivity reduction.  States
that would *increase* connectivity are not improvements and are never
proposed.

Every candidate plan is verified by actually applying it to a copy of
the assessment and re-classifying, so returned plans are sound even
against custom (non-monotone) tables.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .catalog import CriteriaCatalog
from .connectivity import ConnectivityRules
from .engine import ClassificationResult, classify_component
from .levels import (
    AnswerStatus,
    ConnectivityLevel,
    ConnectivityProvenance,
    ExposureLevel,
    ProtectionLevel,
    SecurityClass,
)
from .model import ComponentAssessment, ConnectivitySelection
from .tables import LookupTables

STATUS_PLANS = "plans"
STATUS_ALREADY_AT_TARGET = "already_at_target"
STATUS_UNREACHABLE = "unreachable"


@dataclass(frozen=True)
class ImprovementPlan:
    """One executable route to the target class.

    Levels record what re-classification actually produced after
    applying the plan, not just the enumerated state.
    """

    criteria_to_satisfy: tuple[str, ...]
    connectivity_change: tuple[ConnectivityLevel, ConnectivityLevel] | None
    protection: ProtectionLevel
    connectivity: ConnectivityLevel
    exposure: ExposureLevel
    security_class: SecurityClass

    @property
    def criteria_count(self) -> int:
        return len(self.criteria_to_satisfy)

    @property
    def connectivity_reduction(self) -> int:
        if self.connectivity_change is None:
            return 0
        frm, to = self.connectivity_change
        return frm.rank - to.rank

    def to_doc(self) -> dict:
        change = None
        if self.connectivity_change is not None:
            frm, to = self.connectivity_change
            change = {"from": frm.value, "to": to.value, "reduction": self.connectivity_reduction}
        return {
            "criteria_to_satisfy": list(self.criteria_to_satisfy),
            "criteria_count": self.criteria_count,
            "connectivity_change": change,
            "protection": self.protection.value,
            "connectivity": self.connectivity.value,
            "exposure": self.exposure.value,
            "class": self.security_class.value,
        }


@dataclass(frozen=True)
class ImprovementOutcome:
    """Search result: plans, or why there are none."""

    status: str
    target: SecurityClass
    current: ClassificationResult
    plans: tuple[ImprovementPlan, ...]
    note: str | None = None
    best_achievable: SecurityClass | None = None

    def to_doc(self) -> dict:
        return {
            "status": self.status,
            "target": self.target.value,
            "current": self.current.to_doc(),
            "plans": [p.to_doc() for p in self.plans],
            "note": self.note,
            "best_achievable": self.best_achievable.value if self.best_achievable else None,
        }


def gap_criteria(
    catalog: CriteriaCatalog,
    assessment: ComponentAssessment,
    protection: ProtectionLevel,
    connectivity: ConnectivityLevel,
) -> tuple[str, ...]:
    """Unsatisfied criteria that must flip to reach ``protection`` while
    operating at ``connectivity``."""
    answers = {a.criterion_id: a for a in assessment.answers}
    return tuple(
        sorted(
            c.id
            for c in catalog.applicable_criteria(assessment.component_type)
            if c.active_at(connectivity)
            and c.required_from_level <= protection
            and answers[c.id].status is AnswerStatus.UNSATISFIED
        )
    )


def apply_plan(
    assessment: ComponentAssessment,
    criteria_to_satisfy: tuple[str, ...] | list[str],
    connectivity: ConnectivityLevel | None = None,
) -> ComponentAssessment:
    """A copy of the assessment with the plan's changes applied."""
    to_flip = set(criteria_to_satisfy)
    answers = tuple(
        replace(a, status=AnswerStatus.SATISFIED) if a.criterion_id in to_flip else a
        for a in assessment.answers
    )
    patched = replace(assessment, answers=answers)
    if connectivity is not None:
        patched = replace(
            patched,
            connectivity=ConnectivitySelection(
                level=connectivity, provenance=ConnectivityProvenance.USER_OVERRIDE
            ),
        )
    return patched


def improvement_search(
    tables: LookupTables,
    catalog: CriteriaCatalog,
    assessment: ComponentAssessment,
    target: SecurityClass,
    rules: ConnectivityRules | None = None,
) -> ImprovementOutcome:
    """Plans that bring the component to ``target`` or better.

    Plans are sorted by (number of criteria changes, connectivity
    reduction) ascending, with lexicographic criterion ids as the final
    tie-break for reproducible output.
    """
    current = classify_component(tables, catalog, assessment, rules)
    if current.security_class.at_or_better_than(target):
        return ImprovementOutcome(
            status=STATUS_ALREADY_AT_TARGET,
            target=target,
            current=current,
            plans=(),
            note=(
                f"already at class {current.security_class.value}, which is at or "
                f"better than the target {target.value}"
            ),
        )

    plans: list[ImprovementPlan] = []
    seen: set[tuple[tuple[str, ...], ConnectivityLevel]] = set()
    best: SecurityClass | None = None
    reachable = [c for c in ConnectivityLevel if c <= current.connectivity]
    for protection in ProtectionLevel:
        for connectivity in reachable:
            criteria = gap_criteria(catalog, assessment, protection, connectivity)
            key = (criteria, connectivity)
            if key in seen:
                continue
            seen.add(key)
            candidate = apply_plan(assessment, criteria, connectivity)
            achieved = classify_component(tables, catalog, candidate, rules)
            if best is None or achieved.security_class < best:
                best = achieved.security_class
            if achieved.security_class.worse_than(target):
                continue
            change = None
            if connectivity != current.connectivity:
                change = (current.connectivity, connectivity)
            plans.append(
                ImprovementPlan(
                    criteria_to_satisfy=criteria,
                    connectivity_change=change,
                    protection=achieved.protection,
                    connectivity=achieved.connectivity,
                    exposure=achieved.exposure,
                    security_class=achieved.security_class,
                )
            )

    plans.sort(
        key=lambda p: (
            p.criteria_count,
            p.connectivity_reduction,
            p.criteria_to_satisfy,
            p.connectivity.rank,
        )
    )
    if not plans:
        assert best is not None
        return ImprovementOutcome(
            status=STATUS_UNREACHABLE,
            target=target,
            current=current,
            plans=(),
            note=(
                f"target {target.value} is not reachable at impact "
                f"{assessment.impact.value} under these tables; best achievable "
                f"is {best.value}"
            ),
            best_achievable=best,
        )
    return ImprovementOutcome(
        status=STATUS_PLANS, target=target, current=current, plans=tuple(plans)
    )
