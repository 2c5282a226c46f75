"""Independent oracles and generators used by the test suite.

Everything here re-derives expected behaviour from first principles
(catalog fields, exhaustive enumeration) without calling into the
search/evaluation code paths it is used to check.
"""
from __future__ import annotations

import random
from dataclasses import replace

from secclass import (
    AnswerStatus,
    ComponentAssessment,
    ConnectivityLevel,
    ConnectivityProvenance,
    ConnectivitySelection,
    CriterionAnswer,
    ImpactLevel,
    NetworkScope,
    ProtectionLevel,
    SecurityClass,
    classify_component,
)


def protection_oracle(catalog, assessment, connectivity) -> ProtectionLevel:
    """Brute force over levels: highest level whose whole cumulative
    requirement set is satisfied or N/A."""
    answers = {a.criterion_id: a for a in assessment.answers}
    qualifying = []
    for level in ProtectionLevel:
        required = [
            c
            for c in catalog.criteria
            if c.applies_to_type(assessment.component_type)
            and c.active_at(connectivity)
            and c.required_from_level <= level
        ]
        if all(answers[c.id].status is not AnswerStatus.UNSATISFIED for c in required):
            qualifying.append(level)
    return max(qualifying, key=lambda l: l.rank) if qualifying else ProtectionLevel.P1


def apply_changes(
    assessment: ComponentAssessment,
    to_satisfy: frozenset[str] | set[str],
    connectivity: ConnectivityLevel | None,
) -> ComponentAssessment:
    """Test-local plan application (kept independent of the library's)."""
    answers = tuple(
        CriterionAnswer(a.criterion_id, AnswerStatus.SATISFIED, a.belief, a.weight)
        if a.criterion_id in to_satisfy
        else a
        for a in assessment.answers
    )
    patched = replace(assessment, answers=answers)
    if connectivity is not None:
        patched = replace(
            patched,
            connectivity=ConnectivitySelection(
                connectivity, ConnectivityProvenance.USER_OVERRIDE
            ),
        )
    return patched


def brute_force_improvements(tables, catalog, assessment, target: SecurityClass):
    """All essentially-distinct plans reaching the target, by trying every
    subset of currently unsatisfied criteria crossed with every
    connectivity level.

    Candidates that would raise connectivity are not improvement plans.
    Each qualifying candidate is canonicalised to the exact criteria the
    achieved protection level needed at that connectivity, so redundant
    supersets collapse; returns a set of (frozenset of criterion ids,
    connectivity level).
    """
    current = classify_component(tables, catalog, assessment)
    answers = {a.criterion_id: a for a in assessment.answers}
    unsatisfied = sorted(
        c.id
        for c in catalog.applicable_criteria(assessment.component_type)
        if answers[c.id].status is AnswerStatus.UNSATISFIED
    )
    plans: set[tuple[frozenset[str], ConnectivityLevel]] = set()
    for connectivity in ConnectivityLevel:
        if connectivity > current.connectivity:
            continue
        for bits in range(2 ** len(unsatisfied)):
            subset = {cid for i, cid in enumerate(unsatisfied) if bits >> i & 1}
            candidate = apply_changes(assessment, subset, connectivity)
            achieved = classify_component(tables, catalog, candidate)
            if achieved.security_class.worse_than(target):
                continue
            needed = frozenset(
                cid
                for cid in subset
                if (crit := catalog.criterion(cid)).active_at(connectivity)
                and crit.required_from_level <= achieved.protection
            )
            plans.add((needed, connectivity))
    return plans


def random_assessment(catalog, rng: random.Random, *, index: int = 0) -> ComponentAssessment:
    """A complete, classification-ready assessment with random content."""
    component_type = rng.choice([t.name for t in catalog.component_types])
    statuses = list(AnswerStatus)
    answers = tuple(
        CriterionAnswer(
            criterion_id=c.id,
            status=rng.choice(statuses),
            belief=round(rng.random(), 6),
            weight=round(rng.uniform(0, 3), 6),
        )
        for c in catalog.applicable_criteria(component_type)
    )
    if rng.random() < 0.5:
        scope = rng.choice(list(NetworkScope))
        mechanisms = tuple(
            rng.sample(
                ["wifi", "bluetooth", "ethernet", "cellular", "public-internet", "lora"],
                k=rng.randint(0, 3),
            )
        )
        connectivity = None
    else:
        scope = rng.choice(list(NetworkScope))
        mechanisms = ()
        connectivity = ConnectivitySelection(
            rng.choice(list(ConnectivityLevel)), ConnectivityProvenance.USER_OVERRIDE
        )
    return ComponentAssessment(
        id=f"cmp-rand-{index}",
        name=f"component-{index}",
        component_type=component_type,
        impact=rng.choice(list(ImpactLevel)),
        communication_mechanisms=mechanisms,
        network_scope=scope,
        connectivity=connectivity,
        answers=answers,
    )
