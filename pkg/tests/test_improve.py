"""What-if search: worked scenario, soundness, oracle equivalence."""
from __future__ import annotations

import random

import pytest

from secclass import (
    CriteriaCatalog,
    ImpactLevel,
    SecurityClass,
    apply_plan,
    classify_component,
    improvement_search,
)
from secclass.improve import (
    STATUS_ALREADY_AT_TARGET,
    STATUS_PLANS,
    STATUS_UNREACHABLE,
)

from .conftest import build_assessment
from .helpers import brute_force_improvements, random_assessment


def restrict_catalog(catalog, max_criteria: int = 12) -> CriteriaCatalog:
    """Subset of the shipped catalog keeping level coverage, small enough
    for exhaustive subset enumeration."""
    keep: list = []
    # walk levels round-robin so every level keeps at least one criterion
    by_level = {}
    for criterion in catalog.criteria:
        by_level.setdefault(criterion.required_from_level, []).append(criterion)
    pools = [sorted(v, key=lambda c: c.id) for _, v in sorted(by_level.items(), key=lambda kv: kv[0].rank)]
    while len(keep) < max_criteria and any(pools):
        for pool in pools:
            if pool and len(keep) < max_criteria:
                keep.append(pool.pop(0))
    kept_ids = {c.id for c in keep}
    types = tuple(
        type(t)(
            name=t.name,
            built_in=t.built_in,
            default_na_criteria=tuple(i for i in t.default_na_criteria if i in kept_ids),
        )
        for t in catalog.component_types
    )
    return CriteriaCatalog(
        version=f"{catalog.version}-restricted",
        criteria=tuple(sorted(keep, key=lambda c: c.id)),
        component_types=types,
    )


def plan_keyset(outcome):
    return {
        (frozenset(p.criteria_to_satisfy), p.connectivity) for p in outcome.plans
    }


def test_worked_scenario_e_to_b(tables, catalog, worked_assessment):
    current = classify_component(tables, catalog, worked_assessment)
    assert current.security_class is SecurityClass.E

    outcome = improvement_search(tables, catalog, worked_assessment, SecurityClass.B)
    assert outcome.status == STATUS_PLANS
    assert outcome.plans

    # a plan holding connectivity at C3 and lifting protection to P4 exists
    p4c3 = [
        p
        for p in outcome.plans
        if p.protection.value == "P4" and p.connectivity.value == "C3"
    ]
    assert p4c3 and p4c3[0].connectivity_change is None
    assert p4c3[0].security_class is SecurityClass.B

    # applying any plan really produces the promised class
    for plan in outcome.plans:
        target_connectivity = plan.connectivity_change[1] if plan.connectivity_change else None
        mutated = apply_plan(worked_assessment, plan.criteria_to_satisfy, target_connectivity)
        re_run = classify_component(tables, catalog, mutated)
        assert re_run.security_class is plan.security_class
        assert re_run.security_class.at_or_better_than(SecurityClass.B)


def test_plans_sorted_by_effort(tables, catalog, worked_assessment):
    outcome = improvement_search(tables, catalog, worked_assessment, SecurityClass.B)
    keys = [(p.criteria_count, p.connectivity_reduction) for p in outcome.plans]
    assert keys == sorted(keys)
    # deterministic output
    again = improvement_search(tables, catalog, worked_assessment, SecurityClass.B)
    assert [p.to_doc() for p in again.plans] == [p.to_doc() for p in outcome.plans]


def test_already_at_target_reports_no_plans(tables, catalog, worked_assessment):
    outcome = improvement_search(tables, catalog, worked_assessment, SecurityClass.E)
    assert outcome.status == STATUS_ALREADY_AT_TARGET
    assert outcome.plans == ()
    assert "already at" in outcome.note


def test_catastrophic_target_a_requires_e1(tables, catalog):
    # with Catastrophic impact only exposure E1 maps to class A, so every
    # returned plan must land on an E1 cell
    from dataclasses import replace

    from secclass import ConnectivityLevel, ConnectivityProvenance, ConnectivitySelection

    assessment = replace(
        build_assessment(catalog, impact=ImpactLevel.CATASTROPHIC),
        connectivity=ConnectivitySelection(
            ConnectivityLevel.C5, ConnectivityProvenance.USER_OVERRIDE
        ),
    )
    outcome = improvement_search(tables, catalog, assessment, SecurityClass.A)
    assert outcome.status == STATUS_PLANS
    for plan in outcome.plans:
        assert plan.exposure.value == "E1"


def test_unreachable_target_names_best_achievable(tables, catalog):
    # custom tables whose Catastrophic row never yields A: target A is
    # then impossible at this impact, and B is the best any state gives
    from secclass import tables_from_doc

    doc = tables.to_doc()
    for e in ("E2", "E3", "E4", "E5"):
        doc["class"]["Catastrophic"][e] = "F"
    doc["class"]["Catastrophic"]["E1"] = "B"
    doc["origin"] = "custom"
    harsh = tables_from_doc(doc)

    assessment = build_assessment(catalog, impact=ImpactLevel.CATASTROPHIC)
    outcome = improvement_search(harsh, catalog, assessment, SecurityClass.A)
    assert outcome.status == STATUS_UNREACHABLE
    assert outcome.plans == ()
    assert outcome.best_achievable is SecurityClass.B
    assert "best achievable" in outcome.note and "B" in outcome.note


def test_connectivity_only_plan(tables, catalog):
    # strong protection already; dropping connectivity is the whole plan
    assessment = build_assessment(
        catalog,
        satisfied=frozenset(c.id for c in catalog.applicable_criteria("IoT device")),
        not_applicable=frozenset(),
        impact=ImpactLevel.CATASTROPHIC,
        scope=None,
        mechanisms=(),
    )
    from dataclasses import replace
    from secclass import ConnectivityLevel, ConnectivityProvenance, ConnectivitySelection

    assessment = replace(
        assessment,
        connectivity=ConnectivitySelection(
            ConnectivityLevel.C5, ConnectivityProvenance.USER_OVERRIDE
        ),
    )
    current = classify_component(tables, catalog, assessment)
    assert current.security_class is SecurityClass.C  # P5,C5 -> E2 -> C
    outcome = improvement_search(tables, catalog, assessment, SecurityClass.A)
    best = outcome.plans[0]
    assert best.criteria_to_satisfy == ()
    assert best.connectivity_change is not None
    assert best.security_class is SecurityClass.A


def test_search_equals_brute_force_oracle(tables, catalog, worked_assessment):
    small_catalog = restrict_catalog(catalog, 12)
    assessment = build_assessment(small_catalog)
    for target in (SecurityClass.A, SecurityClass.B, SecurityClass.C, SecurityClass.D):
        outcome = improvement_search(tables, small_catalog, assessment, target)
        expected = brute_force_improvements(tables, small_catalog, assessment, target)
        assert plan_keyset(outcome) == expected, f"target {target.value}"


def test_search_equals_oracle_on_random_fixtures(tables, catalog):
    small_catalog = restrict_catalog(catalog, 10)
    rng = random.Random(97)
    checked = 0
    while checked < 6:
        assessment = random_assessment(small_catalog, rng, index=checked)
        current = classify_component(tables, small_catalog, assessment)
        target = SecurityClass.B
        if current.security_class.at_or_better_than(target):
            continue
        outcome = improvement_search(tables, small_catalog, assessment, target)
        expected = brute_force_improvements(tables, small_catalog, assessment, target)
        assert plan_keyset(outcome) == expected
        checked += 1
