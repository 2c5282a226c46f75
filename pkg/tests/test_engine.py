"""Engine: protection evaluation, confidence, classification pipeline."""
from __future__ import annotations

import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from secclass import (
    AnswerStatus,
    ComponentAssessment,
    ConnectivityLevel,
    CriterionAnswer,
    EmptySystemError,
    ImpactLevel,
    IncompleteAssessmentError,
    ModelValidationError,
    NetworkScope,
    ProtectionLevel,
    SecurityClass,
    SystemRecord,
    aggregate_confidence,
    aggregate_system_class,
    classify_component,
    classify_system,
    evaluate_protection,
    lookup_class,
    lookup_exposure,
)
from secclass.engine import compute_input_hash

from .conftest import build_assessment
from .helpers import protection_oracle, random_assessment

C3 = ConnectivityLevel.C3


def _with_statuses(catalog, satisfied=frozenset(), not_applicable=frozenset(), **kwargs):
    return build_assessment(
        catalog, satisfied=satisfied, not_applicable=not_applicable, **kwargs
    )


def all_ids(catalog, component_type="IoT device"):
    return frozenset(c.id for c in catalog.applicable_criteria(component_type))


# --------------------------------------------------------------------------
# protection


def test_all_satisfied_reaches_p5(catalog):
    assessment = _with_statuses(catalog, satisfied=all_ids(catalog))
    level, fact = evaluate_protection(catalog, assessment, C3)
    assert level is ProtectionLevel.P5
    assert fact["blocking_level"] is None
    assert fact["blocking_criteria"] == []


def test_nothing_satisfied_is_p1(catalog):
    assessment = _with_statuses(catalog)
    level, fact = evaluate_protection(catalog, assessment, C3)
    assert level is ProtectionLevel.P1
    assert fact["blocking_level"] == "P2"
    assert fact["blocking_criteria"]


def test_one_p4_criterion_blocks_at_p3(catalog):
    # oracle first: brute-force over levels with the shipped catalog
    satisfied = all_ids(catalog) - {"signed-updates"}
    assessment = _with_statuses(catalog, satisfied=satisfied)
    assert protection_oracle(catalog, assessment, C3) is ProtectionLevel.P3
    level, fact = evaluate_protection(catalog, assessment, C3)
    assert level is ProtectionLevel.P3
    assert fact["blocking_level"] == "P4"
    assert fact["blocking_criteria"] == ["signed-updates"]


def test_not_applicable_counts_as_met(catalog):
    satisfied = all_ids(catalog) - {"secure-boot"}
    assessment = _with_statuses(catalog, satisfied=satisfied, not_applicable={"secure-boot"})
    level, _ = evaluate_protection(catalog, assessment, C3)
    assert level is ProtectionLevel.P5


def test_connectivity_waives_conditional_criteria(catalog):
    # mutual-authentication only gates from C3 upward
    satisfied = all_ids(catalog) - {"mutual-authentication"}
    assessment = _with_statuses(catalog, satisfied=satisfied)
    at_c2, fact = evaluate_protection(catalog, assessment, ConnectivityLevel.C2)
    at_c3, _ = evaluate_protection(catalog, assessment, C3)
    assert at_c2 is ProtectionLevel.P5
    assert "mutual-authentication" in fact["waived_by_connectivity"]
    assert at_c3 is ProtectionLevel.P3


def test_missing_answers_reported_with_ids(catalog, worked_assessment):
    partial = replace(worked_assessment, answers=worked_assessment.answers[:-2])
    missing = sorted(a.criterion_id for a in worked_assessment.answers[-2:])
    with pytest.raises(IncompleteAssessmentError) as err:
        evaluate_protection(catalog, partial, C3)
    assert err.value.step == 8
    assert err.value.missing == missing


def test_unknown_answer_id_rejected(catalog, worked_assessment):
    extra = worked_assessment.answers + (
        CriterionAnswer("no-such-criterion", AnswerStatus.SATISFIED),
    )
    with pytest.raises(ModelValidationError, match="no-such-criterion"):
        evaluate_protection(catalog, replace(worked_assessment, answers=extra), C3)


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_more_satisfied_never_lowers_protection(data):
    from secclass import default_catalog

    catalog = default_catalog()
    ids = sorted(all_ids(catalog))
    smaller = data.draw(st.sets(st.sampled_from(ids)))
    extra = data.draw(st.sets(st.sampled_from(ids)))
    larger = smaller | extra
    connectivity = data.draw(st.sampled_from(list(ConnectivityLevel)))
    low = _with_statuses(catalog, satisfied=frozenset(smaller))
    high = _with_statuses(catalog, satisfied=frozenset(larger))
    level_low, _ = evaluate_protection(catalog, low, connectivity)
    level_high, _ = evaluate_protection(catalog, high, connectivity)
    assert level_high >= level_low


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_protection_matches_level_oracle(data):
    from secclass import default_catalog

    catalog = default_catalog()
    ids = sorted(all_ids(catalog))
    satisfied = frozenset(data.draw(st.sets(st.sampled_from(ids))))
    na = frozenset(data.draw(st.sets(st.sampled_from(ids)))) - satisfied
    connectivity = data.draw(st.sampled_from(list(ConnectivityLevel)))
    assessment = _with_statuses(catalog, satisfied=satisfied, not_applicable=na)
    level, _ = evaluate_protection(catalog, assessment, connectivity)
    assert level is protection_oracle(catalog, assessment, connectivity)


# --------------------------------------------------------------------------
# confidence


def _answers(pairs):
    return [
        CriterionAnswer(f"c{i}", AnswerStatus.SATISFIED, belief=b, weight=w)
        for i, (b, w) in enumerate(pairs)
    ]


def test_confidence_all_beliefs_one():
    value, note = aggregate_confidence(_answers([(1.0, 1.0), (1.0, 5.0), (1.0, 0.25)]))
    assert value == 1.0
    assert note is None


def test_confidence_arithmetic_identity():
    value, _ = aggregate_confidence(_answers([(1.0, 1.0), (0.0, 1.0)]))
    assert value == pytest.approx(0.5, abs=1e-12)


def test_confidence_weighted_mean():
    # hand-computed: (3*0.8 + 1*0.6) / 4 = 0.75
    value, _ = aggregate_confidence(_answers([(0.8, 3.0), (0.6, 1.0)]))
    assert value == pytest.approx(0.75, abs=1e-12)


def test_confidence_ignores_not_applicable():
    answers = _answers([(0.2, 1.0), (1.0, 1.0)])
    answers[0] = replace(answers[0], status=AnswerStatus.NOT_APPLICABLE)
    value, _ = aggregate_confidence(answers)
    assert value == 1.0


def test_confidence_zero_weights_neutral_with_note():
    value, note = aggregate_confidence(_answers([(0.3, 0.0), (0.9, 0.0)]))
    assert value == 1.0
    assert note is not None and "zero" in note


def test_confidence_range_validation():
    with pytest.raises(ModelValidationError, match="belief"):
        aggregate_confidence(
            [CriterionAnswer("c0", AnswerStatus.SATISFIED, belief=1.5, weight=1.0)]
        )
    with pytest.raises(ModelValidationError, match="weight"):
        aggregate_confidence(
            [CriterionAnswer("c0", AnswerStatus.SATISFIED, belief=0.5, weight=-1.0)]
        )


@settings(max_examples=50, deadline=None)
@given(
    weights=st.lists(st.floats(min_value=0, max_value=10, allow_nan=False), min_size=1, max_size=8)
)
def test_confidence_neutral_for_any_weights(weights):
    answers = [
        CriterionAnswer(f"c{i}", AnswerStatus.UNSATISFIED, belief=1.0, weight=w)
        for i, w in enumerate(weights)
    ]
    value, _ = aggregate_confidence(answers)
    assert value == 1.0


# --------------------------------------------------------------------------
# classification pipeline


def test_worked_fixture_classifies_to_e(tables, catalog, worked_assessment):
    result = classify_component(tables, catalog, worked_assessment)
    assert result.protection is ProtectionLevel.P2
    assert result.connectivity is ConnectivityLevel.C3
    assert result.exposure.value == "E4"
    assert result.security_class is SecurityClass.E
    assert result.confidence == 1.0
    assert result.trace


def test_trace_records_the_cells_read(tables, catalog, worked_assessment):
    result = classify_component(tables, catalog, worked_assessment)
    exposure_fact = next(f for f in result.trace if f.get("table") == "exposure")
    class_fact = next(f for f in result.trace if f.get("table") == "class")
    assert (exposure_fact["row"], exposure_fact["column"]) == ("P2", "C3")
    assert exposure_fact["value"] == "E4"
    assert (class_fact["row"], class_fact["column"]) == ("Major", "E4")
    assert class_fact["value"] == "E"


def test_user_override_beats_derivation(tables, catalog, worked_assessment):
    from secclass import ConnectivityProvenance, ConnectivitySelection

    pinned = replace(
        worked_assessment,
        connectivity=ConnectivitySelection(
            ConnectivityLevel.C1, ConnectivityProvenance.USER_OVERRIDE
        ),
    )
    result = classify_component(tables, catalog, pinned)
    assert result.connectivity is ConnectivityLevel.C1
    connectivity_fact = next(f for f in result.trace if f["step"] == "connectivity")
    assert connectivity_fact["provenance"] == "user_override"


def test_incomplete_assessment_names_first_missing_step(tables, catalog, worked_assessment):
    no_impact = replace(worked_assessment, impact=None)
    with pytest.raises(IncompleteAssessmentError, match=r"step 4"):
        classify_component(tables, catalog, no_impact)

    no_network = replace(worked_assessment, network_scope=None, connectivity=None)
    with pytest.raises(IncompleteAssessmentError, match=r"step 6"):
        classify_component(tables, catalog, no_network)

    bad_type = replace(worked_assessment, component_type="Teapot")
    with pytest.raises(IncompleteAssessmentError, match=r"step 2"):
        classify_component(tables, catalog, bad_type)


def test_classification_is_deterministic(tables, catalog, worked_assessment):
    a = classify_component(tables, catalog, worked_assessment)
    b = classify_component(tables, catalog, worked_assessment)
    assert a == b


def test_class_never_depends_on_beliefs(tables, catalog, worked_assessment):
    noisy = replace(
        worked_assessment,
        answers=tuple(
            replace(ans, belief=0.1, weight=7.0) for ans in worked_assessment.answers
        ),
    )
    assert (
        classify_component(tables, catalog, noisy).security_class
        is classify_component(tables, catalog, worked_assessment).security_class
    )


def test_pipeline_coherence_on_random_sample(tables, catalog):
    rng = random.Random(1234)
    for i in range(100):
        assessment = random_assessment(catalog, rng, index=i)
        result = classify_component(tables, catalog, assessment)
        recomposed = lookup_class(
            tables,
            assessment.impact,
            lookup_exposure(tables, result.protection, result.connectivity),
        )
        assert result.security_class is recomposed


# --------------------------------------------------------------------------
# system level


def test_system_class_is_worst_component(tables, catalog):
    strong = build_assessment(
        catalog,
        component_id="cmp-strong",
        name="backend",
        component_type="Backend System",
        satisfied=frozenset(c.id for c in catalog.applicable_criteria("Backend System")),
        not_applicable=frozenset(),
        impact=ImpactLevel.MINOR,
        scope=NetworkScope.WIDE_AREA,
        mechanisms=("vpn",),
    )
    weak = build_assessment(catalog, component_id="cmp-weak", name="sensor")
    record = SystemRecord(id="sys-2", name="two-tier", components=(strong, weak))
    outcome = classify_system(tables, catalog, record)
    classes = [r.security_class for r in outcome.results]
    assert outcome.system_class is SecurityClass.worst(classes)
    assert outcome.system_class is SecurityClass.E  # the weak sensor dominates


def test_aggregate_system_class_rejects_empty():
    with pytest.raises(EmptySystemError):
        aggregate_system_class([])


def test_classify_system_rejects_empty(tables, catalog):
    with pytest.raises(EmptySystemError):
        classify_system(tables, catalog, SystemRecord(id="sys-0", name="empty"))


def test_input_hash_tracks_result_relevant_changes(tables, catalog, worked_assessment):
    base = compute_input_hash(tables, catalog, (worked_assessment,))
    # free-text edits do not change the hash
    described = replace(worked_assessment, description="now with more prose")
    assert compute_input_hash(tables, catalog, (described,)) == base
    # answer edits do
    flipped = worked_assessment.with_answer(
        CriterionAnswer("secure-storage", AnswerStatus.SATISFIED)
    )
    assert compute_input_hash(tables, catalog, (flipped,)) != base
