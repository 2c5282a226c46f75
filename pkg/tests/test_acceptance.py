"""Acceptance suite: one test per release criterion, tolerances pinned.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS line
per criterion.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import replace

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from secclass import (
    AnswerStatus,
    ConnectivityLevel,
    CriterionAnswer,
    ExposureLevel,
    ImpactLevel,
    ProtectionLevel,
    SecurityClass,
    SystemRecord,
    aggregate_confidence,
    apply_plan,
    classify_component,
    default_tables,
    evaluate_protection,
    improvement_search,
    lookup_class,
    lookup_exposure,
    system_from_doc,
    tables_from_doc,
)
from secclass.cli import main as cli_main
from secclass.model import migrate_system_doc
from secclass.service import ServiceConfig, create_app
from secclass.store import FileStore, SqliteStore, dump_system_file

from .conftest import WORKED_SATISFIED, build_assessment
from .helpers import brute_force_improvements, random_assessment
from .test_cli import _api_worked_fixture, strong_record
from .test_store import V1_DOC
from .test_tables import (
    EXPECTED_CLASS,
    EXPECTED_EXPOSURE,
    all_pair_monotonicity_comparisons,
)


def _pass(name: str) -> None:
    print(f"ACCEPTANCE {name}: PASS")


def test_acceptance_table_fidelity(tables):
    started = time.perf_counter()
    mismatches = []
    for p in ProtectionLevel:
        for idx, c in enumerate(ConnectivityLevel):
            got = tables.exposure_at(p, c).value
            if got != EXPECTED_EXPOSURE[p.value][idx]:
                mismatches.append(("exposure", p.value, c.value, got))
    for i in ImpactLevel:
        for idx, e in enumerate(ExposureLevel):
            got = tables.class_at(i, e).value
            if got != EXPECTED_CLASS[i.value][idx]:
                mismatches.append(("class", i.value, e.value, got))
    elapsed = time.perf_counter() - started
    assert mismatches == []  # zero tolerance on all 50 cells
    assert elapsed < 1.0
    _pass("table fidelity (50/50 cells exact)")


def test_acceptance_monotonicity_suite(tables):
    started = time.perf_counter()
    comparisons = list(all_pair_monotonicity_comparisons(tables))
    elapsed = time.perf_counter() - started
    assert len(comparisons) == 200
    assert [label for ok, label in comparisons if not ok] == []
    assert elapsed < 1.0
    _pass("monotonicity suite (200/200 comparisons)")


def test_acceptance_worked_scenario_e_to_b(tables, catalog, worked_assessment):
    current = classify_component(tables, catalog, worked_assessment)
    assert current.protection is ProtectionLevel.P2
    assert current.connectivity is ConnectivityLevel.C3
    assert current.security_class is SecurityClass.E

    outcome = improvement_search(tables, catalog, worked_assessment, SecurityClass.B)
    assert outcome.plans, "improvement search returned no plans"
    plan = outcome.plans[0]
    assert plan.security_class.at_or_better_than(SecurityClass.B)

    mutated = apply_plan(
        worked_assessment,
        plan.criteria_to_satisfy,
        plan.connectivity_change[1] if plan.connectivity_change else None,
    )
    confirmed = classify_component(tables, catalog, mutated)
    assert confirmed.security_class is SecurityClass.B
    _pass("worked scenario (E at Major/(P2,C3); applied plan re-classifies to B)")


def test_acceptance_improvement_oracle_equivalence(tables, catalog):
    from .test_improve import plan_keyset, restrict_catalog

    started = time.perf_counter()
    small = restrict_catalog(catalog, 12)
    assert len(small.criteria) <= 12
    fixtures = [build_assessment(small)]
    rng = random.Random(4242)
    while len(fixtures) < 3:
        candidate = random_assessment(small, rng, index=len(fixtures))
        if not classify_component(tables, small, candidate).security_class.at_or_better_than(
            SecurityClass.B
        ):
            fixtures.append(candidate)
    for assessment in fixtures:
        for target in (SecurityClass.A, SecurityClass.B, SecurityClass.C):
            searched = plan_keyset(improvement_search(tables, small, assessment, target))
            brute = brute_force_improvements(tables, small, assessment, target)
            assert searched == brute  # exact set equality
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0
    _pass(f"improvement-search oracle equivalence ({elapsed:.2f}s for 9 searches)")


def test_acceptance_confidence(tables, catalog, worked_assessment):
    def answers(pairs):
        return [
            CriterionAnswer(f"c{i}", AnswerStatus.SATISFIED, belief=b, weight=w)
            for i, (b, w) in enumerate(pairs)
        ]

    half, _ = aggregate_confidence(answers([(1.0, 1.0), (0.0, 1.0)]))
    assert abs(half - 0.5) <= 1e-9
    weighted, _ = aggregate_confidence(answers([(0.8, 3.0), (0.6, 1.0)]))
    assert abs(weighted - 0.75) <= 1e-9
    neutral, _ = aggregate_confidence(answers([(1.0, 0.3), (1.0, 9.0), (1.0, 0.0)]))
    assert neutral == 1.0  # exactly

    # class invariance over an exhaustive belief/weight grid on 3 criteria
    probe_ids = ["unique-credentials", "secure-storage", "signed-updates"]
    baseline = classify_component(tables, catalog, worked_assessment).security_class
    grid = [0.0, 0.5, 1.0]
    weights = [0.0, 1.0, 2.0]
    combos = 0
    for beliefs in itertools.product(grid, repeat=3):
        for ws in itertools.product(weights, repeat=3):
            tweaked = worked_assessment
            for cid, b, w in zip(probe_ids, beliefs, ws):
                old = tweaked.answer_for(cid)
                tweaked = tweaked.with_answer(replace(old, belief=b, weight=w))
            result = classify_component(tables, catalog, tweaked)
            assert result.security_class is baseline
            combos += 1
    assert combos == 729
    _pass("confidence (0.5 and 0.75 within 1e-9; neutrality exact; class invariant x729)")


def test_acceptance_pipeline_coherence(tables, catalog):
    rng = random.Random(20260808)
    mismatches = 0
    for i in range(1000):
        assessment = random_assessment(catalog, rng, index=i)
        result = classify_component(tables, catalog, assessment)
        protection, _ = evaluate_protection(catalog, assessment, result.connectivity)
        recomposed = lookup_class(
            tables,
            assessment.impact,
            lookup_exposure(tables, protection, result.connectivity),
        )
        if result.security_class is not recomposed:
            mismatches += 1
    assert mismatches == 0
    _pass("pipeline coherence (1000/1000 random assessments recompose)")


def test_acceptance_persistence_round_trip(tmp_path, catalog, worked_assessment):
    for store in (FileStore(tmp_path / "fs"), SqliteStore(tmp_path / "db.sqlite")):
        fractional = replace(
            worked_assessment,
            answers=tuple(
                replace(a, belief=0.1234567, weight=1.7654321)
                for a in worked_assessment.answers
            ),
        )
        record = SystemRecord(
            id="sys-rt", name="round-trip", components=(fractional, )
        )
        saved = store.save_system("ws", record)
        loaded = store.load_system("ws", "sys-rt")
        assert loaded == saved  # field-for-field identity

        before, _ = aggregate_confidence(list(record.components[0].answers))
        after, _ = aggregate_confidence(list(loaded.components[0].answers))
        assert round(before, 6) == round(after, 6)

        doc = default_tables().to_doc()
        doc["class"]["Major"]["E2"] = "C"
        doc["origin"] = "custom"
        store.save_tables_override("ws", tables_from_doc(doc))
        assert store.load_tables_override("ws").to_doc() == tables_from_doc(doc).to_doc()

        store.save_catalog_override("ws", catalog)
        assert store.load_catalog_override("ws").to_doc() == catalog.to_doc()

    migrated = migrate_system_doc(dict(V1_DOC))
    assert migrated["schema_version"] == 2
    record = system_from_doc(dict(V1_DOC))
    assert record.components[0].connectivity.level is ConnectivityLevel.C3
    assert record.components[0].connectivity.provenance.value == "user_override"
    _pass("persistence round-trip (both backends; v1->v2 migration)")


def test_acceptance_cli_gate_contract(tmp_path, catalog, worked_record):
    runner = CliRunner()
    worked_path = tmp_path / "worked.yaml"
    dump_system_file(worked_record, worked_path)
    strong_path = tmp_path / "strong.yaml"
    dump_system_file(strong_record(catalog), strong_path)

    passed = runner.invoke(cli_main, ["gate", str(strong_path), "--min-class", "C"])
    assert passed.exit_code == 0  # B is at-or-better than C

    failed = runner.invoke(cli_main, ["gate", str(worked_path), "--min-class", "B"])
    assert failed.exit_code == 1  # E is worse than B

    usage = runner.invoke(cli_main, ["gate", str(worked_path), "--min-class", "G"])
    assert usage.exit_code == 2  # no such class

    api_body, stored_path = _api_worked_fixture(tmp_path)
    cli_json = runner.invoke(cli_main, ["compute", str(stored_path), "--json"])
    assert cli_json.exit_code == 0
    assert cli_json.stdout.encode() == api_body  # byte-identical
    _pass("CLI gate contract (exits 0/1/2; --json byte-identical to API)")


def test_acceptance_api_contract(tmp_path):
    from .test_service import make_worked_system

    config = ServiceConfig(store=FileStore(tmp_path / "store"), workspace="default")
    with TestClient(create_app(config)) as client:
        system_id, component_id, version = make_worked_system(client)

        body = client.post(f"/systems/{system_id}/compute").json()
        assert body["system_class"] == "E"
        assert body["components"][0]["class"] == "E"

        custom = client.get("/config/tables").json()
        custom["class"]["Major"]["E4"] = "C"
        assert client.put("/config/tables", json=custom).status_code == 200
        assert client.get("/config/tables").json()["origin"] == "custom"
        assert client.delete("/config/tables").status_code == 200
        restored = client.get("/config/tables").json()
        assert restored == default_tables().to_doc()

        component = client.get(f"/systems/{system_id}/components/{component_id}").json()
        answers = component["answers"]
        answers[0]["belief"] = 1.5
        refused = client.put(
            f"/systems/{system_id}/components/{component_id}/assessment",
            json={"answers": answers, "version": client.get(f"/systems/{system_id}").json()["version"]},
        )
        assert refused.status_code == 400
        detail = refused.json()["error"]["details"][0]
        assert detail["path"] == "assessment.answers[0].belief"
        assert detail["rule"] == "range"
    _pass("API contract (compute E; tables reset; belief range 400 with path)")
