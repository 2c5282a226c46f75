"""Shared fixtures: default config, the worked Major/(P2,C3) fixture."""
from __future__ import annotations

import pytest

from secclass import (
    AnswerStatus,
    ComponentAssessment,
    CriterionAnswer,
    ImpactLevel,
    NetworkScope,
    SystemRecord,
    default_catalog,
    default_rules,
    default_tables,
)

# criteria the worked fixture has in place: all of P2 plus two of P3
WORKED_SATISFIED = frozenset(
    {
        "unique-credentials",
        "transport-encryption",
        "update-mechanism",
        "least-privilege",
        "input-validation",
    }
)


@pytest.fixture(scope="session")
def tables():
    return default_tables()


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture(scope="session")
def rules():
    return default_rules()


def build_assessment(
    catalog,
    *,
    component_type: str = "IoT device",
    satisfied=WORKED_SATISFIED,
    not_applicable=frozenset({"brute-force-protection"}),
    impact: ImpactLevel | None = ImpactLevel.MAJOR,
    scope: NetworkScope | None = NetworkScope.HOME_AREA,
    mechanisms: tuple[str, ...] = ("wifi",),
    name: str = "wearable-sensor",
    component_id: str = "cmp-worked",
) -> ComponentAssessment:
    """Assessment with a full answer set derived from the catalog."""
    answers = tuple(
        CriterionAnswer(
            criterion_id=c.id,
            status=(
                AnswerStatus.SATISFIED
                if c.id in satisfied
                else AnswerStatus.NOT_APPLICABLE
                if c.id in not_applicable
                else AnswerStatus.UNSATISFIED
            ),
        )
        for c in catalog.applicable_criteria(component_type)
    )
    return ComponentAssessment(
        id=component_id,
        name=name,
        component_type=component_type,
        description="body-worn telemetry patch",
        impact=impact,
        communication_mechanisms=mechanisms,
        network_scope=scope,
        answers=answers,
    )


@pytest.fixture
def worked_assessment(catalog) -> ComponentAssessment:
    """Impact Major at derived (P2, C3): classifies to E on default tables."""
    return build_assessment(catalog)


@pytest.fixture
def worked_record(worked_assessment) -> SystemRecord:
    return SystemRecord(
        id="sys-worked",
        name="assisted-living-pilot",
        description="worked single-component system",
        components=(worked_assessment,),
    )
