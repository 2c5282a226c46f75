"""Security classification engine.

Evaluates systems component-by-component (impact, connectivity,
protection) and computes a security class A-F via two lookup tables,
with a criteria catalog, confidence aggregation, what-if improvement
search, persistence, a REST service and a CI-gate CLI.
"""
from .catalog import (
    ComponentType,
    CriteriaCatalog,
    Criterion,
    catalog_from_doc,
    default_catalog,
    parse_catalog,
    serialize_catalog,
)
from .connectivity import (
    ConnectivityRules,
    ConnectivitySuggestion,
    default_rules,
    derive_connectivity,
)
from .engine import (
    ClassificationResult,
    SystemClassification,
    aggregate_confidence,
    aggregate_system_class,
    classify_component,
    classify_system,
    compute_input_hash,
    evaluate_protection,
)
from .errors import (
    EmptySystemError,
    IncompleteAssessmentError,
    ModelValidationError,
    NotFoundError,
    SchemaVersionError,
    SecclassError,
    ValidationIssue,
    VersionConflictError,
)
from .improve import (
    ImprovementOutcome,
    ImprovementPlan,
    apply_plan,
    improvement_search,
)
from .levels import (
    AnswerStatus,
    ConnectivityLevel,
    ConnectivityProvenance,
    ExposureLevel,
    ImpactLevel,
    NetworkScope,
    ProtectionLevel,
    SecurityClass,
)
from .model import (
    ComponentAssessment,
    ConnectivitySelection,
    CriterionAnswer,
    SystemRecord,
    system_from_doc,
)
from .tables import (
    LookupTables,
    ValidationReport,
    default_tables,
    lookup_class,
    lookup_exposure,
    parse_tables,
    reset_tables,
    serialize_tables,
    tables_from_doc,
    validate_tables,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # levels
    "ProtectionLevel",
    "ConnectivityLevel",
    "ExposureLevel",
    "ImpactLevel",
    "SecurityClass",
    "NetworkScope",
    "AnswerStatus",
    "ConnectivityProvenance",
    # tables
    "LookupTables",
    "ValidationReport",
    "default_tables",
    "reset_tables",
    "lookup_exposure",
    "lookup_class",
    "validate_tables",
    "tables_from_doc",
    "parse_tables",
    "serialize_tables",
    # catalog
    "Criterion",
    "ComponentType",
    "CriteriaCatalog",
    "default_catalog",
    "catalog_from_doc",
    "parse_catalog",
    "serialize_catalog",
    # connectivity
    "ConnectivityRules",
    "ConnectivitySuggestion",
    "default_rules",
    "derive_connectivity",
    # model
    "CriterionAnswer",
    "ConnectivitySelection",
    "ComponentAssessment",
    "SystemRecord",
    "system_from_doc",
    # engine
    "ClassificationResult",
    "SystemClassification",
    "evaluate_protection",
    "aggregate_confidence",
    "aggregate_system_class",
    "classify_component",
    "classify_system",
    "compute_input_hash",
    # improvement
    "ImprovementPlan",
    "ImprovementOutcome",
    "improvement_search",
    "apply_plan",
    # errors
    "SecclassError",
    "ValidationIssue",
    "ModelValidationError",
    "IncompleteAssessmentError",
    "EmptySystemError",
    "NotFoundError",
    "VersionConflictError",
    "SchemaVersionError",
]
