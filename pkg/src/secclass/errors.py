"""Exception types shared across the library, store, service and CLI."""
from __future__ import annotations

from dataclasses import dataclass, field


class SecclassError(Exception):
    """Base class for all errors raised by this package."""


@dataclass(frozen=True)
class ValidationIssue:
    """One concrete rule violation, addressable by field path.

    ``path`` uses dotted/indexed notation, e.g.
    ``components[0].answers[2].belief``.
    """

    path: str
    rule: str
    message: str

    def to_doc(self) -> dict:
        return {"path": self.path, "rule": self.rule, "message": self.message}


class ModelValidationError(SecclassError):
    """A document or value failed validation; carries all issues found."""

    def __init__(self, issues: list[ValidationIssue]):
        self.issues = list(issues)
        summary = "; ".join(f"{i.path} [{i.rule}]: {i.message}" for i in self.issues)
        super().__init__(f"validation failed: {summary}")


class IncompleteAssessmentError(SecclassError):
    """An assessment is missing inputs required to compute a class.

    ``step`` is the first incomplete step in the capture-and-compute
    workflow (1..10); ``missing`` lists the concrete missing items.
    """

    def __init__(self, step: int, message: str, missing: list[str] | None = None):
        self.step = step
        self.missing = list(missing or [])
        super().__init__(f"incomplete assessment (step {step}): {message}")


class EmptySystemError(SecclassError):
    """A system-level operation was requested on a system with no components."""

    def __init__(self, system_id: str):
        self.system_id = system_id
        super().__init__(f"system {system_id!r} has no components")


class NotFoundError(SecclassError):
    """A referenced record does not exist in the store."""

    def __init__(self, kind: str, identifier: str):
        self.kind = kind
        self.identifier = identifier
        super().__init__(f"{kind} not found: {identifier}")


class VersionConflictError(SecclassError):
    """Optimistic-versioning conflict: the record changed since it was read."""

    def __init__(self, identifier: str, stored_version: int, submitted_version: int):
        self.identifier = identifier
        self.stored_version = stored_version
        self.submitted_version = submitted_version
        super().__init__(
            f"version conflict on {identifier!r}: stored version is "
            f"{stored_version}, submitted version is {submitted_version}"
        )


class SchemaVersionError(SecclassError):
    """A document's schema version is newer than this build supports."""

    def __init__(self, found: int, supported: int):
        self.found = found
        self.supported = supported
        super().__init__(
            f"document schema version {found} is newer than supported "
            f"version {supported}; upgrade the tool to read it"
        )


@dataclass
class IssueCollector:
    """Accumulates ValidationIssues while walking a document."""

    issues: list[ValidationIssue] = field(default_factory=list)

    def add(self, path: str, rule: str, message: str) -> None:
        self.issues.append(ValidationIssue(path, rule, message))

    def raise_if_any(self) -> None:
        if self.issues:
            raise ModelValidationError(self.issues)
