"""Ordinal level enumerations: the value domain of the classification method.

All five scales are total orders with explicit ranks so comparisons are
well-defined and values serialize as their conventional names ("P1".."P5",
"C1".."C5", "E1".."E5", impact names, grades "A".."F").

Comparison operators follow rank order.  For :class:`SecurityClass` that
means ``A < B < ... < F`` where A is the *best* grade; use
:meth:`SecurityClass.at_or_better_than` rather than raw ``<`` when intent
matters.
"""
from __future__ import annotations

import enum
from typing import TypeVar

T = TypeVar("T", bound="OrdinalEnum")


class OrdinalEnum(str, enum.Enum):
    """String-valued enum whose members form a total order by declaration."""

    @property
    def rank(self) -> int:
        """0-based position in declaration order."""
        return list(type(self)).index(self)

    def __lt__(self, other) -> bool:
        if type(self) is not type(other):
            return NotImplemented
        return self.rank < other.rank

    def __le__(self, other) -> bool:
        if type(self) is not type(other):
            return NotImplemented
        return self.rank <= other.rank

    def __gt__(self, other) -> bool:
        if type(self) is not type(other):
            return NotImplemented
        return self.rank > other.rank

    def __ge__(self, other) -> bool:
        if type(self) is not type(other):
            return NotImplemented
        return self.rank >= other.rank

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls: type[T], raw: str) -> T:
        """Parse a serialized member name; raises ValueError with choices."""
        try:
            return cls(raw)
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(
                f"invalid {cls.__name__} {raw!r}; expected one of: {choices}"
            ) from None


class ProtectionLevel(OrdinalEnum):
    """Strength of implemented security mechanisms, P1 (weakest) to P5."""

    P1 = "P1"
    P2 = "P2"
    P3 = "P3"
    P4 = "P4"
    P5 = "P5"


class ConnectivityLevel(OrdinalEnum):
    """Network reachability, C1 (isolated) to C5 (publicly reachable)."""

    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    C5 = "C5"


class ExposureLevel(OrdinalEnum):
    """How attackable a component is, E1 (least exposed) to E5."""

    E1 = "E1"
    E2 = "E2"
    E3 = "E3"
    E4 = "E4"
    E5 = "E5"


class ImpactLevel(OrdinalEnum):
    """Worst-case consequence of a breach, entered manually per component."""

    INSIGNIFICANT = "Insignificant"
    MINOR = "Minor"
    MODERATE = "Moderate"
    MAJOR = "Major"
    CATASTROPHIC = "Catastrophic"


class SecurityClass(OrdinalEnum):
    """Final grade, A (best) to F (worst). Rank order: lower rank = better."""

    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"

    def at_or_better_than(self, threshold: "SecurityClass") -> bool:
        return self.rank <= threshold.rank

    def worse_than(self, other: "SecurityClass") -> bool:
        return self.rank > other.rank

    @staticmethod
    def worst(classes: list["SecurityClass"]) -> "SecurityClass":
        if not classes:
            raise ValueError("worst() of empty class list")
        return max(classes, key=lambda c: c.rank)


class NetworkScope(OrdinalEnum):
    """Networking context of a component (capture step 6)."""

    ISOLATED = "isolated"
    HOME_AREA = "home_area"
    WIDE_AREA = "wide_area"


class AnswerStatus(str, enum.Enum):
    """Outcome of evaluating one protection criterion."""

    SATISFIED = "satisfied"
    UNSATISFIED = "unsatisfied"
    NOT_APPLICABLE = "not_applicable"

    def __str__(self) -> str:
        return self.value


class ConnectivityProvenance(str, enum.Enum):
    """Whether a connectivity level was rule-derived or set by the user."""

    DERIVED = "derived"
    USER_OVERRIDE = "user_override"

    def __str__(self) -> str:
        return self.value
