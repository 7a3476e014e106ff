"""GSN domain model: elements, relationships, safety cases and diagnostics.

All types are frozen dataclasses. A ``SafetyCase`` deliberately does not
enforce id uniqueness or endpoint resolution at construction time; those
are reported by the validator as E2/E1 so that partial or malformed cases
(e.g. extracted from LLM output) can still be inspected.
"""

from __future__ import annotations

import dataclasses
import enum
import re
from typing import Iterable, Optional


class ElementKind(enum.Enum):
    GOAL = "Goal"
    STRATEGY = "Strategy"
    SOLUTION = "Solution"
    CONTEXT = "Context"
    ASSUMPTION = "Assumption"
    JUSTIFICATION = "Justification"


class RelationshipKind(enum.Enum):
    SUPPORTED_BY = "supportedBy"
    IN_CONTEXT_OF = "inContextOf"


class Decorator(enum.Enum):
    UNDEVELOPED = "undeveloped"
    UNINSTANTIATED = "uninstantiated"
    OFF_DIAGRAM = "off-diagram"


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"


# "Sn" must be tried before "S".
ID_PREFIXES: tuple[tuple[str, ElementKind], ...] = (
    ("Sn", ElementKind.SOLUTION),
    ("G", ElementKind.GOAL),
    ("S", ElementKind.STRATEGY),
    ("C", ElementKind.CONTEXT),
    ("A", ElementKind.ASSUMPTION),
    ("J", ElementKind.JUSTIFICATION),
)

PREFIX_OF: dict[ElementKind, str] = {kind: prefix for prefix, kind in ID_PREFIXES}

ID_PATTERN = r"(?:Sn|G|S|C|A|J)[1-9][0-9]*"
_ID_RE = re.compile(rf"^(Sn|G|S|C|A|J)([1-9][0-9]*)$")


def kind_for_id(element_id: str) -> Optional[ElementKind]:
    """Return the element kind encoded by an id prefix, or None if malformed."""
    m = _ID_RE.match(element_id)
    if not m:
        return None
    prefix = m.group(1)
    for p, kind in ID_PREFIXES:
        if p == prefix:
            return kind
    return None


def id_sort_key(element_id: str) -> tuple[str, int, str]:
    """Natural ordering for element ids: ``G2`` sorts before ``G10``."""
    m = re.match(r"^([A-Za-z]+)(\d+)(.*)$", element_id)
    if not m:
        return (element_id, -1, "")
    return (m.group(1), int(m.group(2)), m.group(3))


@dataclasses.dataclass(frozen=True)
class GsnElement:
    id: str
    kind: ElementKind
    text: str
    decorators: frozenset[Decorator] = frozenset()

    def __post_init__(self) -> None:
        expected = kind_for_id(self.id)
        if expected is None:
            raise ValueError(f"malformed element id {self.id!r}")
        if expected is not self.kind:
            raise ValueError(
                f"element id {self.id!r} implies {expected.value}, got {self.kind.value}"
            )
        if not self.text or not self.text.strip():
            raise ValueError(f"element {self.id}: text must be nonempty")
        if "\n" in self.text or "\r" in self.text:
            raise ValueError(f"element {self.id}: text must not contain line breaks")
        if self.text != self.text.strip():
            raise ValueError(f"element {self.id}: text must not have surrounding whitespace")
        if not isinstance(self.decorators, frozenset):
            object.__setattr__(self, "decorators", frozenset(self.decorators))

    @classmethod
    def of(cls, element_id: str, text: str, decorators: Iterable[Decorator] = ()) -> "GsnElement":
        """Build an element whose kind is taken from its id prefix."""
        kind = kind_for_id(element_id)
        if kind is None:
            raise ValueError(f"malformed element id {element_id!r}")
        return cls(element_id, kind, text, frozenset(decorators))

    @property
    def undeveloped(self) -> bool:
        return Decorator.UNDEVELOPED in self.decorators


@dataclasses.dataclass(frozen=True)
class Relationship:
    source: str
    target: str
    kind: RelationshipKind

    def __post_init__(self) -> None:
        if self.source == self.target:
            raise ValueError(f"relationship from {self.source} to itself")

    def __str__(self) -> str:
        return f"{self.source} {self.kind.value} {self.target}"


@dataclasses.dataclass(frozen=True)
class SafetyCase:
    title: str = ""
    elements: tuple[GsnElement, ...] = ()
    relationships: tuple[Relationship, ...] = ()

    def __post_init__(self) -> None:
        if "\n" in self.title or "\r" in self.title:
            raise ValueError("case title must not contain line breaks")
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "relationships", tuple(self.relationships))

    def element(self, element_id: str) -> Optional[GsnElement]:
        for el in self.elements:
            if el.id == element_id:
                return el
        return None

    @property
    def ids(self) -> list[str]:
        return [el.id for el in self.elements]

    def children(self, element_id: str, kind: RelationshipKind | None = None) -> list[str]:
        return [
            r.target
            for r in self.relationships
            if r.source == element_id and (kind is None or r.kind is kind)
        ]


@dataclasses.dataclass(frozen=True)
class Diagnostic:
    """A validator or parser finding.

    ``line`` is the 1-based raw line number for parser findings and None for
    validator findings.
    """

    severity: Severity
    code: str
    subject: str
    message: str
    line: Optional[int] = None

    def __post_init__(self) -> None:
        if self.code.startswith("E") and self.severity is not Severity.ERROR:
            raise ValueError(f"{self.code} must be an error")
        if self.code.startswith("W") and self.severity is not Severity.WARNING:
            raise ValueError(f"{self.code} must be a warning")

    @classmethod
    def error(cls, code: str, subject: str, message: str, line: Optional[int] = None) -> "Diagnostic":
        return cls(Severity.ERROR, code, subject, message, line)

    @classmethod
    def warning(cls, code: str, subject: str, message: str, line: Optional[int] = None) -> "Diagnostic":
        return cls(Severity.WARNING, code, subject, message, line)

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def format(self, path: str = "") -> str:
        loc = path
        if self.line is not None:
            loc = f"{path}:{self.line}" if path else f"line {self.line}"
        prefix = f"{loc}: " if loc else ""
        subject = f" [{self.subject}]" if self.subject else ""
        return f"{prefix}{self.code} {self.severity.value}{subject}: {self.message}"
