"""GSN domain model and rule engine."""

from scw.gsn.lint import semantic_lint
from scw.gsn.model import (
    Decorator,
    Diagnostic,
    ElementKind,
    GsnElement,
    Relationship,
    RelationshipKind,
    SafetyCase,
    Severity,
    kind_for_id,
)
from scw.gsn.rules import ALLOWED_CONNECTIONS, allowed_connection, has_errors, root_of, validate

__all__ = [
    "ALLOWED_CONNECTIONS",
    "Decorator",
    "Diagnostic",
    "ElementKind",
    "GsnElement",
    "Relationship",
    "RelationshipKind",
    "SafetyCase",
    "Severity",
    "allowed_connection",
    "has_errors",
    "kind_for_id",
    "root_of",
    "semantic_lint",
    "validate",
]
