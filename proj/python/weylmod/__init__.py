"""Exact differential operator algebras and their modules."""

from ._weylmod import (
    ContextMismatch,
    DomainError,
    Error,
    LevelOverflow,
    NotInvertible,
    Operator,
    ParseError,
    act,
    h_sequence,
    suite_names,
    verify,
)

__all__ = [
    "ContextMismatch",
    "DomainError",
    "Error",
    "LevelOverflow",
    "NotInvertible",
    "Operator",
    "ParseError",
    "act",
    "h_sequence",
    "suite_names",
    "verify",
]
