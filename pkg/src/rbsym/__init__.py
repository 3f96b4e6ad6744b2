"""Red-black trees with symbolic double-black removal and step tracing."""

from .algebra import ChangeFactor, Color, RuleId, Sign, apply, invert, weight
from .engine import (
    DeleteReport,
    DeletionCase,
    Mode,
    SiblingCase,
    delete_key,
    replay,
    replay_prefix,
)
from .errors import (
    DuplicateKey,
    IllFormedTree,
    InvariantViolation,
    KeyNotFound,
    MalformedSnapshot,
    ParseError,
    PreconditionViolated,
    RbError,
    UndefinedCombination,
    UnsupportedCase,
)
from .oracle import FuzzReport, Violation, fuzz, reference_delete, validate
from .snapshot import Snapshot, SnapshotEntry
from .trace import SCHEMA_VERSION, TraceStep, format_trace_csv, format_trace_text
from .tree import Tree

__version__ = "0.1.0"

__all__ = [
    "ChangeFactor", "Color", "RuleId", "Sign", "apply", "invert", "weight",
    "DeleteReport", "DeletionCase", "Mode", "SiblingCase", "delete_key",
    "replay", "replay_prefix",
    "DuplicateKey", "IllFormedTree", "InvariantViolation", "KeyNotFound",
    "MalformedSnapshot", "ParseError", "PreconditionViolated", "RbError",
    "UndefinedCombination", "UnsupportedCase",
    "FuzzReport", "Violation", "fuzz", "reference_delete", "validate",
    "Snapshot", "SnapshotEntry",
    "SCHEMA_VERSION", "TraceStep", "format_trace_csv", "format_trace_text",
    "Tree",
    "__version__",
]
