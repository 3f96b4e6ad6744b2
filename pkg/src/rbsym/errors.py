"""Exception types shared across the library."""

from __future__ import annotations


class RbError(Exception):
    """Base class for all rbsym errors."""


class DuplicateKey(RbError):
    def __init__(self, key: int):
        super().__init__(f"key {key} already present")
        self.key = key


class KeyNotFound(RbError):
    def __init__(self, key: int):
        super().__init__(f"key {key} not found")
        self.key = key


class UndefinedCombination(RbError):
    """The (color, change factor) pair is outside the rule table.

    Signals a caller logic bug; colors are never silently coerced.
    """


class MalformedSnapshot(RbError):
    pass


class IllFormedTree(RbError):
    """Structural damage detected (for example, unequal black-path counts
    where a single height is required)."""


class PreconditionViolated(RbError):
    pass


class UnsupportedCase(RbError):
    """Raised in strict mode when the fixup hits a sibling configuration
    that the symbolic recolor rules cannot handle without a rotation.

    Carries the sibling case ('B' or 'C') and the sibling's key.
    """

    def __init__(self, case: str, node_key: int):
        super().__init__(f"sibling case {case} at node {node_key} requires rotation")
        self.case = case
        self.node_key = node_key


class InvariantViolation(RbError):
    """An internal engine invariant failed while checking was enabled."""


class ParseError(RbError):
    pass
