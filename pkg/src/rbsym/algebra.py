"""Symbolic color algebra for double-black removal.

The algebra is a closed, finite rule table over the three node colors.
Applying a signed color delta (the *change factor*) to a color either hits
one of the rows below or is rejected with :class:`UndefinedCombination`;
there is no general arithmetic behind the table, and operands cannot be
moved across the equals sign.

==========  =============  =======  ======
operand     change factor  result   rule
==========  =============  =======  ======
black       + black        DB       Eq1
DB          - black        black    Eq2
black       - black        red      Eq3
red         + black        black    Eq4
black       + red          black    Eq4v
red         + DB           black    Eq5
DB          + red          black    Eq5
red         - black        black    Eq6
black       - red          red      Eq6v
==========  =============  =======  ======

Notes on the two variant rows:

* ``Eq4v``: '+' is commutative in practice (both ``red + black`` and
  ``black + red`` occur), so both orderings exist under distinct ids.
* ``Eq6v``: ``black - red = red`` is used by the two-step root-resolution
  variant even though Eq6 proper reads ``red - black = black``.  Both rows
  are kept under distinct ids so traces citing either form stay
  unambiguous.  (The single-step ``Eq3`` path is what the engine emits;
  Eq5/Eq6v exist for trace-grading completeness only.)

The integer *weight* (red=0, black=1, DB=2) is an artifact-level device
used solely for black-path conservation checks.  For most rows the weight
moves by exactly the signed weight of the delta; the fixed exception list
is ``Eq5``, ``Eq6`` and ``Eq6v``, whose rows are asserted verbatim instead
(see ``WEIGHT_RULE_EXCEPTIONS``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import UndefinedCombination


class Color(enum.Enum):
    RED = "R"
    BLACK = "B"
    DOUBLE_BLACK = "DB"

    @property
    def word(self) -> str:
        """Spelled-out form used in operation text ('red', 'black', 'DB')."""
        return {"R": "red", "B": "black", "DB": "DB"}[self.value]


class Sign(enum.Enum):
    ADD = "+"
    SUBTRACT = "-"


@dataclass(frozen=True)
class ChangeFactor:
    """A signed color delta, e.g. ``-B`` or ``+R``."""

    sign: Sign
    delta: Color

    def __str__(self) -> str:
        return f"{self.sign.value}{self.delta.value}"

    @property
    def text(self) -> str:
        """Table-column form, e.g. '- black'."""
        return f"{self.sign.value} {self.delta.word}"


class RuleId(enum.Enum):
    EQ1 = "Eq1"
    EQ2 = "Eq2"
    EQ3 = "Eq3"
    EQ4 = "Eq4"
    EQ4V = "Eq4v"
    EQ5 = "Eq5"
    EQ6 = "Eq6"
    EQ6V = "Eq6v"
    ROOT_RULE = "RootRule"
    ROTATION_FALLBACK = "RotFB"


# Shorthand used only to keep the table readable.
_R, _B, _DB = Color.RED, Color.BLACK, Color.DOUBLE_BLACK
_ADD, _SUB = Sign.ADD, Sign.SUBTRACT

_TABLE: dict[tuple[Color, Sign, Color], tuple[Color, RuleId]] = {
    (_B, _ADD, _B): (_DB, RuleId.EQ1),
    (_DB, _SUB, _B): (_B, RuleId.EQ2),
    (_B, _SUB, _B): (_R, RuleId.EQ3),
    (_R, _ADD, _B): (_B, RuleId.EQ4),
    (_B, _ADD, _R): (_B, RuleId.EQ4V),
    (_R, _ADD, _DB): (_B, RuleId.EQ5),
    (_DB, _ADD, _R): (_B, RuleId.EQ5),
    (_R, _SUB, _B): (_B, RuleId.EQ6),
    (_B, _SUB, _R): (_R, RuleId.EQ6V),
}

# Rows whose result weight does not move by the signed weight of the delta.
# Fixed and documented; everything else conserves (see module docstring).
WEIGHT_RULE_EXCEPTIONS = frozenset({RuleId.EQ5, RuleId.EQ6, RuleId.EQ6V})

_WEIGHT = {Color.RED: 0, Color.BLACK: 1, Color.DOUBLE_BLACK: 2}


def apply(color: Color, cf: ChangeFactor) -> tuple[Color, RuleId]:
    """Apply a change factor to a color via the rule table.

    Returns ``(result, rule)`` or raises :class:`UndefinedCombination` for
    any pair outside the table (e.g. ``red - red``).
    """
    try:
        return _TABLE[(color, cf.sign, cf.delta)]
    except KeyError:
        raise UndefinedCombination(
            f"{color.word} {cf.sign.value} {cf.delta.word} is not a defined rule"
        ) from None


def invert(cf: ChangeFactor) -> ChangeFactor:
    """Flip the sign; the delta color is never touched."""
    flipped = Sign.SUBTRACT if cf.sign is Sign.ADD else Sign.ADD
    return ChangeFactor(flipped, cf.delta)


def weight(color: Color) -> int:
    """Black units carried by a color: red=0, black=1, DB=2."""
    return _WEIGHT[color]


def table_rows() -> list[tuple[Color, ChangeFactor, Color, RuleId]]:
    """All defined rows as (operand, change factor, result, rule)."""
    return [
        (c, ChangeFactor(s, d), res, rule)
        for (c, s, d), (res, rule) in _TABLE.items()
    ]


ALL_CHANGE_FACTORS = tuple(
    ChangeFactor(s, d) for s in Sign for d in Color
)
