"""Trace steps: one row per color update, in the worked-table format.

Column set and order are fixed:
Steps, Description, Operated node, Initial color, Operation, Eq. used,
Change factor, Final color, Tree balanced or not.

Rows that accompany a structural change (rotations in hybrid mode) carry a
full snapshot of the tree after the step, so a trace can be replayed over
the deletion's snapshots without any tree logic.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Optional

from .algebra import ChangeFactor, Color, RuleId
from .snapshot import Snapshot

SCHEMA_VERSION = "1.0"

TABLE_COLUMNS = (
    "Steps",
    "Description",
    "Operated node",
    "Initial color",
    "Operation",
    "Eq. used",
    "Change factor",
    "Final color",
    "Tree balanced or not",
)

# Display label for a rule row operating on the double-black null leaf.
DB_NODE_LABEL = "DB Node"


@dataclass
class TraceStep:
    step: int
    description: str
    operated_node: str            # key as text, or "DB Node" for the null leaf
    operated_key: Optional[int]   # None when the row operates on the null leaf
    initial_color: Color
    operation: str                # e.g. "black(20) - black = red"
    eq_used: RuleId
    change_factor: ChangeFactor
    final_color: Color
    final_color_text: str         # e.g. "red(20)", "black NULL", "DB(30)"
    balanced: bool
    snapshot_after: Optional[Snapshot] = field(default=None)

    def row(self) -> tuple[str, ...]:
        """Cells in table column order."""
        return (
            str(self.step),
            self.description,
            self.operated_node,
            self.initial_color.word,
            self.operation,
            self.eq_used.value,
            self.change_factor.text,
            self.final_color_text,
            "YES" if self.balanced else "NO",
        )

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "description": self.description,
            "operatedNode": self.operated_node,
            "operatedKey": self.operated_key,
            "initialColor": self.initial_color.value,
            "operation": self.operation,
            "eqUsed": self.eq_used.value,
            "changeFactor": str(self.change_factor),
            "finalColor": self.final_color_text,
            "finalColorCode": self.final_color.value,
            "balanced": "YES" if self.balanced else "NO",
            "snapshotAfter": (
                self.snapshot_after.to_json() if self.snapshot_after else None
            ),
        }


def format_trace_text(steps: list[TraceStep]) -> str:
    """Tab-separated table, header row byte-stable."""
    lines = ["\t".join(TABLE_COLUMNS)]
    lines.extend("\t".join(s.row()) for s in steps)
    return "\n".join(lines) + "\n"


def format_trace_csv(steps: list[TraceStep]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for s in steps:
        writer.writerow(s.row())
    return buf.getvalue()
