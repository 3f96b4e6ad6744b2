"""Shared worked scenarios: small trees with known deletion traces.

T1/T2 delete a black leaf, T3 an internal red node (predecessor
replacement), T5 the root (predecessor replacement reaching the root
rule).  CASE_B and CASE_C are the rotation-requiring configurations the
strict mode must refuse.
"""

from __future__ import annotations

from rbsym import Color
from rbsym.snapshot import Snapshot, SnapshotEntry
from rbsym.tree import Tree

B, R = Color.BLACK, Color.RED


def snap(*rows) -> Snapshot:
    return Snapshot(tuple(SnapshotEntry(*row) for row in rows))


T1 = snap((20, B, 30, "left"), (30, B, None, "root"), (35, B, 30, "right"))
T1_DELETE = 35
T1_EQS = ["Eq2", "Eq3", "Eq1", "RootRule"]
T1_FINAL = snap((20, R, 30, "left"), (30, B, None, "root"))

T2 = snap(
    (2, B, 5, "left"), (5, R, 30, "left"), (20, B, 5, "right"),
    (30, B, None, "root"), (40, B, 30, "right"),
)
T2_DELETE = 20
T2_EQS = ["Eq2", "Eq3", "Eq4"]
T2_FINAL = snap(
    (2, R, 5, "left"), (5, B, 30, "left"),
    (30, B, None, "root"), (40, B, 30, "right"),
)

T3 = snap(
    (5, B, 10, "left"), (10, B, None, "root"), (15, B, 25, "left"),
    (25, R, 10, "right"), (28, B, 25, "right"),
)
T3_DELETE = 25
T3_EQS = ["Eq2", "Eq3", "Eq4"]
T3_FINAL = snap(
    (5, B, 10, "left"), (10, B, None, "root"),
    (15, B, 10, "right"), (28, R, 15, "right"),
)

T5 = snap((10, B, 15, "left"), (15, B, None, "root"), (30, B, 15, "right"))
T5_DELETE = 15
T5_EQS = ["Eq2", "Eq3", "Eq1", "RootRule"]
T5_FINAL = snap((10, B, None, "root"), (30, R, 10, "right"))

# Deleting an internal black node replaced by its red predecessor: no
# double black forms and the trace is empty.
FIG8 = snap(
    (5, R, 10, "left"), (10, B, 20, "left"),
    (20, B, None, "root"), (30, B, 20, "right"),
)
FIG8_DELETE = 10
FIG8_FINAL = snap(
    (5, B, 20, "left"), (20, B, None, "root"), (30, B, 20, "right"),
)

# Deleting the root, replaced by the red rightmost key of its left subtree.
FIG9 = snap(
    (5, R, 10, "left"), (10, B, 20, "left"), (15, R, 10, "right"),
    (20, B, None, "root"), (30, B, 20, "right"),
)
FIG9_DELETE = 20
FIG9_FINAL = snap(
    (5, R, 10, "left"), (10, B, 15, "left"),
    (15, B, None, "root"), (30, B, 15, "right"),
)

# Red sibling: deleting 5 puts the double black opposite red node 20.
CASE_B = snap(
    (5, B, 10, "left"), (10, B, None, "root"), (15, B, 20, "left"),
    (20, R, 10, "right"), (30, B, 20, "right"),
)
CASE_B_DELETE = 5
CASE_B_SIBLING = 20

# Black sibling with a red child: the recolor triple would create a
# red-red pair at 20-30, so the classification must divert it.
CASE_C = snap(
    (5, B, 10, "left"), (10, B, None, "root"),
    (20, B, 10, "right"), (30, R, 20, "right"),
)
CASE_C_DELETE = 5
CASE_C_SIBLING = 20


def tree(s: Snapshot) -> Tree:
    return Tree.from_snapshot(s)
