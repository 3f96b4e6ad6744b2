"""Text views of a snapshot: sideways ASCII and Graphviz DOT.

Nodes are labeled ``key [color]``; NIL leaves are drawn as boxes in the
DOT output and double-black positions are visually distinct in both.
"""

from __future__ import annotations

from .algebra import Color
from .snapshot import Snapshot


def _child_map(snap: Snapshot) -> tuple[int | None, dict]:
    root = None
    children: dict[int, dict[str, int]] = {}
    for e in snap.entries:
        if e.parent is None:
            root = e.key
        else:
            children.setdefault(e.parent, {})[e.side] = e.key
    return root, children


def render_ascii(snap: Snapshot) -> str:
    """Sideways tree, right subtree on top; double-black NILs shown."""
    if not snap.entries:
        return "(empty tree)\n"
    root, children = _child_map(snap)
    colors = {e.key: e.color for e in snap.entries}
    lines: list[str] = []

    def emit(key: int, depth: int) -> None:
        kids = children.get(key, {})
        right = kids.get("right")
        if right is not None:
            emit(right, depth + 1)
        elif snap.db_nil == (key, "right"):
            lines.append("    " * (depth + 1) + "NIL [DB]")
        lines.append("    " * depth + f"{key} [{colors[key].value}]")
        left = kids.get("left")
        if left is not None:
            emit(left, depth + 1)
        elif snap.db_nil == (key, "left"):
            lines.append("    " * (depth + 1) + "NIL [DB]")

    emit(root, 0)
    return "\n".join(lines) + "\n"


def render_dot(snap: Snapshot) -> str:
    """Graphviz digraph with NIL boxes, keys in sorted order."""
    lines = [
        "digraph rbtree {",
        '  node [fontname="Helvetica", style=filled, fontcolor=white];',
    ]
    children = _child_map(snap)[1]
    for e in snap.entries:
        fill = {"R": "red3", "B": "black", "DB": "gray25"}[e.color.value]
        extra = ", peripheries=2" if e.color is Color.DOUBLE_BLACK else ""
        lines.append(
            f'  "{e.key}" [label="{e.key} [{e.color.value}]", '
            f"shape=circle, fillcolor={fill}{extra}];"
        )
    for e in snap.entries:
        kids = children.get(e.key, {})
        for side in ("left", "right"):
            child = kids.get(side)
            if child is not None:
                lines.append(f'  "{e.key}" -> "{child}";')
            else:
                nil_id = f"nil_{e.key}_{side[0]}"
                if snap.db_nil == (e.key, side):
                    label, extra = "NIL [DB]", ", peripheries=2"
                else:
                    label, extra = "NIL", ""
                lines.append(
                    f'  "{nil_id}" [label="{label}", shape=box, '
                    f"fillcolor=black, fontsize=10{extra}];"
                )
                lines.append(f'  "{e.key}" -> "{nil_id}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
