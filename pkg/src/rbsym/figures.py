"""Matplotlib figure rendering for tree snapshots.

Standard tiered layout: x is the in-order rank, y the negated depth.  Red
and black nodes are filled circles, NIL leaves small black squares, and a
double-black position gets a second ring.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Circle, Rectangle  # noqa: E402

from .algebra import Color
from .snapshot import Snapshot

_NODE_RADIUS = 0.32
_FILL = {Color.RED: "#c0392b", Color.BLACK: "#1c1c1c",
         Color.DOUBLE_BLACK: "#4a4a4a"}


def _positions(snap: Snapshot) -> dict[int, tuple[float, float]]:
    depth: dict[int, int] = {}
    by_key = {e.key: e for e in snap.entries}

    def depth_of(key: int) -> int:
        if key not in depth:
            parent = by_key[key].parent
            depth[key] = 0 if parent is None else depth_of(parent) + 1
        return depth[key]

    return {
        e.key: (rank, -float(depth_of(e.key)))
        for rank, e in enumerate(snap.entries)
    }


def draw_snapshot(snap: Snapshot, path: str, title: str | None = None,
                  highlight_key: int | None = None) -> str:
    """Render ``snap`` to ``path`` (format from the extension)."""
    fig, ax = plt.subplots(figsize=(max(4.0, 0.9 * (len(snap) + 1)), 4.5))
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)

    pos = _positions(snap)
    children: dict[int, dict[str, int]] = {}
    for e in snap.entries:
        if e.parent is not None:
            children.setdefault(e.parent, {})[e.side] = e.key

    for e in snap.entries:
        if e.parent is not None:
            x0, y0 = pos[e.parent]
            x1, y1 = pos[e.key]
            ax.plot([x0, x1], [y0, y1], color="gray", lw=1.2, zorder=1)

    def nil_square(x: float, y: float, double: bool) -> None:
        size = 0.26
        ax.add_patch(Rectangle(
            (x - size / 2, y - size / 2), size, size,
            facecolor="black", edgecolor="black", zorder=2,
        ))
        if double:
            pad = 0.09
            ax.add_patch(Rectangle(
                (x - size / 2 - pad, y - size / 2 - pad),
                size + 2 * pad, size + 2 * pad,
                facecolor="none", edgecolor="black", lw=1.2, zorder=2,
            ))

    for e in snap.entries:
        x, y = pos[e.key]
        kids = children.get(e.key, {})
        for side, dx in (("left", -0.38), ("right", 0.38)):
            if side not in kids:
                nx, ny = x + dx, y - 0.8
                ax.plot([x, nx], [y, ny], color="gray", lw=0.8, zorder=1)
                nil_square(nx, ny, snap.db_nil == (e.key, side))

    for e in snap.entries:
        x, y = pos[e.key]
        ax.add_patch(Circle((x, y), _NODE_RADIUS,
                            facecolor=_FILL[e.color], edgecolor="black",
                            lw=1.2, zorder=3))
        if e.color is Color.DOUBLE_BLACK:
            ax.add_patch(Circle((x, y), _NODE_RADIUS + 0.1,
                                facecolor="none", edgecolor="black",
                                lw=1.4, zorder=3))
        if e.key == highlight_key:
            ax.add_patch(Circle((x, y), _NODE_RADIUS + 0.18,
                                facecolor="none", edgecolor="#e67e22",
                                lw=2.0, zorder=3))
        ax.text(x, y, str(e.key), color="white", ha="center", va="center",
                fontsize=9, zorder=4)

    if not snap.entries:
        ax.text(0.5, 0.5, "(empty tree)", ha="center", va="center",
                transform=ax.transAxes)
    ax.relim()
    ax.autoscale_view()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path
