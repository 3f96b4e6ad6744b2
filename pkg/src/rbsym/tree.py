"""Red-black tree storage: keys, colors, parent links, NIL sentinel.

Nodes live in a contiguous arena of slots addressed by integer ids, with
slot 0 as the shared NIL sentinel (always black, no key).  Stable ids make
traces and UI highlighting cheap; snapshots are plain data.

A Tree is a single-writer value: one tree is never mutated concurrently,
distinct trees may be.  Deletion here is only the BST detach mechanics;
the double-black fixup lives in :mod:`rbsym.engine`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .algebra import ChangeFactor, Color, RuleId, Sign
from .errors import (
    DuplicateKey,
    IllFormedTree,
    KeyNotFound,
    MalformedSnapshot,
)
from .snapshot import Snapshot, SnapshotEntry
from .trace import TraceStep

NIL = 0

_KEY_MIN = -(2**63)
_KEY_MAX = 2**63 - 1


class _Node:
    __slots__ = ("key", "color", "left", "right", "parent")

    def __init__(self, key, color, left=NIL, right=NIL, parent=NIL):
        self.key = key
        self.color = color
        self.left = left
        self.right = right
        self.parent = parent


@dataclass(frozen=True)
class DetachOutcome:
    """Physical removal site produced by the BST detach step.

    ``removed_color`` is the color that left the tree: the victim's own
    color for a leaf victim, red when a red child was spliced up into a
    black victim's position (the caller recolors it, preserving the black).
    """

    site_parent: int          # node id of the site's parent (NIL if site was root)
    site_side: str            # "left" | "right" | "root"
    site_id: int              # splice child id, or NIL when the site is empty
    removed_color: Color
    splice_child: int         # NIL when the victim was a leaf
    used_predecessor: bool
    target_was_root: bool


class Tree:
    """Keyed red-black tree over an arena of node slots."""

    def __init__(self):
        nil = _Node(None, Color.BLACK)
        self._nodes: list[_Node] = [nil]
        self._free: list[int] = []
        self.root: int = NIL
        self.count: int = 0
        # (parent id, side) of a NIL currently carrying two black units.
        self._db_nil: Optional[tuple[int, str]] = None

    # -- slot helpers -------------------------------------------------

    def node(self, nid: int) -> _Node:
        return self._nodes[nid]

    def key_of(self, nid: int) -> int:
        return self._nodes[nid].key

    def color_of(self, nid: int) -> Color:
        return self._nodes[nid].color

    def _alloc(self, key: int, color: Color) -> int:
        if self._free:
            nid = self._free.pop()
            n = self._nodes[nid]
            n.key, n.color = key, color
            n.left = n.right = n.parent = NIL
        else:
            self._nodes.append(_Node(key, color))
            nid = len(self._nodes) - 1
        return nid

    def _release(self, nid: int) -> None:
        n = self._nodes[nid]
        n.key = None
        n.left = n.right = n.parent = NIL
        n.color = Color.BLACK
        self._free.append(nid)

    @property
    def db_nil(self) -> Optional[tuple[int, str]]:
        return self._db_nil

    def set_db_nil(self, parent: int, side: str) -> None:
        self._db_nil = (parent, side)

    def clear_db_nil(self) -> None:
        self._db_nil = None

    # -- queries ------------------------------------------------------

    def search(self, key: int) -> int:
        cur = self.root
        while cur != NIL:
            n = self._nodes[cur]
            if key == n.key:
                return cur
            cur = n.left if key < n.key else n.right
        return NIL

    def __contains__(self, key: int) -> bool:
        return self.search(key) != NIL

    def __len__(self) -> int:
        return self.count

    def in_order(self) -> Iterator[int]:
        stack, cur = [], self.root
        while stack or cur != NIL:
            while cur != NIL:
                stack.append(cur)
                cur = self._nodes[cur].left
            cur = stack.pop()
            yield cur
            cur = self._nodes[cur].right

    def keys(self) -> list[int]:
        return [self._nodes[nid].key for nid in self.in_order()]

    def minimum(self, nid: int) -> int:
        while self._nodes[nid].left != NIL:
            nid = self._nodes[nid].left
        return nid

    def maximum(self, nid: int) -> int:
        while self._nodes[nid].right != NIL:
            nid = self._nodes[nid].right
        return nid

    def side_of(self, nid: int) -> str:
        parent = self._nodes[nid].parent
        if parent == NIL:
            return "root"
        return "left" if self._nodes[parent].left == nid else "right"

    def height_nodes(self) -> int:
        """Nodes on the longest root-to-leaf path (0 for the empty tree)."""

        def depth(nid: int) -> int:
            if nid == NIL:
                return 0
            n = self._nodes[nid]
            return 1 + max(depth(n.left), depth(n.right))

        return depth(self.root)

    def height(self) -> int:
        """Edges on the longest root-to-leaf path."""
        return max(0, self.height_nodes() - 1)

    def black_height(self, nid: int) -> int:
        """Black non-NIL nodes from ``nid`` (exclusive) down to each NIL.

        All paths must agree; raises IllFormedTree otherwise.  NIL leaves
        are black but contribute 0 by this library's convention.
        """

        def rec(v: int) -> int:
            if v == NIL:
                return 0
            n = self._nodes[v]
            lh = rec(n.left)
            rh = rec(n.right)
            if lh != rh:
                raise IllFormedTree(
                    f"black-path mismatch below key {n.key}: {lh} vs {rh}"
                )
            return lh + (1 if n.color is Color.BLACK else 0)

        if nid == NIL:
            return 0
        n = self._nodes[nid]
        lh = rec(n.left)
        rh = rec(n.right)
        if lh != rh:
            raise IllFormedTree(
                f"black-path mismatch below key {n.key}: {lh} vs {rh}"
            )
        return lh

    # -- rotations ----------------------------------------------------

    def rotate_left(self, x: int) -> None:
        y = self._nodes[x].right
        assert y != NIL
        self._nodes[x].right = self._nodes[y].left
        if self._nodes[y].left != NIL:
            self._nodes[self._nodes[y].left].parent = x
        self._nodes[y].parent = self._nodes[x].parent
        p = self._nodes[x].parent
        if p == NIL:
            self.root = y
        elif self._nodes[p].left == x:
            self._nodes[p].left = y
        else:
            self._nodes[p].right = y
        self._nodes[y].left = x
        self._nodes[x].parent = y

    def rotate_right(self, x: int) -> None:
        y = self._nodes[x].left
        assert y != NIL
        self._nodes[x].left = self._nodes[y].right
        if self._nodes[y].right != NIL:
            self._nodes[self._nodes[y].right].parent = x
        self._nodes[y].parent = self._nodes[x].parent
        p = self._nodes[x].parent
        if p == NIL:
            self.root = y
        elif self._nodes[p].right == x:
            self._nodes[p].right = y
        else:
            self._nodes[p].left = y
        self._nodes[y].right = x
        self._nodes[x].parent = y

    # -- insertion ----------------------------------------------------

    def insert(self, key: int, record_steps: bool = False) -> list[TraceStep]:
        """Standard red-black insert.

        With ``record_steps``, every recolor performed by the textbook
        fixup is emitted as a trace row flagged RotFB (standard-insert
        lineage); callers doing bulk builds leave it off.
        """
        if not (_KEY_MIN <= key <= _KEY_MAX):
            raise ValueError(f"key {key} outside signed 64-bit range")
        parent, cur = NIL, self.root
        while cur != NIL:
            parent = cur
            n = self._nodes[cur]
            if key == n.key:
                raise DuplicateKey(key)
            cur = n.left if key < n.key else n.right
        nid = self._alloc(key, Color.RED)
        self._nodes[nid].parent = parent
        if parent == NIL:
            self.root = nid
        elif key < self._nodes[parent].key:
            self._nodes[parent].left = nid
        else:
            self._nodes[parent].right = nid
        self.count += 1
        steps: list[TraceStep] = []
        self._insert_fixup(nid, steps if record_steps else None)
        return steps

    def _recolor(self, nid: int, color: Color,
                 steps: Optional[list[TraceStep]]) -> None:
        n = self._nodes[nid]
        if n.color is color:
            return
        old = n.color
        n.color = color
        if steps is None:
            return
        from .oracle import validate  # lazy: oracle imports this module

        sign = Sign.ADD if color is Color.BLACK else Sign.SUBTRACT
        cf = ChangeFactor(sign, Color.BLACK)
        steps.append(TraceStep(
            step=len(steps) + 1,
            description="standard-insert fixup recolor",
            operated_node=str(n.key),
            operated_key=n.key,
            initial_color=old,
            operation=f"{old.word}({n.key}) {sign.value} black = {color.word}",
            eq_used=RuleId.ROTATION_FALLBACK,
            change_factor=cf,
            final_color=color,
            final_color_text=f"{color.word}({n.key})",
            balanced=not validate(self),
        ))

    def _insert_fixup(self, z: int, steps: Optional[list[TraceStep]]) -> None:
        while self._nodes[self._nodes[z].parent].color is Color.RED:
            p = self._nodes[z].parent
            g = self._nodes[p].parent
            if self._nodes[g].left == p:
                u = self._nodes[g].right
                if self._nodes[u].color is Color.RED:
                    self._recolor(p, Color.BLACK, steps)
                    self._recolor(u, Color.BLACK, steps)
                    self._recolor(g, Color.RED, steps)
                    z = g
                else:
                    if self._nodes[p].right == z:
                        z = p
                        self.rotate_left(z)
                        p = self._nodes[z].parent
                        g = self._nodes[p].parent
                    self._recolor(p, Color.BLACK, steps)
                    self._recolor(g, Color.RED, steps)
                    self.rotate_right(g)
            else:
                u = self._nodes[g].left
                if self._nodes[u].color is Color.RED:
                    self._recolor(p, Color.BLACK, steps)
                    self._recolor(u, Color.BLACK, steps)
                    self._recolor(g, Color.RED, steps)
                    z = g
                else:
                    if self._nodes[p].left == z:
                        z = p
                        self.rotate_right(z)
                        p = self._nodes[z].parent
                        g = self._nodes[p].parent
                    self._recolor(p, Color.BLACK, steps)
                    self._recolor(g, Color.RED, steps)
                    self.rotate_left(g)
        self._recolor(self.root, Color.BLACK, steps)

    # -- deletion mechanics (no fixup) ---------------------------------

    def bst_detach(self, key: int) -> DetachOutcome:
        """Physically remove ``key`` per BST rules; no rebalancing.

        A target with a left subtree is replaced by its in-order
        predecessor (rightmost node of the left subtree) via key
        overwrite, position color unchanged; the predecessor's old slot is
        the physical site.  A target with only a right child has the child
        spliced into its position (the caller recolors it).
        """
        target = self.search(key)
        if target == NIL:
            raise KeyNotFound(key)
        target_was_root = target == self.root
        used_predecessor = False
        if self._nodes[target].left != NIL:
            victim = self.maximum(self._nodes[target].left)
            self._nodes[target].key = self._nodes[victim].key
            used_predecessor = True
        else:
            victim = target
        v = self._nodes[victim]
        child = v.left if v.left != NIL else v.right
        parent = v.parent
        side = self.side_of(victim)
        if child != NIL:
            if not (v.color is Color.BLACK
                    and self._nodes[child].color is Color.RED):
                raise IllFormedTree(
                    "single-child victim must be black with a red child"
                )
            self._nodes[child].parent = parent
        if parent == NIL:
            self.root = child
        elif side == "left":
            self._nodes[parent].left = child
        else:
            self._nodes[parent].right = child
        removed = Color.RED if child != NIL else v.color
        self._release(victim)
        self.count -= 1
        return DetachOutcome(
            site_parent=parent,
            site_side=side,
            site_id=child,
            removed_color=removed,
            splice_child=child,
            used_predecessor=used_predecessor,
            target_was_root=target_was_root,
        )

    # -- snapshots ------------------------------------------------------

    def snapshot(self) -> Snapshot:
        entries = []
        for nid in self.in_order():
            n = self._nodes[nid]
            parent_key = (
                None if n.parent == NIL else self._nodes[n.parent].key
            )
            entries.append(SnapshotEntry(
                n.key, n.color, parent_key, self.side_of(nid)
            ))
        db_nil = None
        if self._db_nil is not None:
            pid, side = self._db_nil
            db_nil = (self._nodes[pid].key, side)
        return Snapshot(tuple(entries), db_nil)

    def load(self, snap: Snapshot) -> None:
        """Rebuild this tree in place from a completed-tree snapshot."""
        if snap.db_nil is not None:
            raise MalformedSnapshot("snapshot carries an unresolved double-black")
        by_key: dict[int, SnapshotEntry] = {}
        roots = []
        for e in snap.entries:
            if e.key in by_key:
                raise MalformedSnapshot(f"duplicate key {e.key}")
            if e.color is Color.DOUBLE_BLACK:
                raise MalformedSnapshot(f"double-black color on key {e.key}")
            if (e.parent is None) != (e.side == "root"):
                raise MalformedSnapshot(f"inconsistent root marking on {e.key}")
            by_key[e.key] = e
            if e.parent is None:
                roots.append(e)
        if snap.entries and len(roots) != 1:
            raise MalformedSnapshot(f"expected exactly one root, got {len(roots)}")
        if roots and roots[0].color is not Color.BLACK:
            raise MalformedSnapshot("root must be black")

        nil = _Node(None, Color.BLACK)
        self._nodes = [nil]
        self._free = []
        self.root = NIL
        self.count = 0
        self._db_nil = None
        if not snap.entries:
            return

        ids = {e.key: self._alloc(e.key, e.color) for e in snap.entries}
        for e in snap.entries:
            if e.parent is None:
                continue
            if e.parent not in ids:
                raise MalformedSnapshot(f"unknown parent {e.parent} for {e.key}")
            pid = ids[e.parent]
            nid = ids[e.key]
            pnode = self._nodes[pid]
            if e.side == "left":
                if pnode.left != NIL:
                    raise MalformedSnapshot(f"two left children under {e.parent}")
                pnode.left = nid
            elif e.side == "right":
                if pnode.right != NIL:
                    raise MalformedSnapshot(f"two right children under {e.parent}")
                pnode.right = nid
            else:
                raise MalformedSnapshot(f"bad side {e.side!r} for {e.key}")
            self._nodes[nid].parent = pid
        self.root = ids[roots[0].key]
        self.count = len(snap.entries)

        reached = list(self.in_order())
        if len(reached) != self.count:
            raise MalformedSnapshot("entries are not a single tree")
        keys = [self._nodes[nid].key for nid in reached]
        if keys != sorted(keys):
            raise MalformedSnapshot("search-order violation")

    @classmethod
    def from_snapshot(cls, snap: Snapshot) -> "Tree":
        t = cls()
        t.load(snap)
        return t

    @classmethod
    def from_keys(cls, keys) -> "Tree":
        t = cls()
        for k in keys:
            t.insert(k)
        return t

    def copy(self) -> "Tree":
        return Tree.from_snapshot(self.snapshot())
