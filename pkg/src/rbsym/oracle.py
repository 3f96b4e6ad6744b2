"""Ground truth: property validator, brute-force path checks, an
independent textbook deletion, and the differential fuzzer.

``validate`` checks the classic red-black properties (labeled a..g, with
red-red reported under the combined label ``d/f``).  ``reference_delete``
is a separate successor-based textbook implementation sharing no fixup
logic with :mod:`rbsym.engine`; the differential contract between the two
is equal key sets plus a clean validation on both sides, not structural
equality.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .algebra import Color, weight
from .errors import DuplicateKey, KeyNotFound, RbError
from .snapshot import Snapshot, SnapshotEntry
from .tree import NIL, Tree


@dataclass(frozen=True)
class Violation:
    property: str            # "a".."g", red-red as "d/f"
    node_key: Optional[int]
    detail: str

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "nodeKey": self.node_key,
            "detail": self.detail,
        }


def validate(t: Tree) -> list[Violation]:
    """All red-black property violations, empty list for a valid tree.

    A persisting double black (node color or marked null leaf) violates
    property (a).  Black-path equality (e) counts black nodes only, NIL
    leaves contributing zero.
    """
    out: list[Violation] = []
    if t.node(NIL).color is not Color.BLACK:
        out.append(Violation("c", None, "NIL sentinel is not black"))
    if t.db_nil is not None:
        pid, side = t.db_nil
        out.append(Violation(
            "a", t.key_of(pid),
            f"double-black null leaf on the {side} of {t.key_of(pid)}",
        ))
    if t.root != NIL and t.color_of(t.root) is not Color.BLACK:
        out.append(Violation("b", t.key_of(t.root), "root is not black"))

    def walk(nid: int, lo, hi) -> int:
        """Returns the subtree black height; appends violations."""
        if nid == NIL:
            return 0
        n = t.node(nid)
        if n.color is Color.DOUBLE_BLACK:
            out.append(Violation("a", n.key, "double-black color persists"))
        if ((lo is not None and n.key <= lo)
                or (hi is not None and n.key >= hi)):
            out.append(Violation("g", n.key, "search-order violation"))
        for child in (n.left, n.right):
            if child != NIL and t.node(child).parent != nid:
                out.append(Violation(
                    "g", n.key, f"parent link of {t.key_of(child)} is stale"))
        if n.color is Color.RED:
            for child in (n.left, n.right):
                if t.color_of(child) is Color.RED:
                    out.append(Violation(
                        "d/f", n.key,
                        f"red-red at {n.key}-{t.key_of(child)}"))
        lh = walk(n.left, lo, n.key)
        rh = walk(n.right, n.key, hi)
        if lh != rh:
            out.append(Violation(
                "e", n.key,
                f"black-path counts differ below {n.key}: {lh} vs {rh}"))
        return max(lh, rh) + weight(n.color)

    walk(t.root, None, None)
    return out


def brute_force_black_path_counts(t: Tree) -> list[int]:
    """Black-node count of every root-to-NIL path, by literal enumeration."""
    if t.root == NIL:
        return [0]
    counts: list[int] = []
    stack = [(t.root, 0)]
    while stack:
        nid, acc = stack.pop()
        n = t.node(nid)
        acc += weight(n.color)
        for child in (n.left, n.right):
            if child == NIL:
                counts.append(acc)
            else:
                stack.append((child, acc))
    return counts


def weighted_path_sums(t: Tree) -> list[int]:
    """Per-path weight sums including terminal NILs (a plain NIL carries
    one black unit, the marked double-black NIL two).  Stable traversal
    order, so a recolor-only step can be compared positionally."""
    if t.root == NIL:
        return [1]
    sums: list[int] = []
    stack = [(t.root, 0)]
    while stack:
        nid, acc = stack.pop()
        n = t.node(nid)
        acc += weight(n.color)
        for side, child in (("left", n.left), ("right", n.right)):
            if child == NIL:
                nil_units = 2 if t.db_nil == (nid, side) else 1
                sums.append(acc + nil_units)
            else:
                stack.append((child, acc))
    return sums


# ---------------------------------------------------------------------------
# Independent textbook deletion (successor-based transplant fixup).
# ---------------------------------------------------------------------------

class _RefNode:
    __slots__ = ("key", "red", "left", "right", "parent")

    def __init__(self, key, red, nil=None):
        self.key = key
        self.red = red
        self.left = self.right = self.parent = nil


class ReferenceTree:
    """Plain textbook red-black tree used as the differential reference.

    Kept deliberately separate from the arena tree and the symbolic
    engine: object nodes, successor-based replacement, the standard
    four-case delete fixup.
    """

    def __init__(self):
        self.nil = _RefNode(None, False)
        self.nil.left = self.nil.right = self.nil.parent = self.nil
        self.root = self.nil

    @classmethod
    def from_tree(cls, t: Tree) -> "ReferenceTree":
        ref = cls()

        def build(nid, parent):
            if nid == NIL:
                return ref.nil
            n = t.node(nid)
            node = _RefNode(n.key, n.color is Color.RED, ref.nil)
            node.parent = parent
            node.left = build(n.left, node)
            node.right = build(n.right, node)
            return node

        ref.root = build(t.root, ref.nil)
        return ref

    def keys(self) -> list[int]:
        out = []

        def walk(n):
            if n is self.nil:
                return
            walk(n.left)
            out.append(n.key)
            walk(n.right)

        walk(self.root)
        return out

    def to_tree(self) -> Tree:
        entries = []

        def walk(n, parent_key, side):
            if n is self.nil:
                return
            walk(n.left, n.key, "left")
            entries.append(SnapshotEntry(
                n.key, Color.RED if n.red else Color.BLACK, parent_key, side))
            walk(n.right, n.key, "right")

        walk(self.root, None, "root")
        entries.sort(key=lambda e: e.key)
        return Tree.from_snapshot(Snapshot(tuple(entries)))

    def _rotate_left(self, x):
        y = x.right
        x.right = y.left
        if y.left is not self.nil:
            y.left.parent = x
        y.parent = x.parent
        if x.parent is self.nil:
            self.root = y
        elif x is x.parent.left:
            x.parent.left = y
        else:
            x.parent.right = y
        y.left = x
        x.parent = y

    def _rotate_right(self, x):
        y = x.left
        x.left = y.right
        if y.right is not self.nil:
            y.right.parent = x
        y.parent = x.parent
        if x.parent is self.nil:
            self.root = y
        elif x is x.parent.right:
            x.parent.right = y
        else:
            x.parent.left = y
        y.right = x
        x.parent = y

    def insert(self, key: int) -> None:
        parent, cur = self.nil, self.root
        while cur is not self.nil:
            parent = cur
            if key == cur.key:
                raise DuplicateKey(key)
            cur = cur.left if key < cur.key else cur.right
        z = _RefNode(key, True, self.nil)
        z.parent = parent
        if parent is self.nil:
            self.root = z
        elif key < parent.key:
            parent.left = z
        else:
            parent.right = z
        while z.parent.red:
            p = z.parent
            g = p.parent
            if p is g.left:
                u = g.right
                if u.red:
                    p.red = u.red = False
                    g.red = True
                    z = g
                else:
                    if z is p.right:
                        z = p
                        self._rotate_left(z)
                        p = z.parent
                        g = p.parent
                    p.red = False
                    g.red = True
                    self._rotate_right(g)
            else:
                u = g.left
                if u.red:
                    p.red = u.red = False
                    g.red = True
                    z = g
                else:
                    if z is p.left:
                        z = p
                        self._rotate_right(z)
                        p = z.parent
                        g = p.parent
                    p.red = False
                    g.red = True
                    self._rotate_left(g)
        self.root.red = False

    def _transplant(self, u, v):
        if u.parent is self.nil:
            self.root = v
        elif u is u.parent.left:
            u.parent.left = v
        else:
            u.parent.right = v
        v.parent = u.parent

    def delete(self, key: int) -> None:
        z = self.root
        while z is not self.nil and z.key != key:
            z = z.left if key < z.key else z.right
        if z is self.nil:
            raise KeyNotFound(key)
        y = z
        y_was_red = y.red
        if z.left is self.nil:
            x = z.right
            self._transplant(z, z.right)
        elif z.right is self.nil:
            x = z.left
            self._transplant(z, z.left)
        else:
            y = z.right
            while y.left is not self.nil:
                y = y.left
            y_was_red = y.red
            x = y.right
            if y.parent is z:
                x.parent = y
            else:
                self._transplant(y, y.right)
                y.right = z.right
                y.right.parent = y
            self._transplant(z, y)
            y.left = z.left
            y.left.parent = y
            y.red = z.red
        if not y_was_red:
            self._delete_fixup(x)

    def _delete_fixup(self, x):
        while x is not self.root and not x.red:
            if x is x.parent.left:
                w = x.parent.right
                if w.red:
                    w.red = False
                    x.parent.red = True
                    self._rotate_left(x.parent)
                    w = x.parent.right
                if not w.left.red and not w.right.red:
                    w.red = True
                    x = x.parent
                else:
                    if not w.right.red:
                        w.left.red = False
                        w.red = True
                        self._rotate_right(w)
                        w = x.parent.right
                    w.red = x.parent.red
                    x.parent.red = False
                    w.right.red = False
                    self._rotate_left(x.parent)
                    x = self.root
            else:
                w = x.parent.left
                if w.red:
                    w.red = False
                    x.parent.red = True
                    self._rotate_right(x.parent)
                    w = x.parent.left
                if not w.right.red and not w.left.red:
                    w.red = True
                    x = x.parent
                else:
                    if not w.left.red:
                        w.right.red = False
                        w.red = True
                        self._rotate_left(w)
                        w = x.parent.left
                    w.red = x.parent.red
                    x.parent.red = False
                    w.left.red = False
                    self._rotate_right(x.parent)
                    x = self.root
        x.red = False


def reference_delete(t: Tree, key: int) -> Tree:
    """Delete via the textbook algorithm; returns a new tree, ``t`` kept."""
    ref = ReferenceTree.from_tree(t)
    ref.delete(key)
    return ref.to_tree()


# ---------------------------------------------------------------------------
# Differential fuzzing.
# ---------------------------------------------------------------------------

@dataclass
class FuzzReport:
    seed: int
    ops_executed: int
    divergences: list[dict] = field(default_factory=list)
    strict_coverage: float = 1.0

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "opsExecuted": self.ops_executed,
            "divergences": self.divergences,
            "strictCoverage": self.strict_coverage,
        }


def _gen_ops(rng: random.Random, max_keys: int, length: int) -> list[tuple[str, int]]:
    """60/40 insert/delete mix, uniform keys, deletions from the live set."""
    ops: list[tuple[str, int]] = []
    live: set[int] = set()
    span = max(8, max_keys * 8)
    for _ in range(length):
        delete = live and (rng.random() < 0.4 or len(live) >= max_keys)
        if delete:
            k = rng.choice(sorted(live))
            live.discard(k)
            ops.append(("delete", k))
        else:
            k = rng.randrange(span)
            while k in live:
                k = rng.randrange(span)
            live.add(k)
            ops.append(("insert", k))
    return ops


@dataclass
class _SeqStats:
    executed: int = 0
    deletes: int = 0
    strict_ok: int = 0
    failure: Optional[dict] = None


def _run_sequence(ops: list[tuple[str, int]]) -> _SeqStats:
    from . import engine  # runtime import: engine depends on this module

    stats = _SeqStats()
    t = Tree()
    ref = ReferenceTree()
    model: set[int] = set()

    def fail(op_index, kind, detail):
        stats.failure = {"opIndex": op_index, "kind": kind, "detail": detail}

    for idx, (op, key) in enumerate(ops):
        # Shrinking can make an op redundant; skip instead of erroring out.
        if op == "insert" and key in model:
            continue
        if op == "delete" and key not in model:
            continue
        try:
            if op == "insert":
                t.insert(key)
                ref.insert(key)
                model.add(key)
            else:
                shadow = t.copy()
                report = engine.delete_key(t, key, engine.Mode.HYBRID, check=True)
                ref.delete(key)
                model.discard(key)
                stats.deletes += 1
                if engine.replay(report) != report.after:
                    fail(idx, "replay", "trace replay does not reproduce after")
                    return stats
                strict_report = None
                try:
                    strict_report = engine.delete_key(
                        shadow, key, engine.Mode.STRICT_PAPER, check=True)
                except RbError:
                    if not report.used_rotation_fallback:
                        fail(idx, "strict",
                             "strict refused a fallback-free deletion")
                        return stats
                if strict_report is not None:
                    stats.strict_ok += 1
                    if report.used_rotation_fallback:
                        fail(idx, "strict",
                             "strict succeeded where hybrid used the fallback")
                        return stats
                    same_trace = (
                        [s.to_json() for s in strict_report.trace]
                        == [s.to_json() for s in report.trace]
                    )
                    if strict_report.after != report.after or not same_trace:
                        fail(idx, "strict",
                             "strict and hybrid disagree on an all-case-A input")
                        return stats
        except (RbError, AssertionError) as exc:
            fail(idx, "exception", f"{type(exc).__name__}: {exc}")
            return stats
        stats.executed += 1

        problems = validate(t)
        if problems:
            fail(idx, "validator", "; ".join(v.detail for v in problems))
            return stats
        if t.keys() != sorted(model):
            fail(idx, "model", "key set diverged from the sorted-set model")
            return stats
        if len(set(brute_force_black_path_counts(t))) > 1:
            fail(idx, "brute-force",
                 "path enumeration disagrees with the validator")
            return stats
        ref_tree = ref.to_tree()
        if ref_tree.keys() != sorted(model) or validate(ref_tree):
            fail(idx, "reference", "reference deletion produced a bad tree")
            return stats
    return stats


def _shrink(ops: list[tuple[str, int]], max_passes: int = 3) -> list[tuple[str, int]]:
    """Greedy one-op removal while the sequence still fails."""
    current = list(ops)
    for _ in range(max_passes):
        shrunk = False
        i = 0
        while i < len(current):
            trial = current[:i] + current[i + 1:]
            if _run_sequence(trial).failure is not None:
                current = trial
                shrunk = True
            else:
                i += 1
        if not shrunk:
            break
    return current


def fuzz(seed: int, n_sequences: int = 100, max_keys: int = 16,
         ops_per_sequence: Optional[int] = None) -> FuzzReport:
    """Random insert/delete workloads with every oracle engaged per op.

    Engine-internal checking is on, so weighted-path conservation, the
    single-double-black rule, and the iteration bound are enforced at
    every recolor step; any failure is reported as a divergence with a
    minimized reproduction.
    """
    rng = random.Random(seed)
    report = FuzzReport(seed=seed, ops_executed=0)
    total_deletes = 0
    total_strict_ok = 0
    length = ops_per_sequence if ops_per_sequence is not None else 2 * max_keys
    for i in range(n_sequences):
        ops = _gen_ops(rng, max_keys, length)
        stats = _run_sequence(ops)
        report.ops_executed += stats.executed
        total_deletes += stats.deletes
        total_strict_ok += stats.strict_ok
        if stats.failure is not None:
            minimized = _shrink(ops)
            report.divergences.append({
                "sequenceIndex": i,
                **stats.failure,
                "ops": [list(o) for o in minimized],
            })
    report.strict_coverage = (
        total_strict_ok / total_deletes if total_deletes else 1.0
    )
    return report
