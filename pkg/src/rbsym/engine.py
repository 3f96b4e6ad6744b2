"""Double-black removal by symbolic recoloring.

Deleting a black leaf (or a black predecessor slot) leaves a NIL carrying
two black units.  The fixup walks upward: each iteration subtracts a black
from the double-black node and its sibling and adds one to their parent,
then recurs on the parent if it became double-black.  A double-black root
loses its extra black directly (root rule).

The symbolic rules only cover iterations whose sibling is black with no
red child (case A).  A red sibling (case B) or a black sibling with a red
child (case C) needs a rotation: in hybrid mode a standard textbook
rotation is applied with every color change traced under the RotFB rule
id; in strict mode the call refuses with UnsupportedCase and the tree is
rolled back untouched.

Every color update is one trace row.  Rows that accompany a rotation also
carry a snapshot of the tree after the step so traces stay replayable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

from . import algebra
from .algebra import ChangeFactor, Color, RuleId, Sign
from .errors import InvariantViolation, PreconditionViolated, UnsupportedCase
from .oracle import validate, weighted_path_sums
from .snapshot import Snapshot
from .trace import DB_NODE_LABEL, TraceStep
from .tree import NIL, DetachOutcome, Tree

MINUS_B = ChangeFactor(Sign.SUBTRACT, Color.BLACK)
PLUS_B = ChangeFactor(Sign.ADD, Color.BLACK)


class Mode(enum.Enum):
    HYBRID = "hybrid"
    STRICT_PAPER = "strict-paper"


class DeletionCase(enum.Enum):
    RED_LEAF = "RedLeaf"
    BLACK_LEAF = "BlackLeafOrNilSite"
    INTERNAL_VIA_PREDECESSOR = "InternalViaPredecessor"
    ROOT_VIA_PREDECESSOR = "RootViaPredecessor"
    SPLICE_ONLY_CHILD = "SpliceOnlyChild"


class SiblingCase(enum.Enum):
    A = "A"   # black sibling, both children black or NIL: recolor-only
    B = "B"   # red sibling: rotation territory
    C = "C"   # black sibling with a red child: rotation territory


# Where the double black currently sits: on a NIL slot or on a real node.
DbSite = Union[tuple[str, int, str], tuple[str, int], None]


@dataclass(frozen=True)
class FixupContext:
    """One fixup iteration: u is the double-black (NIL id when it sits on
    the null leaf), s its sibling, p their shared parent."""

    u: int
    s: int
    p: int
    u_side: str   # side of u under p


@dataclass
class DeleteReport:
    key: int
    deletion_case: DeletionCase
    sibling_cases: list[SiblingCase]
    mode: Mode
    trace: list[TraceStep]
    before: Snapshot
    after_detach: Snapshot
    after: Snapshot
    used_rotation_fallback: bool

    def to_json(self) -> dict:
        return {
            "key": self.key,
            "deletionCase": self.deletion_case.value,
            "siblingCases": [c.value for c in self.sibling_cases],
            "mode": self.mode.value,
            "usedRotationFallback": self.used_rotation_fallback,
            "before": self.before.to_json(),
            "afterDetach": self.after_detach.to_json(),
            "after": self.after.to_json(),
            "trace": [s.to_json() for s in self.trace],
        }


def _balanced(tree: Tree) -> bool:
    return not validate(tree)


def _step(tree, n, desc, label, key, initial, op, eq, cf, final, final_text):
    return TraceStep(
        step=n,
        description=desc,
        operated_node=label,
        operated_key=key,
        initial_color=initial,
        operation=op,
        eq_used=eq,
        change_factor=cf,
        final_color=final,
        final_color_text=final_text,
        balanced=_balanced(tree),
    )


def classify_deletion(outcome: DetachOutcome) -> DeletionCase:
    if outcome.used_predecessor:
        if outcome.target_was_root:
            return DeletionCase.ROOT_VIA_PREDECESSOR
        return DeletionCase.INTERNAL_VIA_PREDECESSOR
    if outcome.splice_child != NIL:
        return DeletionCase.SPLICE_ONLY_CHILD
    if outcome.removed_color is Color.RED:
        return DeletionCase.RED_LEAF
    return DeletionCase.BLACK_LEAF


def _seed_marker(tree: Tree, outcome: DetachOutcome) -> DbSite:
    """Form the double black, if any (no trace row: the formation shows up
    in the post-detach snapshot, and the worked tables start at removal)."""
    if outcome.removed_color is Color.RED:
        return None
    assert outcome.splice_child == NIL, "black removal never splices"
    if outcome.site_side == "root":
        return None   # removing the last node leaves an empty, balanced tree
    tree.set_db_nil(outcome.site_parent, outcome.site_side)
    return ("nil", outcome.site_parent, outcome.site_side)


def _seed_recolor(tree: Tree, outcome: DetachOutcome,
                  step_base: int) -> list[TraceStep]:
    if outcome.removed_color is not Color.RED or outcome.splice_child == NIL:
        return []
    child = outcome.splice_child
    k = tree.key_of(child)
    final, rule = algebra.apply(Color.RED, PLUS_B)
    tree.node(child).color = final
    return [_step(
        tree, step_base,
        f"Apply simple-case recolor to replacement node {k}",
        str(k), k, Color.RED,
        f"red({k}) + black = black",
        rule, PLUS_B, final, f"black({k})",
    )]


def seed_double_black(tree: Tree, outcome: DetachOutcome,
                      step_base: int = 1) -> tuple[DbSite, list[TraceStep]]:
    """Red removal: no double black, one Eq4 row when a spliced red child
    is recolored.  Black removal: the NIL at the site takes the extra
    black, unless the site was the root (empty tree stays balanced)."""
    db = _seed_marker(tree, outcome)
    return db, _seed_recolor(tree, outcome, step_base)


def make_context(tree: Tree, db: DbSite) -> FixupContext:
    if db is None:
        raise PreconditionViolated("no double black to fix")
    if db[0] == "nil":
        _, p, side = db
        u = NIL
    else:
        u = db[1]
        p = tree.node(u).parent
        side = tree.side_of(u)
    s = tree.node(p).right if side == "left" else tree.node(p).left
    if s == NIL:
        raise PreconditionViolated(
            "double black has no sibling; tree was not a valid red-black tree"
        )
    return FixupContext(u=u, s=s, p=p, u_side=side)


def classify_sibling(tree: Tree, ctx: FixupContext) -> SiblingCase:
    sn = tree.node(ctx.s)
    if sn.color is Color.RED:
        return SiblingCase.B
    if (tree.color_of(sn.left) is Color.RED
            or tree.color_of(sn.right) is Color.RED):
        return SiblingCase.C
    return SiblingCase.A


def _check_db_count(tree: Tree) -> None:
    dbs = sum(
        1 for nid in tree.in_order()
        if tree.color_of(nid) is Color.DOUBLE_BLACK
    )
    if tree.db_nil is not None:
        dbs += 1
    if dbs > 1:
        raise InvariantViolation(f"{dbs} double-black nodes present at once")


def recolor_iteration(tree: Tree, ctx: FixupContext, step_base: int = 1,
                      check: bool = False) -> tuple[DbSite, list[TraceStep]]:
    """The recolor triple: subtract a black from the double black and its
    sibling, add one to the parent.  Requires sibling case A.  Returns the
    parent as the next double black when it was black, none when red."""
    u_is_nil = ctx.u == NIL
    if u_is_nil:
        if tree.db_nil != (ctx.p, ctx.u_side):
            raise PreconditionViolated("context does not hold the double black")
    elif tree.color_of(ctx.u) is not Color.DOUBLE_BLACK:
        raise PreconditionViolated("context does not hold the double black")
    if classify_sibling(tree, ctx) is not SiblingCase.A:
        raise PreconditionViolated("recolor triple requires sibling case A")

    sums_before = weighted_path_sums(tree) if check else None
    steps: list[TraceStep] = []

    if u_is_nil:
        tree.clear_db_nil()
        _, rule = algebra.apply(Color.DOUBLE_BLACK, MINUS_B)
        steps.append(_step(
            tree, step_base,
            "To remove double black on null leaf",
            DB_NODE_LABEL, None, Color.DOUBLE_BLACK,
            "DB - black = black",
            rule, MINUS_B, Color.BLACK, "black NULL",
        ))
    else:
        uk = tree.key_of(ctx.u)
        final, rule = algebra.apply(Color.DOUBLE_BLACK, MINUS_B)
        tree.node(ctx.u).color = final
        steps.append(_step(
            tree, step_base,
            f"To remove double black on node {uk}",
            str(uk), uk, Color.DOUBLE_BLACK,
            f"DB({uk}) - black = black",
            rule, MINUS_B, final, f"black({uk})",
        ))

    sk = tree.key_of(ctx.s)
    final, rule = algebra.apply(Color.BLACK, MINUS_B)
    tree.node(ctx.s).color = final
    steps.append(_step(
        tree, step_base + 1,
        f"Apply the change factor to Node {sk} to balance",
        str(sk), sk, Color.BLACK,
        f"black({sk}) - black = red",
        rule, MINUS_B, final, f"red({sk})",
    ))

    pk = tree.key_of(ctx.p)
    p_was = tree.color_of(ctx.p)
    final, rule = algebra.apply(p_was, PLUS_B)
    tree.node(ctx.p).color = final
    if p_was is Color.BLACK:
        op = f"black({pk}) + black = DB"
        final_text = f"DB({pk})"
        next_db: DbSite = ("node", ctx.p)
    else:
        op = f"red({pk}) + black = black"
        final_text = f"black({pk})"
        next_db = None
    steps.append(_step(
        tree, step_base + 2,
        f"Inverse the change factor and apply to Node {pk} to balance",
        str(pk), pk, p_was, op, rule, PLUS_B, final, final_text,
    ))

    if check:
        sums_after = weighted_path_sums(tree)
        if sums_before != sums_after:
            raise InvariantViolation(
                f"recolor triple changed weighted path sums: "
                f"{sums_before} -> {sums_after}"
            )
        _check_db_count(tree)
    return next_db, steps


def resolve_root_db(tree: Tree, step_base: int = 1) -> list[TraceStep]:
    """A double-black root simply drops its extra black and the fixup ends."""
    root = tree.root
    if root == NIL or tree.color_of(root) is not Color.DOUBLE_BLACK:
        raise PreconditionViolated("root is not double black")
    rk = tree.key_of(root)
    tree.node(root).color = Color.BLACK
    return [_step(
        tree, step_base,
        "Remove double black on root node",
        str(rk), rk, Color.DOUBLE_BLACK,
        f"DB({rk}) - black = black",
        RuleId.ROOT_RULE, MINUS_B, Color.BLACK, f"black({rk})",
    )]


def _fallback_recolor(tree: Tree, nid: int, color: Color, desc: str,
                      steps: list[TraceStep], step_base: int) -> None:
    n = tree.node(nid)
    if n.color is color:
        return
    old = n.color
    n.color = color
    sign = Sign.ADD if algebra.weight(color) > algebra.weight(old) else Sign.SUBTRACT
    k = n.key
    steps.append(_step(
        tree, step_base + len(steps), desc,
        str(k), k, old,
        f"{old.word}({k}) {sign.value} black = {color.word}",
        RuleId.ROTATION_FALLBACK, ChangeFactor(sign, Color.BLACK),
        color, f"{color.word}({k})",
    ))


def _resolve_db_row(tree: Tree, db: DbSite, desc: str,
                    steps: list[TraceStep], step_base: int) -> None:
    if db[0] == "nil":
        tree.clear_db_nil()
        steps.append(_step(
            tree, step_base + len(steps), desc,
            DB_NODE_LABEL, None, Color.DOUBLE_BLACK,
            "DB - black = black",
            RuleId.ROTATION_FALLBACK, MINUS_B, Color.BLACK, "black NULL",
        ))
    else:
        u = db[1]
        uk = tree.key_of(u)
        tree.node(u).color = Color.BLACK
        steps.append(_step(
            tree, step_base + len(steps), desc,
            str(uk), uk, Color.DOUBLE_BLACK,
            f"DB({uk}) - black = black",
            RuleId.ROTATION_FALLBACK, MINUS_B, Color.BLACK, f"black({uk})",
        ))


def rotation_fallback(tree: Tree, ctx: FixupContext, case: SiblingCase,
                      step_base: int = 1) -> tuple[DbSite, list[TraceStep]]:
    """Standard textbook rotation handling for cases B and C (hybrid mode
    only; not part of the symbolic rule set, every row flagged RotFB).

    Case B turns into a case A or C on the same double black; case C
    eliminates the double black.  The last row of each rotation group
    carries a post-rotation snapshot so replay can follow the structure.
    """
    if case is SiblingCase.A:
        raise PreconditionViolated("case A is handled by the recolor triple")
    steps: list[TraceStep] = []
    p, s, u_side = ctx.p, ctx.s, ctx.u_side
    left_side = u_side == "left"
    rotate_toward_u = tree.rotate_left if left_side else tree.rotate_right

    if case is SiblingCase.B:
        pk = tree.key_of(p)
        direction = "left" if left_side else "right"
        _fallback_recolor(
            tree, s, Color.BLACK,
            "rotation fallback: recolor red sibling black", steps, step_base)
        _fallback_recolor(
            tree, p, Color.RED,
            f"rotation fallback: recolor parent red, then rotate "
            f"{direction} around {pk}", steps, step_base)
        rotate_toward_u(p)
        steps[-1].snapshot_after = tree.snapshot()
        steps[-1].balanced = _balanced(tree)
        if ctx.u == NIL:
            return ("nil", p, u_side), steps
        return ("node", ctx.u), steps

    # Case C: make the far child red if only the near one is, then the
    # single terminal rotation absorbs the extra black.
    sn = tree.node(s)
    far = sn.right if left_side else sn.left
    near = sn.left if left_side else sn.right
    if tree.color_of(far) is not Color.RED:
        sk = tree.key_of(s)
        direction = "right" if left_side else "left"
        _fallback_recolor(
            tree, near, Color.BLACK,
            "rotation fallback: recolor near nephew black", steps, step_base)
        _fallback_recolor(
            tree, s, Color.RED,
            f"rotation fallback: recolor sibling red, then rotate "
            f"{direction} around {sk}", steps, step_base)
        (tree.rotate_right if left_side else tree.rotate_left)(s)
        steps[-1].snapshot_after = tree.snapshot()
        steps[-1].balanced = _balanced(tree)
        sn = tree.node(p)
        s = sn.right if left_side else sn.left
        sn = tree.node(s)
        far = sn.right if left_side else sn.left

    pk = tree.key_of(p)
    direction = "left" if left_side else "right"
    _fallback_recolor(
        tree, s, tree.color_of(p),
        "rotation fallback: sibling takes the parent color", steps, step_base)
    _fallback_recolor(
        tree, p, Color.BLACK,
        "rotation fallback: recolor parent black", steps, step_base)
    _fallback_recolor(
        tree, far, Color.BLACK,
        f"rotation fallback: recolor far nephew black, then rotate "
        f"{direction} around {pk}", steps, step_base)
    rotate_toward_u(p)
    db: DbSite = ("nil", p, u_side) if ctx.u == NIL else ("node", ctx.u)
    _resolve_db_row(
        tree, db, "rotation fallback resolves the double black",
        steps, step_base)
    steps[-1].snapshot_after = tree.snapshot()
    steps[-1].balanced = _balanced(tree)
    return None, steps


def delete_key(tree: Tree, key: int, mode: Mode = Mode.HYBRID,
               check: bool = False) -> DeleteReport:
    """Delete ``key`` and run the double-black fixup, tracing every color
    update.  The tree is mutated in place; on UnsupportedCase (strict mode)
    it is rolled back to its pre-delete state before the error propagates.

    ``check`` enables internal invariant checking (weighted black-path
    conservation per triple, a single double black at any instant, the
    iteration bound); the fuzzer runs with it on.
    """
    before = tree.snapshot()
    height_before = tree.height_nodes()
    outcome = tree.bst_detach(key)
    deletion_case = classify_deletion(outcome)

    db = _seed_marker(tree, outcome)
    after_detach = tree.snapshot()
    steps = _seed_recolor(tree, outcome, 1)

    sibling_cases: list[SiblingCase] = []
    used_fallback = False
    iterations = 0
    prev_a_parent_depth: Optional[int] = None

    while db is not None:
        if db[0] == "node" and db[1] == tree.root:
            steps.extend(resolve_root_db(tree, len(steps) + 1))
            db = None
            break
        iterations += 1
        if check and iterations > max(1, height_before):
            raise InvariantViolation(
                f"fixup ran {iterations} iterations on a tree of height "
                f"{height_before}"
            )
        ctx = make_context(tree, db)
        case = classify_sibling(tree, ctx)
        sibling_cases.append(case)
        if case is SiblingCase.A:
            if check:
                depth = _depth_of(tree, ctx.p)
                if prev_a_parent_depth is not None and depth >= prev_a_parent_depth:
                    raise InvariantViolation("transmission is not ancestor-ward")
                prev_a_parent_depth = depth
            db, triple = recolor_iteration(tree, ctx, len(steps) + 1, check)
            steps.extend(triple)
        elif mode is Mode.STRICT_PAPER:
            sibling_key = tree.key_of(ctx.s)
            tree.load(before)
            raise UnsupportedCase(case.value, sibling_key)
        else:
            used_fallback = True
            db, fb = rotation_fallback(tree, ctx, case, len(steps) + 1)
            steps.extend(fb)
            # Rotations restructure the tree; the ancestor-ward chain and
            # depth bookkeeping start over.
            prev_a_parent_depth = None
            if check:
                _check_db_count(tree)

    after = tree.snapshot()
    if check:
        if tree.db_nil is not None:
            raise InvariantViolation("double black survived the fixup")
        problems = validate(tree)
        if problems:
            raise InvariantViolation(f"post-delete validation: {problems}")
    return DeleteReport(
        key=key,
        deletion_case=deletion_case,
        sibling_cases=sibling_cases,
        mode=mode,
        trace=steps,
        before=before,
        after_detach=after_detach,
        after=after,
        used_rotation_fallback=used_fallback,
    )


def _depth_of(tree: Tree, nid: int) -> int:
    d = 0
    while tree.node(nid).parent != NIL:
        nid = tree.node(nid).parent
        d += 1
    return d


def replay(report: DeleteReport) -> Snapshot:
    """Reproduce the after snapshot from the report's snapshots and rows.

    The structural detach (and double-black formation) accompanies the
    first row: an empty trace prefix shows ``before``, any non-empty
    prefix starts from ``afterDetach`` and applies color rows; rows with a
    snapshot rebase the state.  Mirrors the stepper's client-side replay.
    """
    state = replay_prefix(report, len(report.trace))
    return state


def replay_prefix(report: DeleteReport, cursor: int) -> Snapshot:
    # An empty trace has a single frame: the detach already applied.
    if cursor <= 0 and report.trace:
        return report.before
    state = report.after_detach
    for step in report.trace[:cursor]:
        if step.snapshot_after is not None:
            state = step.snapshot_after
        elif step.operated_key is None:
            state = state.without_db_nil()
        else:
            state = state.with_color(step.operated_key, step.final_color)
    return state
