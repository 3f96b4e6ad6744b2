"""Snapshot renderers: ASCII, DOT, and figure output."""

import os

from rbsym import Color
from rbsym.figures import draw_snapshot
from rbsym.render import render_ascii, render_dot
from rbsym.snapshot import Snapshot

from .scenarios import T1, snap, tree

B, R, DB = Color.BLACK, Color.RED, Color.DOUBLE_BLACK


def mid_fixup_snapshot():
    t = tree(T1)
    t.bst_detach(35)
    t.set_db_nil(t.search(30), "right")
    return t.snapshot()


class TestAscii:
    def test_empty(self):
        assert render_ascii(Snapshot(())) == "(empty tree)\n"

    def test_marked_nil_is_shown(self):
        out = render_ascii(mid_fixup_snapshot())
        assert "NIL [DB]" in out

    def test_colors_in_labels(self):
        out = render_ascii(snap((20, R, 30, "left"), (30, B, None, "root")))
        assert "30 [B]" in out and "20 [R]" in out


class TestDot:
    def test_double_black_node_gets_double_ring(self):
        s = snap((20, R, 30, "left"), (30, B, None, "root"))
        s = s.with_color(30, DB)
        out = render_dot(s)
        assert 'label="30 [DB]"' in out
        assert out.count("peripheries=2") == 1

    def test_marked_nil_box(self):
        out = render_dot(mid_fixup_snapshot())
        assert 'label="NIL [DB]"' in out

    def test_empty(self):
        out = render_dot(Snapshot(()))
        assert out.startswith("digraph")


class TestFigures:
    def test_writes_file(self, tmp_path):
        path = str(tmp_path / "t1.png")
        draw_snapshot(tree(T1).snapshot(), path, title="worked tree")
        assert os.path.getsize(path) > 0

    def test_mid_fixup_with_marker_and_highlight(self, tmp_path):
        path = str(tmp_path / "mid.png")
        s = mid_fixup_snapshot().with_color(20, DB)
        draw_snapshot(s, path, highlight_key=20)
        assert os.path.getsize(path) > 0

    def test_empty_snapshot(self, tmp_path):
        path = str(tmp_path / "empty.png")
        draw_snapshot(Snapshot(()), path)
        assert os.path.getsize(path) > 0
