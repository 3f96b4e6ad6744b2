"""CLI behavior: formats, exit codes, golden output stability."""

import json
import os
from pathlib import Path

import pytest
from click.testing import CliRunner

from rbsym.cli import main

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def runner():
    return CliRunner()


def force_state(state_path, snapshot, mode="hybrid"):
    """Write a state file for a hand-colored tree (build uses inserts)."""
    with open(state_path, "w") as f:
        json.dump({
            "schemaVersion": "1.0",
            "mode": mode,
            "snapshot": snapshot.to_json(),
        }, f)


def build_t1(runner, state="state.json"):
    """Seed the worked all-black three-node tree (inserting 30,20,35 would
    leave 20 and 35 red, a different scenario)."""
    from .scenarios import T1

    force_state(state, T1)
    return state


class TestBuild:
    def test_build_and_check(self, runner):
        with runner.isolated_filesystem():
            build_t1(runner)
            result = runner.invoke(main, ["check", "--state", "state.json"])
            assert result.exit_code == 0
            assert result.output == ""

    def test_build_by_insertion_is_validator_clean(self, runner):
        with runner.isolated_filesystem():
            result = runner.invoke(main, ["build", "--keys", "30,20,35",
                                          "--state", "s.json"])
            assert result.exit_code == 0
            assert "3 keys" in result.output
            assert runner.invoke(main, ["check", "--state", "s.json"]
                                 ).exit_code == 0

    def test_build_empty(self, runner):
        with runner.isolated_filesystem():
            result = runner.invoke(main, ["build", "--keys", "",
                                          "--state", "s.json"])
            assert result.exit_code == 0
            assert "0 keys" in result.output

    def test_build_duplicate_key_exit_code(self, runner):
        with runner.isolated_filesystem():
            result = runner.invoke(main, ["build", "--keys", "1,1",
                                          "--state", "s.json"])
            assert result.exit_code == 5

    def test_ops_file(self, runner):
        with runner.isolated_filesystem():
            Path("ops.txt").write_text(
                "insert 30\ninsert 20\n# comment\ninsert 35\ndelete 20\n")
            result = runner.invoke(main, ["build", "--ops-file", "ops.txt",
                                          "--state", "s.json"])
            assert result.exit_code == 0
            assert "2 keys" in result.output

    def test_ops_file_bad_token_names_line(self, runner):
        with runner.isolated_filesystem():
            Path("ops.txt").write_text("insert 30\nremove 20\n")
            result = runner.invoke(main, ["build", "--ops-file", "ops.txt",
                                          "--state", "s.json"])
            assert result.exit_code == 2
            assert "line 2" in result.output

    def test_snapshot_file_seeding(self, runner):
        with runner.isolated_filesystem():
            Path("t1.snap").write_text(
                "20,B,30,left\n30,B,-,root\n35,B,30,right\n")
            result = runner.invoke(main, ["build", "--snapshot-file",
                                          "t1.snap", "--state", "s.json"])
            assert result.exit_code == 0, result.output
            result = runner.invoke(main, ["delete", "35", "--state", "s.json"])
            assert result.output == (GOLDEN / "t1_delete.txt").read_text()

    def test_snapshot_file_rejects_red_root(self, runner):
        with runner.isolated_filesystem():
            Path("bad.snap").write_text("30,R,-,root\n")
            result = runner.invoke(main, ["build", "--snapshot-file",
                                          "bad.snap", "--state", "s.json"])
            assert result.exit_code == 2
            assert "snapshot" in result.output

    def test_missing_state_file_is_a_usage_error(self, runner):
        with runner.isolated_filesystem():
            result = runner.invoke(main, ["delete", "1", "--state", "no.json"])
            assert result.exit_code == 2
            assert "build" in result.output


class TestDelete:
    def test_t1_text_golden(self, runner):
        with runner.isolated_filesystem():
            build_t1(runner)
            result = runner.invoke(main, ["delete", "35", "--state",
                                          "state.json"])
            assert result.exit_code == 0, result.output
            assert result.output == (GOLDEN / "t1_delete.txt").read_text()

    def test_t1_text_is_byte_stable(self, runner):
        outputs = []
        for _ in range(2):
            with runner.isolated_filesystem():
                build_t1(runner)
                result = runner.invoke(main, ["delete", "35", "--state",
                                              "state.json"])
                outputs.append(result.output)
        assert outputs[0] == outputs[1]

    def test_t1_csv_golden(self, runner):
        with runner.isolated_filesystem():
            build_t1(runner)
            result = runner.invoke(main, ["delete", "35", "--trace-format",
                                          "csv", "--state", "state.json"])
            assert result.output == (GOLDEN / "t1_delete.csv").read_text()

    def test_json_matches_text_step_sequence(self, runner):
        with runner.isolated_filesystem():
            build_t1(runner)
            result = runner.invoke(main, ["delete", "35", "--trace-format",
                                          "json", "--state", "state.json"])
            data = json.loads(result.output)
            assert data["schemaVersion"] == "1.0"
            assert [s["eqUsed"] for s in data["trace"]] == [
                "Eq2", "Eq3", "Eq1", "RootRule"]
            assert data["after"]["entries"][0]["key"] == 20

    def test_key_not_found_exit_code(self, runner):
        with runner.isolated_filesystem():
            build_t1(runner)
            result = runner.invoke(main, ["delete", "99", "--state",
                                          "state.json"])
            assert result.exit_code == 3

    def test_unsupported_case_exit_code(self, runner):
        from .scenarios import CASE_B

        with runner.isolated_filesystem():
            force_state("s.json", CASE_B, mode="strict-paper")
            result = runner.invoke(main, ["delete", "5", "--state", "s.json"])
            assert result.exit_code == 4
            assert "case B" in result.output
            assert "20" in result.output

    def test_mode_flag_overrides_state(self, runner):
        from .scenarios import CASE_B

        with runner.isolated_filesystem():
            force_state("s.json", CASE_B, mode="strict-paper")
            result = runner.invoke(main, ["delete", "5", "--mode", "hybrid",
                                          "--state", "s.json"])
            assert result.exit_code == 0

    def test_report_dir_artifacts(self, runner):
        with runner.isolated_filesystem():
            build_t1(runner)
            result = runner.invoke(main, ["delete", "35", "--report-dir",
                                          "out", "--state", "state.json"])
            assert result.exit_code == 0, result.output
            assert os.path.exists("out/trace.csv")
            assert os.path.exists("out/report.json")
            assert os.path.exists("out/before.png")
            assert os.path.exists("out/after.png")
            assert Path("out/trace.csv").read_text() == \
                (GOLDEN / "t1_delete.csv").read_text()


class TestInsert:
    def test_insert_then_check(self, runner):
        with runner.isolated_filesystem():
            build_t1(runner)
            result = runner.invoke(main, ["insert", "25", "--state",
                                          "state.json"])
            assert result.exit_code == 0
            result = runner.invoke(main, ["check", "--state", "state.json"])
            assert result.exit_code == 0

    def test_duplicate_exit_code(self, runner):
        with runner.isolated_filesystem():
            build_t1(runner)
            result = runner.invoke(main, ["insert", "30", "--state",
                                          "state.json"])
            assert result.exit_code == 5


class TestRender:
    def test_dot_golden(self, runner):
        with runner.isolated_filesystem():
            build_t1(runner)
            result = runner.invoke(main, ["render", "--format", "dot",
                                          "--state", "state.json"])
            assert result.output == (GOLDEN / "t1_render.dot").read_text()

    def test_dot_has_three_nodes_and_four_nil_boxes(self, runner):
        with runner.isolated_filesystem():
            build_t1(runner)
            result = runner.invoke(main, ["render", "--format", "dot",
                                          "--state", "state.json"])
            assert result.output.count("shape=circle") == 3
            assert result.output.count("shape=box") == 4

    def test_ascii_golden(self, runner):
        with runner.isolated_filesystem():
            build_t1(runner)
            result = runner.invoke(main, ["render", "--format", "ascii",
                                          "--state", "state.json"])
            assert result.output == (GOLDEN / "t1_render_ascii.txt").read_text()

    def test_snapshot_format(self, runner):
        with runner.isolated_filesystem():
            build_t1(runner)
            result = runner.invoke(main, ["render", "--format", "snapshot",
                                          "--state", "state.json"])
            assert result.output == "20,B,30,left\n30,B,-,root\n35,B,30,right\n"

    def test_png(self, runner):
        with runner.isolated_filesystem():
            build_t1(runner)
            result = runner.invoke(main, ["render", "--format", "png",
                                          "--out", "t.png",
                                          "--state", "state.json"])
            assert result.exit_code == 0
            assert os.path.getsize("t.png") > 0


class TestFuzzCommand:
    def test_small_run_writes_report(self, runner):
        with runner.isolated_filesystem():
            result = runner.invoke(main, ["fuzz", "--seed", "0", "--n", "5",
                                          "--max-keys", "8", "--out", "r.json"])
            assert result.exit_code == 0, result.output
            data = json.loads(Path("r.json").read_text())
            assert data["divergences"] == []
            assert data["schemaVersion"] == "1.0"
            assert data["opsExecuted"] > 0

    def test_stdout_report(self, runner):
        result = runner.invoke(main, ["fuzz", "--seed", "1", "--n", "2",
                                      "--max-keys", "4"])
        assert result.exit_code == 0
        assert json.loads(result.output)["divergences"] == []
