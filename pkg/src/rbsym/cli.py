"""Command-line driver: build, insert, delete, check, render, fuzz, serve.

Tree state lives in a JSON file between invocations (``--state``).  Exit
codes: 0 success, 1 failed check/fuzz, 2 usage or parse error,
3 key not found, 4 unsupported case (strict mode), 5 duplicate key.
"""

from __future__ import annotations

import json
import os
import sys

import click

from . import engine, oracle
from .engine import Mode, delete_key
from .errors import DuplicateKey, KeyNotFound, MalformedSnapshot, UnsupportedCase
from .render import render_ascii, render_dot
from .snapshot import Snapshot
from .trace import SCHEMA_VERSION, format_trace_csv, format_trace_text
from .tree import Tree

EXIT_CHECK_FAILED = 1
EXIT_KEY_NOT_FOUND = 3
EXIT_UNSUPPORTED_CASE = 4
EXIT_DUPLICATE_KEY = 5

_state_option = click.option(
    "--state", "state_path", default="rbsym-state.json",
    show_default=True, help="Tree state file.")
_mode_choice = click.Choice([m.value for m in Mode])


def _load_state(path: str) -> tuple[Tree, Mode]:
    if not os.path.exists(path):
        raise click.UsageError(f"no state file at {path}; run 'build' first")
    with open(path) as f:
        data = json.load(f)
    try:
        tree = Tree.from_snapshot(Snapshot.from_json(data["snapshot"]))
        mode = Mode(data.get("mode", Mode.HYBRID.value))
    except (KeyError, ValueError, MalformedSnapshot) as exc:
        raise click.UsageError(f"bad state file {path}: {exc}")
    return tree, mode


def _save_state(path: str, tree: Tree, mode: Mode) -> None:
    data = {
        "schemaVersion": SCHEMA_VERSION,
        "mode": mode.value,
        "snapshot": tree.snapshot().to_json(),
    }
    with open(path, "w") as f:
        json.dump(data, f, indent=2)
        f.write("\n")


def _parse_ops_file(path: str) -> list[tuple[str, int]]:
    ops = []
    with open(path) as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2 or parts[0] not in ("insert", "delete"):
                raise click.UsageError(
                    f"{path}: line {lineno}: expected 'insert K' or "
                    f"'delete K', got {line!r}")
            try:
                key = int(parts[1])
            except ValueError:
                raise click.UsageError(
                    f"{path}: line {lineno}: bad key {parts[1]!r}")
            ops.append((parts[0], key))
    return ops


@click.group()
def main():
    """Red-black tree deletion by symbolic recoloring, with step traces."""


@main.command()
@click.option("--keys", default=None, help="Comma-separated keys to insert.")
@click.option("--ops-file", type=click.Path(exists=True), default=None,
              help="File with one 'insert K' or 'delete K' per line.")
@click.option("--snapshot-file", type=click.Path(exists=True), default=None,
              help="Seed an exact colored tree from canonical snapshot "
                   "lines (key,color,parentKey|-,side).")
@click.option("--mode", type=_mode_choice, default=Mode.HYBRID.value,
              show_default=True)
@_state_option
def build(keys, ops_file, snapshot_file, mode, state_path):
    """Build a tree from keys, an ops file, or a snapshot, and persist it."""
    tree = Tree()
    mode = Mode(mode)
    try:
        if snapshot_file is not None:
            with open(snapshot_file) as f:
                tree = Tree.from_snapshot(Snapshot.from_text(f.read()))
        if keys is not None:
            for part in keys.split(","):
                part = part.strip()
                if part:
                    tree.insert(int(part))
        if ops_file is not None:
            for op, key in _parse_ops_file(ops_file):
                if op == "insert":
                    tree.insert(key)
                else:
                    delete_key(tree, key, mode)
    except ValueError as exc:
        raise click.UsageError(f"bad key: {exc}")
    except MalformedSnapshot as exc:
        raise click.UsageError(f"bad snapshot file: {exc}")
    except DuplicateKey as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DUPLICATE_KEY)
    except KeyNotFound as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_KEY_NOT_FOUND)
    _save_state(state_path, tree, mode)
    click.echo(f"built tree with {len(tree)} keys -> {state_path}")


@main.command()
@click.argument("key", type=int)
@_state_option
def insert(key, state_path):
    """Insert one key (recolors traced in the state history)."""
    tree, mode = _load_state(state_path)
    try:
        steps = tree.insert(key, record_steps=True)
    except DuplicateKey as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DUPLICATE_KEY)
    _save_state(state_path, tree, mode)
    click.echo(f"inserted {key} ({len(steps)} recolor steps)")


@main.command()
@click.argument("key", type=int)
@click.option("--mode", type=_mode_choice, default=None,
              help="Override the state file's mode for this deletion.")
@click.option("--trace-format", type=click.Choice(["text", "csv", "json"]),
              default="text", show_default=True)
@click.option("--report-dir", type=click.Path(), default=None,
              help="Also write trace.csv, report.json and before/after "
                   "figures into this directory.")
@_state_option
def delete(key, mode, trace_format, report_dir, state_path):
    """Delete a key, printing the step trace and the final snapshot."""
    tree, state_mode = _load_state(state_path)
    use_mode = Mode(mode) if mode else state_mode
    try:
        report = delete_key(tree, key, use_mode)
    except KeyNotFound as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_KEY_NOT_FOUND)
    except UnsupportedCase as exc:
        click.echo(
            f"error: unsupported sibling case {exc.case} at node "
            f"{exc.node_key} (strict mode refuses rotations)", err=True)
        sys.exit(EXIT_UNSUPPORTED_CASE)
    _save_state(state_path, tree, state_mode)
    if trace_format == "text":
        click.echo(format_trace_text(report.trace), nl=False)
        click.echo("\nFinal tree:")
        click.echo(report.after.to_text(), nl=False)
    elif trace_format == "csv":
        click.echo(format_trace_csv(report.trace), nl=False)
    else:
        payload = {"schemaVersion": SCHEMA_VERSION, **report.to_json()}
        click.echo(json.dumps(payload, indent=2))
    if report_dir:
        _write_report_dir(report_dir, report)


def _write_report_dir(report_dir: str, report: engine.DeleteReport) -> None:
    from .figures import draw_snapshot

    os.makedirs(report_dir, exist_ok=True)
    with open(os.path.join(report_dir, "trace.csv"), "w") as f:
        f.write(format_trace_csv(report.trace))
    with open(os.path.join(report_dir, "report.json"), "w") as f:
        json.dump({"schemaVersion": SCHEMA_VERSION, **report.to_json()}, f,
                  indent=2)
        f.write("\n")
    draw_snapshot(report.before, os.path.join(report_dir, "before.png"),
                  title=f"before delete {report.key}")
    draw_snapshot(report.after, os.path.join(report_dir, "after.png"),
                  title=f"after delete {report.key}")
    click.echo(f"report written to {report_dir}/", err=True)


@main.command()
@_state_option
def check(state_path):
    """Validate the red-black properties; silent and 0 when clean."""
    tree, _ = _load_state(state_path)
    violations = oracle.validate(tree)
    for v in violations:
        where = "" if v.node_key is None else f" at {v.node_key}"
        click.echo(f"violation ({v.property}){where}: {v.detail}")
    if violations:
        sys.exit(EXIT_CHECK_FAILED)


@main.command()
@click.option("--format", "fmt",
              type=click.Choice(["ascii", "dot", "snapshot", "png"]),
              default="ascii", show_default=True)
@click.option("--out", type=click.Path(), default=None,
              help="Write to a file instead of stdout (required for png).")
@_state_option
def render(fmt, out, state_path):
    """Render the tree: ASCII, DOT digraph, snapshot lines, or a figure."""
    tree, _ = _load_state(state_path)
    snap = tree.snapshot()
    if fmt == "png":
        from .figures import draw_snapshot

        path = out or "tree.png"
        draw_snapshot(snap, path)
        click.echo(f"figure written to {path}")
        return
    text = {
        "ascii": render_ascii,
        "dot": render_dot,
        "snapshot": lambda s: s.to_text(),
    }[fmt](snap)
    if out:
        with open(out, "w") as f:
            f.write(text)
    else:
        click.echo(text, nl=False)


@main.command()
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--n", "n_sequences", type=int, default=100, show_default=True)
@click.option("--max-keys", type=int, default=16, show_default=True)
@click.option("--ops", "ops_per_sequence", type=int, default=None,
              help="Ops per sequence (default: 2 * max-keys).")
@click.option("--out", type=click.Path(), default=None,
              help="Write the report JSON to a file instead of stdout.")
def fuzz(seed, n_sequences, max_keys, ops_per_sequence, out):
    """Run the differential fuzzer and emit its JSON report."""
    report = oracle.fuzz(seed, n_sequences, max_keys, ops_per_sequence)
    payload = {"schemaVersion": SCHEMA_VERSION, **report.to_json()}
    text = json.dumps(payload, indent=2) + "\n"
    if out:
        with open(out, "w") as f:
            f.write(text)
    else:
        click.echo(text, nl=False)
    if report.divergences:
        sys.exit(EXIT_CHECK_FAILED)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--persist-dir", type=click.Path(), default=None,
              help="Write session snapshots here after each mutation.")
def serve(host, port, persist_dir):
    """Run the session service used by the stepper UI."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(persist_dir=persist_dir), host=host, port=port)


if __name__ == "__main__":
    main()
