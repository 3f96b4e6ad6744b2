"""Immutable tree snapshots and their canonical text/JSON forms.

A snapshot is an ordered list of ``(key, color, parent key or none, side)``
entries, sorted by key.  Canonical text form is one line per node,
``key,color,parentKey|-,side``, also sorted by key.

Mid-fixup snapshots may additionally mark the double-black null leaf via
``db_nil`` (the parent key and side of the affected NIL); completed trees
never carry it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import Color
from .errors import MalformedSnapshot

SIDES = ("left", "right", "root")


@dataclass(frozen=True)
class SnapshotEntry:
    key: int
    color: Color
    parent: Optional[int]   # parent key; None for the root
    side: str               # "left" | "right" | "root"

    def line(self) -> str:
        parent = "-" if self.parent is None else str(self.parent)
        return f"{self.key},{self.color.value},{parent},{self.side}"

    def to_json(self) -> dict:
        return {
            "key": self.key,
            "color": self.color.value,
            "parent": self.parent,
            "side": self.side,
        }


@dataclass(frozen=True)
class Snapshot:
    entries: tuple[SnapshotEntry, ...]
    db_nil: Optional[tuple[int, str]] = None   # (parent key, side)

    def __len__(self) -> int:
        return len(self.entries)

    def keys(self) -> list[int]:
        return [e.key for e in self.entries]

    def find(self, key: int) -> Optional[SnapshotEntry]:
        for e in self.entries:
            if e.key == key:
                return e
        return None

    def with_color(self, key: int, color: Color) -> "Snapshot":
        entries = tuple(
            SnapshotEntry(e.key, color, e.parent, e.side) if e.key == key else e
            for e in self.entries
        )
        if entries == self.entries:
            raise MalformedSnapshot(f"no entry with key {key}")
        return Snapshot(entries, self.db_nil)

    def without_db_nil(self) -> "Snapshot":
        return Snapshot(self.entries, None)

    def to_text(self) -> str:
        return "".join(e.line() + "\n" for e in self.entries)

    def to_json(self) -> dict:
        return {
            "entries": [e.to_json() for e in self.entries],
            "dbNil": (
                {"parent": self.db_nil[0], "side": self.db_nil[1]}
                if self.db_nil
                else None
            ),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Snapshot":
        try:
            entries = tuple(
                SnapshotEntry(
                    int(e["key"]), Color(e["color"]), e["parent"], e["side"]
                )
                for e in data["entries"]
            )
            db_nil = data.get("dbNil")
        except (KeyError, ValueError, TypeError) as exc:
            raise MalformedSnapshot(str(exc)) from exc
        return cls(
            entries,
            (db_nil["parent"], db_nil["side"]) if db_nil else None,
        )

    @classmethod
    def from_text(cls, text: str) -> "Snapshot":
        entries = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 4:
                raise MalformedSnapshot(f"line {lineno}: expected 4 fields")
            key_s, color_s, parent_s, side = parts
            try:
                key = int(key_s)
                color = Color(color_s)
            except ValueError as exc:
                raise MalformedSnapshot(f"line {lineno}: {exc}") from exc
            if side not in SIDES:
                raise MalformedSnapshot(f"line {lineno}: bad side {side!r}")
            parent = None if parent_s == "-" else int(parent_s)
            entries.append(SnapshotEntry(key, color, parent, side))
        return cls(tuple(entries))
