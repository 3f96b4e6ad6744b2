"""Session service: JSON over HTTP for the interactive stepper.

Sessions are in-memory trees keyed by opaque ids.  Mutations on one
session are serialized behind a per-session lock; distinct sessions never
block each other.  Every response carries the schema version.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from typing import Optional

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .engine import Mode, delete_key
from .errors import DuplicateKey, KeyNotFound, MalformedSnapshot, UnsupportedCase
from .snapshot import Snapshot
from .trace import SCHEMA_VERSION
from .tree import Tree


class _Session:
    def __init__(self, tree: Tree, mode: Mode):
        self.id = uuid.uuid4().hex
        self.tree = tree
        self.mode = mode
        self.history: list[dict] = []
        self.lock = threading.Lock()


class CreateSessionBody(BaseModel):
    keys: list[int] = Field(default_factory=list)
    mode: str = Mode.HYBRID.value
    # Seed an exact colored tree (worked classroom scenarios are usually
    # hand-colored; sequential insertion cannot reproduce them).
    snapshot: Optional[dict] = None


class KeyBody(BaseModel):
    key: int


def _error(status: int, body: dict) -> JSONResponse:
    return JSONResponse({"schemaVersion": SCHEMA_VERSION, **body},
                        status_code=status)


def create_app(persist_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="rbsym session service")
    # The stepper UI is served from a different origin during development.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, _Session] = {}
    store_lock = threading.Lock()

    def persist(session: _Session) -> None:
        if not persist_dir:
            return
        os.makedirs(persist_dir, exist_ok=True)
        path = os.path.join(persist_dir, f"{session.id}.json")
        with open(path, "w") as f:
            json.dump({
                "schemaVersion": SCHEMA_VERSION,
                "id": session.id,
                "mode": session.mode.value,
                "snapshot": session.tree.snapshot().to_json(),
            }, f, indent=2)
            f.write("\n")

    def get_session(session_id: str) -> Optional[_Session]:
        with store_lock:
            return sessions.get(session_id)

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        try:
            mode = Mode(body.mode)
        except ValueError:
            return _error(422, {"error": "BadMode", "mode": body.mode})
        tree = Tree()
        try:
            if body.snapshot is not None:
                tree = Tree.from_snapshot(Snapshot.from_json(body.snapshot))
            for key in body.keys:
                tree.insert(key)
        except MalformedSnapshot as exc:
            return _error(422, {"error": "MalformedSnapshot",
                                "detail": str(exc)})
        except DuplicateKey as exc:
            return _error(409, {"error": "DuplicateKey", "key": exc.key})
        session = _Session(tree, mode)
        with store_lock:
            sessions[session.id] = session
        persist(session)
        return {
            "schemaVersion": SCHEMA_VERSION,
            "id": session.id,
            "mode": session.mode.value,
            "snapshot": session.tree.snapshot().to_json(),
        }

    @app.get("/sessions/{session_id}")
    def read_session(session_id: str):
        session = get_session(session_id)
        if session is None:
            return _error(404, {"error": "UnknownSession"})
        with session.lock:
            return {
                "schemaVersion": SCHEMA_VERSION,
                "id": session.id,
                "mode": session.mode.value,
                "snapshot": session.tree.snapshot().to_json(),
                "history": session.history,
            }

    @app.post("/sessions/{session_id}/insert")
    def session_insert(session_id: str, body: KeyBody):
        session = get_session(session_id)
        if session is None:
            return _error(404, {"error": "UnknownSession"})
        with session.lock:
            try:
                steps = session.tree.insert(body.key, record_steps=True)
            except DuplicateKey as exc:
                return _error(409, {"error": "DuplicateKey", "key": exc.key})
            session.history.append({
                "type": "insert",
                "key": body.key,
                "steps": [s.to_json() for s in steps],
            })
            persist(session)
            return {
                "schemaVersion": SCHEMA_VERSION,
                "snapshot": session.tree.snapshot().to_json(),
                "steps": [s.to_json() for s in steps],
            }

    @app.post("/sessions/{session_id}/delete")
    def session_delete(session_id: str, body: KeyBody):
        session = get_session(session_id)
        if session is None:
            return _error(404, {"error": "UnknownSession"})
        with session.lock:
            try:
                report = delete_key(session.tree, body.key, session.mode)
            except KeyNotFound:
                return _error(404, {"error": "KeyNotFound", "key": body.key})
            except UnsupportedCase as exc:
                return _error(422, {
                    "error": "UnsupportedCase",
                    "case": exc.case,
                    "node": exc.node_key,
                })
            payload = report.to_json()
            session.history.append({"type": "delete", "report": payload})
            persist(session)
            return {"schemaVersion": SCHEMA_VERSION, "report": payload}

    @app.delete("/sessions/{session_id}", status_code=204)
    def drop_session(session_id: str):
        with store_lock:
            existed = sessions.pop(session_id, None)
        if existed is None:
            return _error(404, {"error": "UnknownSession"})
        return None

    return app
