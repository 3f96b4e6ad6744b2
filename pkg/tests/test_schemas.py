"""Emitted JSON conforms to the published schemas in docs/schemas/."""

import json
from pathlib import Path

import pytest
from jsonschema import Draft7Validator
from referencing import Registry, Resource

from rbsym.engine import delete_key
from rbsym.oracle import fuzz

from .scenarios import CASE_B, T1, tree

SCHEMA_DIR = Path(__file__).parent.parent / "docs" / "schemas"


def _registry():
    registry = Registry()
    for path in SCHEMA_DIR.glob("*.schema.json"):
        schema = json.loads(path.read_text())
        resource = Resource.from_contents(schema)
        registry = registry.with_resource(path.name, resource)
        registry = registry.with_resource(schema["$id"], resource)
    return registry


def _validator(name):
    schema = json.loads((SCHEMA_DIR / name).read_text())
    return Draft7Validator(schema, registry=_registry())


@pytest.fixture(scope="module")
def validators():
    return {
        "snapshot": _validator("snapshot.schema.json"),
        "step": _validator("trace-step.schema.json"),
        "report": _validator("delete-report.schema.json"),
        "fuzz": _validator("fuzz-report.schema.json"),
    }


def test_snapshot_schema(validators):
    validators["snapshot"].validate(T1.to_json())
    t = tree(T1)
    t.bst_detach(35)
    t.set_db_nil(t.search(30), "right")
    validators["snapshot"].validate(t.snapshot().to_json())


def test_delete_report_schema(validators):
    report = delete_key(tree(T1), 35).to_json()
    validators["report"].validate(report)
    for step in report["trace"]:
        validators["step"].validate(step)


def test_rotation_report_schema(validators):
    """Hybrid fallback rows carry snapshotAfter; still schema-clean."""
    report = delete_key(tree(CASE_B), 5).to_json()
    validators["report"].validate(report)
    assert any(s["snapshotAfter"] is not None for s in report["trace"])


def test_fuzz_report_schema(validators):
    validators["fuzz"].validate(fuzz(0, n_sequences=3, max_keys=6).to_json())
