import json
import os
import pathlib
import subprocess

import pytest

jsonschema = pytest.importorskip("jsonschema")
referencing = pytest.importorskip("referencing")

CLI = os.environ.get("DENDROTENSOR_CLI")
SCHEMA_DIR = pathlib.Path(__file__).resolve().parents[2] / "schema"

pytestmark = pytest.mark.skipif(not CLI, reason="DENDROTENSOR_CLI is not set")

FIGURE = json.dumps(
    {
        "levels": [["1", "2", "3", "4"], ["1", "2", "3"], ["1"]],
        "maps": [{"1": "1", "2": "1", "3": "3", "4": "3"}, {"1": "1", "2": "1", "3": "*"}],
    }
)


def registry():
    resources = []
    for path in SCHEMA_DIR.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], referencing.Resource.from_contents(doc)))
    return referencing.Registry().with_resources(resources)


def validate(schema_name, document):
    reg = registry()
    schema = reg.contents(f"{schema_name}.schema.json")
    jsonschema.Draft202012Validator(schema, registry=reg).validate(document)


def run(*args, expect=0):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True)
    assert proc.returncode == expect, proc.stderr
    return json.loads(proc.stdout)


@pytest.mark.parametrize(
    "schema,args",
    [
        ("omega", ["omega", FIGURE, "--format", "json"]),
        ("hom", ["hom", "r[a,b]", "{x[y,z];u}"]),
        ("shuffles", ["shuffles", "a0[a1,a2]", "b0[b1]"]),
        ("tensor-hom", ["tensor-hom", "r[a,b]", "r[a,b]", "e"]),
        ("free-algebra", ["free-algebra", "{r[a,b]}", "--sizes", "2,3,1"]),
        ("suite", ["check", "segal", "--instances", "5"]),
        ("all", ["check", "all", "--instances", "2", "--truncation", "2"]),
    ],
)
def test_outputs_match_schema(schema, args):
    validate(schema, run(*args))


def test_failing_record_matches_schema():
    validate("record", run("check", "fibrous", "--defect", "fake-unary", expect=1))
