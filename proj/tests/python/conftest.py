import json
import os
import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
MODELS = ROOT / "examples_models"
SCHEMAS = ROOT / "schemas"


@pytest.fixture(scope="session")
def models():
    return MODELS


@pytest.fixture(scope="session")
def validate():
    from jsonschema import Draft202012Validator
    from referencing import Registry, Resource

    resources = []
    for p in SCHEMAS.glob("*.schema.json"):
        s = json.loads(p.read_text())
        resources.append((s["$id"], Resource.from_contents(s)))
    registry = Registry().with_resources(resources)

    def check(instance, name):
        schema = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
        Draft202012Validator(schema, registry=registry).validate(instance)

    return check


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("VASS_ASYM_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("VASS_ASYM_CLI not set")
    return path
