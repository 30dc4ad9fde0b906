from __future__ import annotations

from pathlib import Path

import pytest

from oppokb.cli import fixture_bundle
from oppokb.reasoner import materialize
from oppokb.schema import build_schema, schema_to_graph
from oppokb.store import merge
from oppokb.turtle import parse_file

TESTS = Path(__file__).parent
DATA_DIR = Path(__file__).parents[1] / "src" / "oppokb" / "data"


@pytest.fixture(autouse=True)
def _default_namespace(monkeypatch):
    monkeypatch.delenv("OPPO_PREFIX_BASE", raising=False)


@pytest.fixture(scope="session")
def schema():
    return build_schema()


@pytest.fixture(scope="session")
def schema_graph(schema):
    return schema_to_graph(schema)


@pytest.fixture(scope="session")
def bundle():
    return fixture_bundle()


@pytest.fixture(scope="session")
def telegram(bundle):
    g, prefixes = parse_file(bundle.data_file)
    return g.freeze(), prefixes


@pytest.fixture(scope="session")
def closure(telegram, schema_graph):
    return materialize(telegram[0], schema_graph)


@pytest.fixture(scope="session")
def clash_closure(telegram, schema_graph):
    clash, _ = parse_file(DATA_DIR / "clash.ttl")
    return materialize(merge(telegram[0], clash), schema_graph)


@pytest.fixture(scope="session")
def prefixes(schema, telegram):
    return {**schema.prefixes, **telegram[1]}
