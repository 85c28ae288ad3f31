"""Shared fixtures: put the project root and scripts/ on the import path and expose the corpus."""

import json
import os
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, ROOT)
sys.path.insert(0, os.path.join(ROOT, 'scripts'))

from gslab.corpus_configs import build_graph, random_graphs  # noqa: E402
from gslab.graph import Graph  # noqa: E402

SMALL_CORPUS = ['P2', 'P3', 'P4', 'P5', 'C3', 'C4', 'C5', 'C6',
                'K1,1', 'K1,2', 'K1,3', 'K1,4', 'K1,5', 'K2', 'K3', 'K4']
STARS = ['K1,1', 'K1,2', 'K1,3', 'K1,4', 'K1,5']


def load_report_schema():
    with open(os.path.join(ROOT, 'schemas', 'probe_report.schema.json'), encoding='utf-8') as f:
        return json.load(f)


def corpus_with_random(count=20, seed=11):
    """Named corpus graphs followed by seeded random graphs (n <= 10)."""
    named = [(name, build_graph(name)) for name in SMALL_CORPUS]
    return named + random_graphs(count, max_n=10, seed=seed)


@pytest.fixture
def path3():
    """Path 0-1-2."""
    return Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def c4():
    return build_graph('C4')


@pytest.fixture
def k2():
    return build_graph('K2')


@pytest.fixture
def k3():
    return build_graph('K3')


@pytest.fixture
def p5():
    return build_graph('P5')


@pytest.fixture
def edgeless3():
    return Graph.empty(3)


@pytest.fixture(autouse=True)
def clear_cap_env(monkeypatch):
    monkeypatch.delenv('GSLAB_CAP', raising=False)
