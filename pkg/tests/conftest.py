"""Shared fixtures and hypothesis strategies."""

from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from gsroute.fixtures import butterfly_graph, nine_qubit_cluster, twelve_qubit_cluster
from gsroute.graph import LabeledGraph

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
    deadline=None,
)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def grid9() -> LabeledGraph:
    return nine_qubit_cluster()


@pytest.fixture(scope="session")
def butterfly() -> LabeledGraph:
    return butterfly_graph()


@pytest.fixture(scope="session")
def cluster12() -> LabeledGraph:
    return twelve_qubit_cluster()


def all_graphs(n: int, first_label: int = 1):
    """Every labeled graph on n vertices."""
    labels = list(range(first_label, first_label + n))
    pairs = list(itertools.combinations(labels, 2))
    for mask in range(1 << len(pairs)):
        yield LabeledGraph(labels, [p for i, p in enumerate(pairs) if mask >> i & 1])


def random_graph(rng: random.Random, n: int, p: float = 0.5, first_label: int = 1) -> LabeledGraph:
    labels = list(range(first_label, first_label + n))
    pairs = list(itertools.combinations(labels, 2))
    return LabeledGraph(labels, [e for e in pairs if rng.random() < p])


def random_connected_graph(rng: random.Random, n: int, p: float = 0.5) -> LabeledGraph:
    while True:
        g = random_graph(rng, n, p)
        if g.is_connected():
            return g


@st.composite
def graphs(draw, min_vertices: int = 1, max_vertices: int = 7) -> LabeledGraph:
    n = draw(st.integers(min_vertices, max_vertices))
    labels = list(range(1, n + 1))
    pairs = list(itertools.combinations(labels, 2))
    mask = draw(st.integers(0, (1 << len(pairs)) - 1))
    return LabeledGraph(labels, [p for i, p in enumerate(pairs) if mask >> i & 1])


@st.composite
def graphs_with_vertex(draw, min_vertices: int = 1, max_vertices: int = 7):
    g = draw(graphs(min_vertices, max_vertices))
    v = draw(st.sampled_from(g.vertices))
    return g, v
