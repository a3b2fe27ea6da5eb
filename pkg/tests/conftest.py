from __future__ import annotations

import os

import pytest

from interchange.graph import build_quotient_graph

_GRAPHS: dict = {}


@pytest.fixture(scope="session")
def graph_for():
    """Shared quotient graphs, built once per session."""

    def get(degree: int):
        if degree not in _GRAPHS:
            _GRAPHS[degree] = build_quotient_graph(degree)
        return _GRAPHS[degree]

    return get


@pytest.fixture(scope="session")
def graph9(graph_for):
    return graph_for(9)


@pytest.fixture(scope="session")
def fixture_dir() -> str:
    return os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture(scope="session")
def vertex_walk():
    """Turn a vertex sequence into a directed edge walk, picking the lone
    relation between consecutive vertices."""

    def walk(graph, vertices):
        by_pair: dict = {}
        for rel_id, rel in enumerate(graph.relations, start=1):
            by_pair.setdefault((rel.left, rel.right), []).append(rel_id)
        edges = []
        for u, v in zip(vertices, vertices[1:]):
            if (u, v) in by_pair:
                edges.append((by_pair[(u, v)][0], True))
            elif (v, u) in by_pair:
                edges.append((by_pair[(v, u)][0], False))
            else:
                raise AssertionError(f"no edge between {u} and {v}")
        return edges

    return walk
