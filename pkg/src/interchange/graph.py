"""The permutation-labelled quotient graph of one degree.

Vertices are the association types of the degree; each normalized relation
contributes a pair of directed edges, the reverse edge carrying the inverse
permutation.  Decorated monomials over a vertex lift uniquely along edges,
so paths compose edge permutations; the graph is the base of that covering
and is all that ever needs to be materialized.
"""

from __future__ import annotations

import json
import os
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .rewrite import NormalizedRelation, generate_relations
from .terms import (
    Monomial,
    ShapeTable,
    compose,
    format_perm,
    format_shape,
    identity_perm,
    inverse,
    schroeder_large,
    shape_table,
)

CACHE_FORMAT = 1


class CacheError(RuntimeError):
    """Raised when a cache file cannot be used."""


@dataclass
class QuotientGraph:
    degree: int
    table: ShapeTable
    relations: "tuple[NormalizedRelation, ...]"
    adjacency: "dict[int, list[tuple[int, int, bool]]]" = field(repr=False)
    _components: "Optional[list[Component]]" = field(default=None, repr=False)

    @property
    def vertex_count(self) -> int:
        return len(self.table)

    @property
    def edge_pair_count(self) -> int:
        return len(self.relations)

    def non_isolated(self) -> "list[int]":
        return sorted(self.adjacency)

    @property
    def isolated_count(self) -> int:
        return self.vertex_count - len(self.adjacency)

    def relation(self, rel_id: int) -> NormalizedRelation:
        if not 1 <= rel_id <= len(self.relations):
            raise ValueError(f"relation id {rel_id} out of range")
        return self.relations[rel_id - 1]

    def edge_endpoints(self, rel_id: int, forward: bool) -> "tuple[int, int]":
        rel = self.relation(rel_id)
        return (rel.left, rel.right) if forward else (rel.right, rel.left)

    def edge_perm(self, rel_id: int, forward: bool) -> tuple:
        rel = self.relation(rel_id)
        return rel.sigma if forward else inverse(rel.sigma)

    def neighbors(self, vertex: int) -> "list[tuple[int, int, bool]]":
        return self.adjacency.get(vertex, [])


@dataclass(frozen=True)
class Component:
    """A connected piece of the graph (never an isolated vertex)."""

    id: int
    vertices: "tuple[int, ...]"
    rel_ids: "tuple[int, ...]"

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def edge_pairs(self) -> int:
        return len(self.rel_ids)

    @property
    def circuit_rank(self) -> int:
        # r = e - v + 1 for a connected graph
        return len(self.rel_ids) - len(self.vertices) + 1

    @property
    def min_vertex(self) -> int:
        return self.vertices[0]


def _build_adjacency(
    relations: "tuple[NormalizedRelation, ...]",
) -> "dict[int, list[tuple[int, int, bool]]]":
    adjacency: dict[int, list[tuple[int, int, bool]]] = {}
    for rel_id, rel in enumerate(relations, start=1):
        adjacency.setdefault(rel.left, []).append((rel.right, rel_id, True))
        adjacency.setdefault(rel.right, []).append((rel.left, rel_id, False))
    for entries in adjacency.values():
        entries.sort(key=lambda e: (e[0], e[1], not e[2]))
    return adjacency


def build_quotient_graph(
    degree: int, *, workers: int = 1, cache_dir: "Optional[str]" = None
) -> QuotientGraph:
    """Build (or load from cache) the quotient graph for one degree."""
    if degree < 2:
        raise ValueError("degree must be >= 2")
    if cache_dir is not None:
        path = cache_path(degree, cache_dir)
        if os.path.exists(path):
            try:
                return load_graph_cache(degree, cache_dir)
            except CacheError as exc:
                warnings.warn(f"rebuilding graph cache: {exc}")
    relations = generate_relations(degree, workers=workers)
    graph = QuotientGraph(degree, shape_table(degree), relations, _build_adjacency(relations))
    if cache_dir is not None:
        save_graph_cache(graph, cache_dir)
    return graph


def connected_components(graph: QuotientGraph) -> "list[Component]":
    """Components of the non-isolated part, sorted by size then minimal
    vertex, with 1-based ids assigned in that order."""
    if graph._components is not None:
        return graph._components
    parent: dict[int, int] = {}

    def find(v: int) -> int:
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    for v in graph.adjacency:
        parent[v] = v
    for rel in graph.relations:
        ra, rb = find(rel.left), find(rel.right)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    vertex_groups: dict[int, list[int]] = {}
    for v in graph.adjacency:
        vertex_groups.setdefault(find(v), []).append(v)
    edge_groups: dict[int, list[int]] = {}
    for rel_id, rel in enumerate(graph.relations, start=1):
        edge_groups.setdefault(find(rel.left), []).append(rel_id)

    pieces = sorted(
        ((sorted(vs), sorted(edge_groups[root])) for root, vs in vertex_groups.items()),
        key=lambda piece: (len(piece[0]), piece[0][0]),
    )
    components = [
        Component(i, tuple(vs), tuple(es)) for i, (vs, es) in enumerate(pieces, start=1)
    ]
    graph._components = components
    return components


def component_of_vertex(graph: QuotientGraph, vertex: int) -> Component:
    for comp in connected_components(graph):
        if vertex in comp.vertices:
            return comp
    raise ValueError(f"vertex {vertex} is isolated or out of range")


def count_free_monomials(graph: QuotientGraph) -> int:
    """Distinct degree-n monomials on one generator in the free double
    semigroup: isolated vertices plus connected components."""
    return graph.isolated_count + len(connected_components(graph))


def component_summary(graph: QuotientGraph) -> "tuple[dict[int, int], dict[int, int]]":
    """Histograms component size -> count and circuit rank -> count."""
    size_hist: dict[int, int] = {}
    rank_hist: dict[int, int] = {}
    for comp in connected_components(graph):
        size_hist[comp.size] = size_hist.get(comp.size, 0) + 1
        rank_hist[comp.circuit_rank] = rank_hist.get(comp.circuit_rank, 0) + 1
    return dict(sorted(size_hist.items())), dict(sorted(rank_hist.items()))


# ---------------------------------------------------------------------------
# Path lifting

Edge = "tuple[int, bool]"  # (relation id, True for left->right)


def lift_path(
    graph: QuotientGraph, path: "Iterable[tuple[int, bool]]", start: Monomial
) -> "tuple[Monomial, tuple]":
    """Lift a directed walk to decorated monomials.

    The walk must start at the vertex of start's shape; consecutive edges
    must be incident.  Returns the end monomial and the composed permutation,
    so that end == apply_permutation(sigma, start placed on the end shape).
    """
    current = graph.table.index_of(start.shape)
    sigma = identity_perm(graph.degree)
    for rel_id, forward in path:
        src, dst = graph.edge_endpoints(rel_id, forward)
        if src != current:
            raise ValueError(
                f"edge {rel_id} ({'fwd' if forward else 'rev'}) starts at {src}, "
                f"walk is at {current}"
            )
        sigma = compose(sigma, graph.edge_perm(rel_id, forward))
        current = dst
    end = Monomial(graph.table.shape_at(current), tuple(start.perm[s - 1] for s in sigma))
    return end, sigma


# ---------------------------------------------------------------------------
# Exports


def graph_to_json(graph: QuotientGraph) -> dict:
    return {
        "degree": graph.degree,
        "vertices": [
            {"index": i, "type": format_shape(shape)}
            for i, shape in enumerate(graph.table, start=1)
        ],
        "edges": [
            {
                "src": src,
                "dst": dst,
                "perm": list(graph.edge_perm(rel_id, forward)),
                "relation_id": rel_id,
            }
            for rel_id in range(1, len(graph.relations) + 1)
            for forward in (True, False)
            for src, dst in [graph.edge_endpoints(rel_id, forward)]
        ],
    }


def graph_to_dot(graph: QuotientGraph) -> str:
    """One digraph per component; vertex labels "index\\ntype", edge labels in
    cycle notation."""
    lines: list[str] = []
    for comp in connected_components(graph):
        lines.append(f"digraph component_{comp.id} {{")
        for v in comp.vertices:
            label = f"{v}\\n{format_shape(graph.table.shape_at(v))}"
            lines.append(f'  v{v} [label="{label}"];')
        for rel_id in comp.rel_ids:
            for forward in (True, False):
                src, dst = graph.edge_endpoints(rel_id, forward)
                label = format_perm(graph.edge_perm(rel_id, forward))
                lines.append(f'  v{src} -> v{dst} [label="{label}"];')
        lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Cache


def default_cache_dir() -> str:
    env = os.environ.get("INTERCHANGE_CACHE_DIR")
    if env:
        return env
    base = os.environ.get("XDG_CACHE_HOME", os.path.join(os.path.expanduser("~"), ".cache"))
    return os.path.join(base, "interchange")


def cache_path(degree: int, cache_dir: str) -> str:
    return os.path.join(cache_dir, f"graph-{degree}.json")


def save_graph_cache(graph: QuotientGraph, cache_dir: str) -> str:
    os.makedirs(cache_dir, exist_ok=True)
    components = connected_components(graph)
    payload = {
        "format": CACHE_FORMAT,
        "degree": graph.degree,
        "vertex_count": graph.vertex_count,
        "edge_pair_count": graph.edge_pair_count,
        "relations": [[r.left, r.right, list(r.sigma)] for r in graph.relations],
        "components": [list(c.vertices) for c in components],
    }
    path = cache_path(graph.degree, cache_dir)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, separators=(",", ":"))
    os.replace(tmp, path)
    return path


def load_graph_cache(degree: int, cache_dir: str) -> QuotientGraph:
    path = cache_path(degree, cache_dir)
    try:
        with open(path, encoding="utf-8") as handle:
            payload = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise CacheError(f"unreadable cache file {path}: {exc}")
    if payload.get("format") != CACHE_FORMAT or payload.get("degree") != degree:
        raise CacheError(f"cache header mismatch in {path}")
    expected_vertices = schroeder_large(degree)[-1]
    if payload.get("vertex_count") != expected_vertices:
        raise CacheError(f"vertex count mismatch in {path}")
    raw = payload.get("relations")
    if not isinstance(raw, list) or payload.get("edge_pair_count") != len(raw):
        raise CacheError(f"edge count mismatch in {path}")
    try:
        relations = tuple(
            NormalizedRelation(left, right, tuple(sigma)) for left, right, sigma in raw
        )
    except (TypeError, ValueError) as exc:
        raise CacheError(f"malformed relations in {path}: {exc}")
    if list(relations) != sorted(relations):
        raise CacheError(f"relations out of order in {path}")
    table = shape_table(degree)
    for rel in relations:
        if not (
            1 <= rel.left <= expected_vertices
            and rel.left <= rel.right <= expected_vertices
            and sorted(rel.sigma) == list(range(1, degree + 1))
        ):
            raise CacheError(f"invalid relation {rel} in {path}")
    graph = QuotientGraph(degree, table, relations, _build_adjacency(relations))
    cached_components = payload.get("components")
    computed = connected_components(graph)
    if cached_components != [list(c.vertices) for c in computed]:
        raise CacheError(f"component list mismatch in {path}")
    return graph


def cache_roundtrip(degree: int, cache_dir: str, *, workers: int = 1) -> bool:
    """Build fresh, save, reload, and compare deeply."""
    fresh = build_quotient_graph(degree, workers=workers)
    save_graph_cache(fresh, cache_dir)
    loaded = load_graph_cache(degree, cache_dir)
    return (
        loaded.degree == fresh.degree
        and loaded.relations == fresh.relations
        and loaded.adjacency == fresh.adjacency
        and [c.vertices for c in connected_components(loaded)]
        == [c.vertices for c in connected_components(fresh)]
    )
