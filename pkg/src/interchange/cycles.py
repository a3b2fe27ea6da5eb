"""Cycle-space analysis of quotient-graph components.

Each component gets a BFS spanning tree rooted at its minimal vertex; every
non-tree edge pair closes one fundamental cycle, anchored at the root as a
closed walk.  Cycles are also carried as GF(2) bit-vectors over a canonical
edge order, so the basis can be put in row canonical form.  The permutation
product around a closed walk is the monodromy of the covering; a component
has a commutativity property exactly when some product is not the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graph import Component, QuotientGraph, connected_components, lift_path
from .terms import format_shape, identity_monomial, identity_perm, inverse, is_identity

GROUP_CLOSURE_CAP = 10**6


@dataclass(frozen=True)
class AnchoredCycle:
    """A closed walk at a base vertex together with its edge parity vector.

    bits has bit j set when the walk traverses the j-th edge of the owning
    basis' edge_order an odd number of times.
    """

    bits: int
    walk: "tuple[tuple[int, bool], ...]"


@dataclass(frozen=True)
class CycleBasis:
    component_id: int
    base: int
    edge_order: "tuple[int, ...]"
    cycles: "tuple[AnchoredCycle, ...]"

    def __len__(self) -> int:
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)


@dataclass(frozen=True)
class MonodromyReport:
    component_id: int
    base: int
    generators: "tuple[tuple, ...]"
    group_order: int
    nontrivial: bool
    sample: "Optional[tuple]"


def spanning_tree(graph: QuotientGraph, comp: Component) -> "dict[int, tuple[int, int, bool]]":
    """BFS tree from the minimal vertex; neighbors are taken in ascending
    (vertex, relation id) order.  Maps each non-root vertex to the directed
    edge (rel_id, forward) leading from its parent into it."""
    base = comp.min_vertex
    parent_edge: dict[int, tuple[int, int, bool]] = {}
    visited = {base}
    frontier = [base]
    while frontier:
        next_frontier = []
        for vertex in frontier:
            for neighbor, rel_id, forward in graph.neighbors(vertex):
                if neighbor in visited:
                    continue
                visited.add(neighbor)
                parent_edge[neighbor] = (vertex, rel_id, forward)
                next_frontier.append(neighbor)
        frontier = next_frontier
    if len(visited) != comp.size:
        raise AssertionError(f"component {comp.id} is not connected")
    return parent_edge


def _path_from_base(
    parent_edge: "dict[int, tuple[int, int, bool]]", vertex: int
) -> "list[tuple[int, bool]]":
    path: list[tuple[int, bool]] = []
    while vertex in parent_edge:
        parent, rel_id, forward = parent_edge[vertex]
        path.append((rel_id, forward))
        vertex = parent
    path.reverse()
    return path


def _reversed_walk(walk: "list[tuple[int, bool]]") -> "list[tuple[int, bool]]":
    return [(rel_id, not forward) for rel_id, forward in reversed(walk)]


def edge_order_of(graph: QuotientGraph, comp: Component) -> "tuple[int, ...]":
    """Canonical order of the component's edge pairs: ascending by
    (min endpoint, max endpoint, relation id)."""

    def key(rel_id: int):
        rel = graph.relation(rel_id)
        return (min(rel.left, rel.right), max(rel.left, rel.right), rel_id)

    return tuple(sorted(comp.rel_ids, key=key))


def _walk_bits(walk, column: "dict[int, int]") -> int:
    bits = 0
    for rel_id, _ in walk:
        bits ^= 1 << column[rel_id]
    return bits


def fundamental_cycle_basis(graph: QuotientGraph, comp: Component) -> CycleBasis:
    """One anchored cycle per non-tree edge pair; exactly circuit_rank of
    them, anchored at the minimal vertex via tree paths."""
    parent_edge = spanning_tree(graph, comp)
    order = edge_order_of(graph, comp)
    column = {rel_id: j for j, rel_id in enumerate(order)}
    tree_edges = {rel_id for _, rel_id, _ in parent_edge.values()}
    cycles = []
    for rel_id in order:
        if rel_id in tree_edges:
            continue
        rel = graph.relation(rel_id)
        walk = (
            _path_from_base(parent_edge, rel.left)
            + [(rel_id, True)]
            + _reversed_walk(_path_from_base(parent_edge, rel.right))
        )
        cycles.append(AnchoredCycle(_walk_bits(walk, column), tuple(walk)))
    if len(cycles) != comp.circuit_rank:
        raise AssertionError(
            f"component {comp.id}: {len(cycles)} fundamental cycles, "
            f"rank {comp.circuit_rank}"
        )
    return CycleBasis(comp.id, comp.min_vertex, order, tuple(cycles))


# ---------------------------------------------------------------------------
# GF(2) row canonical form


def rcf_rows(rows: "list[int]") -> "list[int]":
    """Row canonical form of GF(2) bit-vector rows (low bit = first column).

    Returns the nonzero rows sorted by pivot column; the result depends only
    on the row space.
    """
    basis: list[int] = []
    for row in rows:
        for pivot_row in basis:
            low = pivot_row & -pivot_row
            if row & low:
                row ^= pivot_row
        if row:
            basis.append(row)
            basis.sort(key=lambda r: r & -r)
    # eliminate above pivots
    for i, pivot_row in enumerate(basis):
        low = pivot_row & -pivot_row
        for j in range(len(basis)):
            if j != i and basis[j] & low:
                basis[j] ^= pivot_row
    return sorted(basis, key=lambda r: r & -r)


def _euler_circuit(incidence, remaining: set, start: int) -> "list[tuple[int, bool]]":
    """Hierholzer circuit from start consuming its connected piece of the
    even-degree subgraph; the smallest available (neighbor, rel_id) is always
    taken first, so the traversal is deterministic."""
    stack: list[tuple[int, Optional[tuple[int, bool]]]] = [(start, None)]
    circuit: list[tuple[int, bool]] = []
    while stack:
        vertex, incoming = stack[-1]
        advanced = False
        for neighbor, rel_id, forward in incidence.get(vertex, ()):
            if rel_id in remaining:
                remaining.discard(rel_id)
                stack.append((neighbor, (rel_id, forward)))
                advanced = True
                break
        if not advanced:
            stack.pop()
            if incoming is not None:
                circuit.append(incoming)
    circuit.reverse()
    return circuit


def _realize_bits(
    graph: QuotientGraph,
    parent_edge,
    bits: int,
    edge_order: "tuple[int, ...]",
) -> "list[tuple[int, bool]]":
    """A closed walk at the base whose edge parity equals bits.

    The edge subset is an even-degree subgraph, hence a disjoint union of
    closed trails; each piece is traversed by an Euler circuit and connected
    to the base by tree paths, which cancel modulo 2.
    """
    selected = [edge_order[j] for j in range(len(edge_order)) if bits >> j & 1]
    if not selected:
        return []
    incidence: dict[int, list[tuple[int, int, bool]]] = {}
    for rel_id in selected:
        rel = graph.relation(rel_id)
        incidence.setdefault(rel.left, []).append((rel.right, rel_id, True))
        if rel.right != rel.left:
            incidence.setdefault(rel.right, []).append((rel.left, rel_id, False))
    for entries in incidence.values():
        entries.sort()

    remaining = set(selected)
    walk: list[tuple[int, bool]] = []
    for start in sorted(incidence):
        if not any(rel_id in remaining for _, rel_id, _ in incidence[start]):
            continue
        circuit = _euler_circuit(incidence, remaining, start)
        tree_in = _path_from_base(parent_edge, start)
        walk.extend(tree_in)
        walk.extend(circuit)
        walk.extend(_reversed_walk(tree_in))
    if remaining:
        raise AssertionError("edge subset not fully realized")
    return walk


def canonical_cycle_basis(graph: QuotientGraph, comp: Component, basis: "Optional[CycleBasis]" = None) -> CycleBasis:
    """Basis whose bit-vectors are the row canonical form of the cycle space
    over GF(2), each row re-anchored as a closed walk at the minimal vertex."""
    if basis is None:
        basis = fundamental_cycle_basis(graph, comp)
    parent_edge = spanning_tree(graph, comp)
    rows = rcf_rows([cycle.bits for cycle in basis.cycles])
    column = {rel_id: j for j, rel_id in enumerate(basis.edge_order)}
    cycles = []
    for row in rows:
        walk = _realize_bits(graph, parent_edge, row, basis.edge_order)
        bits = _walk_bits(walk, column)
        if bits != row:
            raise AssertionError("realized walk has wrong edge parity")
        cycles.append(AnchoredCycle(row, tuple(walk)))
    return CycleBasis(comp.id, basis.base, basis.edge_order, tuple(cycles))


# ---------------------------------------------------------------------------
# Monodromy


def cycle_permutation(graph: QuotientGraph, walk, base: int) -> tuple:
    """Permutation product around a closed walk anchored at base."""
    start = identity_monomial(graph.table.shape_at(base))
    end, sigma = lift_path(graph, walk, start)
    if end.shape != start.shape:
        raise ValueError("walk is not closed at its base")
    return sigma


def _group_closure(generators: "list[tuple]", degree: int) -> "set[tuple]":
    identity = identity_perm(degree)
    group = {identity}
    frontier = [g for g in set(generators) if g != identity]
    group.update(frontier)
    while frontier:
        next_frontier = []
        for g in frontier:
            for h in list(group):
                for product in (tuple(g[x - 1] for x in h), tuple(h[x - 1] for x in g)):
                    if product not in group:
                        group.add(product)
                        next_frontier.append(product)
                        if len(group) > GROUP_CLOSURE_CAP:
                            raise RuntimeError("monodromy closure exceeded cap")
        frontier = next_frontier
    return group


def monodromy_group(graph: QuotientGraph, comp: Component) -> MonodromyReport:
    """Monodromy at the minimal vertex, generated by the fundamental cycles."""
    basis = fundamental_cycle_basis(graph, comp)
    generators = tuple(
        cycle_permutation(graph, cycle.walk, basis.base) for cycle in basis.cycles
    )
    group = _group_closure(list(generators), graph.degree)
    nontrivial = len(group) > 1
    sample = None
    if nontrivial:
        sample = min(g for g in group if not is_identity(g))
    if nontrivial != any(not is_identity(g) for g in generators):
        raise AssertionError("nontrivial group without nontrivial generator")
    return MonodromyReport(comp.id, basis.base, generators, len(group), nontrivial, sample)


@dataclass(frozen=True)
class NontrivialComponent:
    component_id: int
    vertices: int
    edge_pairs: int
    circuit_rank: int
    min_vertex: int
    min_type: str


def find_nontrivial_components(graph: QuotientGraph) -> "list[NontrivialComponent]":
    """Components whose monodromy is nontrivial, in component-id order."""
    rows = []
    for comp in connected_components(graph):
        if comp.circuit_rank == 0:
            continue
        report = monodromy_group(graph, comp)
        if report.nontrivial:
            rows.append(
                NontrivialComponent(
                    comp.id,
                    comp.size,
                    comp.edge_pairs,
                    comp.circuit_rank,
                    comp.min_vertex,
                    format_shape(graph.table.shape_at(comp.min_vertex)),
                )
            )
    return rows


def monodromy_reports(graph: QuotientGraph) -> "list[MonodromyReport]":
    """Reports for every component, in component-id order."""
    return [monodromy_group(graph, comp) for comp in connected_components(graph)]
