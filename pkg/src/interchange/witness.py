"""Commutativity identities, step-by-step rewrite proofs, and the
degree-16 derivation check.

A nontrivial closed walk in a quotient graph yields an identity between two
monomials with the same association type and different variable orders.
Each edge of the walk is realized as one application of the interchange law,
so the identity comes with a replayable proof.  Substitution of multilinear
monomials and outer multiplication push identities to higher degrees; with
one round of that, the degree-9 identity of the middle-size components
yields the classical degree-16 commutativity identity up to renaming and
transposing the two operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .graph import Component, QuotientGraph, lift_path
from .rewrite import Redex, apply_redex, find_redexes
from .cycles import fundamental_cycle_basis, _path_from_base, _reversed_walk, spanning_tree
from .terms import (
    LEAF,
    H,
    V,
    Monomial,
    Shape,
    degree,
    format_monomial,
    identity_monomial,
    identity_perm,
    inverse,
    is_identity,
    node,
    parse_monomial,
    parse_term,
    transpose_shape,
    validate_shape,
    variable_name,
    variable_number,
)


@dataclass(frozen=True)
class Identity:
    """A relation left ≡ right between two monomials of one degree.

    A commutativity identity is the special case where both sides have the
    same association type; the left side always carries the identity
    decoration."""

    left: Monomial
    right: Monomial

    def __post_init__(self):
        if self.left.degree != self.right.degree:
            raise ValueError("sides of an identity must have equal degree")

    @property
    def degree(self) -> int:
        return self.left.degree

    @property
    def is_commutativity(self) -> bool:
        return self.left.shape == self.right.shape

    @property
    def pi(self) -> tuple:
        """The permutation carried by the right side."""
        if not is_identity(self.left.perm):
            raise ValueError("left side is not identity-decorated")
        return self.right.perm


def identity_from_texts(left: str, right: str) -> Identity:
    left_shape, left_names = parse_term(left)
    right_shape, right_names = parse_term(right)
    if sorted(left_names) != sorted(right_names):
        raise ValueError("the two sides use different variables")
    return _identity_from_named((left_shape, left_names), (right_shape, right_names))


def _identity_from_named(left_side, right_side) -> Identity:
    # Monomials carry variable numbers, not names, so the variables in play
    # must be the first k letters; each letter then keeps its display form.
    left_shape, left_names = left_side
    right_shape, right_names = right_side
    ordered = sorted(left_names, key=variable_number)
    if ordered != [variable_name(i + 1) for i in range(len(ordered))]:
        raise ValueError(
            f"variables must be the first {len(ordered)} letters, got {''.join(ordered)}"
        )
    return Identity(
        Monomial(left_shape, tuple(variable_number(name) for name in left_names)),
        Monomial(right_shape, tuple(variable_number(name) for name in right_names)),
    )


# ---------------------------------------------------------------------------
# Proof objects


@dataclass(frozen=True)
class ProofStep:
    redex: Redex
    result: Monomial


@dataclass(frozen=True)
class Proof:
    start: Monomial
    steps: "tuple[ProofStep, ...]"

    @property
    def end(self) -> Monomial:
        return self.steps[-1].result if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class VerifyResult:
    valid: bool
    failed_step: "Optional[int]" = None
    reason: "Optional[str]" = None


def verify_proof(proof: Proof) -> VerifyResult:
    """Replay every step; the proof is valid when each recorded result is
    reproduced by its redex."""
    current = proof.start
    for number, step in enumerate(proof.steps, start=1):
        try:
            result = apply_redex(current, step.redex)
        except ValueError as exc:
            return VerifyResult(False, number, f"redex does not apply: {exc}")
        if result != step.result:
            return VerifyResult(
                False,
                number,
                f"expected {format_monomial(step.result)}, got {format_monomial(result)}",
            )
        current = result
    return VerifyResult(True)


def proof_to_json(proof: Proof) -> dict:
    return {
        "degree": proof.start.degree,
        "start": format_monomial(proof.start),
        "steps": [
            {
                "path": list(step.redex.path),
                "pair": step.redex.pair,
                "p": step.redex.left_split,
                "q": step.redex.right_split,
                "dir": step.redex.direction,
                "result": format_monomial(step.result),
            }
            for step in proof.steps
        ],
        "end": format_monomial(proof.end),
    }


def proof_from_json(data: dict) -> Proof:
    degree_ = data["degree"]
    start = parse_monomial(data["start"], degree_)
    steps = tuple(
        ProofStep(
            Redex(tuple(raw["path"]), raw["pair"], raw["p"], raw["q"], raw["dir"]),
            parse_monomial(raw["result"], degree_),
        )
        for raw in data["steps"]
    )
    proof = Proof(start, steps)
    if format_monomial(proof.end) != data["end"]:
        raise ValueError("proof end does not match the recorded end")
    return proof


def identity_to_json(identity: Identity) -> dict:
    return {
        "degree": identity.degree,
        "type": format_monomial(identity.left),
        "pi": list(identity.right.perm),
    }


# ---------------------------------------------------------------------------
# Turning walks into proofs


def edge_redex(graph: QuotientGraph, rel_id: int, forward: bool) -> Redex:
    """The first redex in canonical order realizing the directed edge.

    Applying it to any monomial over the source shape lifts the edge; such a
    redex exists for both directions because a single interchange application
    is reversible."""
    cache = getattr(graph, "_edge_redexes", None)
    if cache is None:
        cache = {}
        graph._edge_redexes = cache
    key = (rel_id, forward)
    if key in cache:
        return cache[key]
    src, dst = graph.edge_endpoints(rel_id, forward)
    sigma = graph.edge_perm(rel_id, forward)
    source = identity_monomial(graph.table.shape_at(src))
    target = Monomial(graph.table.shape_at(dst), sigma)
    for candidate in find_redexes(source.shape):
        if apply_redex(source, candidate) == target:
            cache[key] = candidate
            return candidate
    raise AssertionError(f"no redex realizes edge {rel_id} ({forward})")


def proof_for_walk(graph: QuotientGraph, walk, start: Monomial) -> Proof:
    """Realize a directed walk as a sequence of interchange applications."""
    current = start
    steps = []
    for rel_id, forward in walk:
        redex = edge_redex(graph, rel_id, forward)
        current = apply_redex(current, redex)
        steps.append(ProofStep(redex, current))
    return Proof(start, tuple(steps))


def extract_identity(
    graph: QuotientGraph, comp: Component, at: int
) -> "tuple[Identity, Proof]":
    """Commutativity identity at a vertex of a component with nontrivial
    monodromy, with its interchange proof.

    The walk is a nontrivial fundamental cycle conjugated to the vertex by
    tree paths; since the monodromy group has prime order, conjugation keeps
    the product nontrivial.
    """
    if at not in comp.vertices:
        raise ValueError(f"vertex {at} is not in component {comp.id}")
    basis = fundamental_cycle_basis(graph, comp)
    parent_edge = spanning_tree(graph, comp)
    nontrivial_walk = None
    for cycle in basis.cycles:
        _, sigma = lift_path(graph, cycle.walk, identity_monomial(graph.table.shape_at(basis.base)))
        if not is_identity(sigma):
            nontrivial_walk = list(cycle.walk)
            break
    if nontrivial_walk is None:
        raise ValueError(f"component {comp.id} has trivial monodromy")
    to_base = _reversed_walk(_path_from_base(parent_edge, at))
    walk = to_base + nontrivial_walk + _reversed_walk(to_base)
    start = identity_monomial(graph.table.shape_at(at))
    proof = proof_for_walk(graph, walk, start)
    end = proof.end
    if end.shape != start.shape or is_identity(end.perm):
        raise AssertionError("conjugated walk lost nontriviality")
    return Identity(start, end), proof


# ---------------------------------------------------------------------------
# Substitution, multiplication, operation transposition

NamedSide = "tuple[Shape, list[str]]"


def _subst_named(side, replacements: dict) -> "tuple[Shape, list[str]]":
    shape, names = side
    trees = {
        name: replacement for name, replacement in replacements.items()
    }

    def rec(sub: Shape, start: int) -> "tuple[Shape, list[str], int]":
        if sub == LEAF:
            name = names[start]
            if name in trees:
                tree, tree_names = trees[name]
                return tree, list(tree_names), start + 1
            return LEAF, [name], start + 1
        children = []
        collected: list[str] = []
        for child in sub[1:]:
            new_child, child_names, start = rec(child, start)
            children.append(new_child)
            collected.extend(child_names)
        return node(sub[0], children), collected, start

    new_shape, new_names, _ = rec(shape, 0)
    return new_shape, new_names


def substitute_and_multiply(
    identity: Identity,
    subs: "dict[str, str]",
    outer: "list[tuple[str, str, str]]" = (),
) -> Identity:
    """Substitute monomials for variables and multiply by outer factors.

    subs maps a variable letter to monomial text (which may reuse that
    letter, e.g. "b•j•k" for b); outer entries are (op, side, text) with op
    "H"/"∘" or "V"/"•" and side "left" or "right".  All variables introduced
    must be fresh, and the result is re-canonicalized in the enlarged degree.
    """
    left = (identity.left.shape, [variable_name(k) for k in identity.left.perm])
    right = (identity.right.shape, [variable_name(k) for k in identity.right.perm])

    parsed_subs = {}
    for name, text in subs.items():
        if name not in left[1]:
            raise ValueError(f"variable {name!r} does not occur in the identity")
        parsed_subs[name] = parse_term(text)

    new_left = _subst_named(left, parsed_subs)
    new_right = _subst_named(right, parsed_subs)

    for op, side, text in outer:
        op_key = {"H": H, "V": V, "∘": H, "•": V}.get(op)
        if op_key is None:
            raise ValueError(f"unknown operation {op!r}")
        if side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        tree, tree_names = parse_term(text)
        if side == "right":
            new_left = (node(op_key, [new_left[0], tree]), new_left[1] + tree_names)
            new_right = (node(op_key, [new_right[0], tree]), new_right[1] + tree_names)
        else:
            new_left = (node(op_key, [tree, new_left[0]]), tree_names + new_left[1])
            new_right = (node(op_key, [tree, new_right[0]]), tree_names + new_right[1])

    if len(set(new_left[1])) != len(new_left[1]):
        raise ValueError("variable collision after substitution")
    if sorted(new_left[1]) != sorted(new_right[1]):
        raise ValueError("sides disagree after substitution")
    validate_shape(new_left[0])
    validate_shape(new_right[0])
    return _identity_from_named(new_left, new_right)


def transpose_operations(value: "Union[Monomial, Identity]") -> "Union[Monomial, Identity]":
    """Swap ∘ and • at every internal node; an involution."""
    if isinstance(value, Monomial):
        return Monomial(transpose_shape(value.shape), value.perm)
    if isinstance(value, Identity):
        return Identity(
            Monomial(transpose_shape(value.left.shape), value.left.perm),
            Monomial(transpose_shape(value.right.shape), value.right.perm),
        )
    raise TypeError(f"cannot transpose {type(value).__name__}")


# ---------------------------------------------------------------------------
# The degree-9 identities and the degree-16 derivation

# Known identities at the representative vertices of the three component
# types, keyed by component id in the canonical (size, minimal vertex) order.
DEGREE9_IDENTITY_TEXTS = {
    3981: (
        "(a∘b∘c)•(d∘(e•f)∘(g•h)∘i)",
        "(a∘b∘c)•(d∘(g•f)∘(e•h)∘i)",
    ),
    3989: (
        "(a•b)∘(c•d•e•f)∘(g•h•i)",
        "(a•b)∘(c•e•d•f)∘(g•h•i)",
    ),
    3994: (
        "(a•b)∘(c•((d•e)∘(f•g)∘(h•i)))",
        "(a•b)∘(c•((f•e)∘(d•g)∘(h•i)))",
    ),
}


def degree9_identity(component_id: int) -> Identity:
    try:
        left, right = DEGREE9_IDENTITY_TEXTS[component_id]
    except KeyError:
        raise ValueError(f"no stored identity for component {component_id}")
    return identity_from_texts(left, right)


def kock_identity() -> Identity:
    """The classical degree-16 commutativity identity (f and g transposed in
    the second row of the 4x4 square)."""
    left = "(a∘b∘c∘d)•(e∘f∘g∘h)•(i∘j∘k∘l)•(m∘n∘p∘q)"
    right = "(a∘b∘c∘d)•(e∘g∘f∘h)•(i∘j∘k∘l)•(m∘n∘p∘q)"
    return identity_from_texts(left, right)


def match_identities_up_to_renaming(a: Identity, b: Identity) -> "Optional[dict[str, str]]":
    """A variable renaming carrying a to b as an unordered pair of sides, or
    None when no renaming exists."""
    a_sides = [
        (a.left.shape, [variable_name(k) for k in a.left.perm]),
        (a.right.shape, [variable_name(k) for k in a.right.perm]),
    ]
    b_sides = [
        (b.left.shape, [variable_name(k) for k in b.left.perm]),
        (b.right.shape, [variable_name(k) for k in b.right.perm]),
    ]
    for first, second in ((0, 1), (1, 0)):
        renaming = _renaming_for_pairing(a_sides, (b_sides[first], b_sides[second]))
        if renaming is not None:
            return renaming
    return None


def _renaming_for_pairing(a_sides, b_sides) -> "Optional[dict[str, str]]":
    renaming: dict[str, str] = {}
    used: set[str] = set()
    for (a_shape, a_names), (b_shape, b_names) in zip(a_sides, b_sides):
        if a_shape != b_shape:
            return None
        for source, target in zip(a_names, b_names):
            if renaming.get(source, target) != target:
                return None
            if source not in renaming:
                if target in used:
                    return None
                renaming[source] = target
                used.add(target)
    return renaming


@dataclass(frozen=True)
class KockReport:
    ok: bool
    renaming: "Optional[dict[str, str]]"
    derived: Identity
    reason: str


def derive_degree16_identity(include_outer: bool = True) -> Identity:
    """Substitute b <- b•j•k and i <- i•l in the degree-9 identity of
    component 3989, then right-multiply by m•n•p•q with ∘ (the outer step
    can be omitted as a negative control)."""
    base = degree9_identity(3989)
    outer = [("H", "right", "m•n•p•q")] if include_outer else []
    return substitute_and_multiply(base, {"b": "b•j•k", "i": "i•l"}, outer)


def kock_derivation_check() -> KockReport:
    """Check that the derived degree-16 relation, with operations transposed,
    equals the classical identity up to a variable renaming."""
    derived = derive_degree16_identity()
    renaming = match_identities_up_to_renaming(transpose_operations(derived), kock_identity())
    if renaming is None:
        return KockReport(False, None, derived, "no renaming matches the classical identity")
    return KockReport(True, renaming, derived, "derived identity matches after transposing operations")
