"""Single applications of the interchange law and the consequence set.

The interchange law (w•x)∘(y•z) ≡ (w∘y)•(x∘z) rewrites a term wherever two
adjacent children of an internal node are themselves internal.  A redex
records such a position together with the chosen splits of the four blocks.
Rewriting an identity-decorated shape yields a relation between two
decorated shapes; relations are normalized so that the smaller shape in the
total order carries the identity permutation, and the full normalized set
for one degree is the edge set of the quotient graph.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from typing import Iterable

from .terms import (
    LEAF,
    H,
    OTHER,
    V,
    Monomial,
    Shape,
    compose,
    degree,
    identity_monomial,
    identity_perm,
    inverse,
    node,
    shape_table,
)

FORWARD = "fwd"  # at a ∘ node: (w•x)∘(y•z) -> (w∘y)•(x∘z)
BACKWARD = "bwd"  # at a • node: (w∘x)•(y∘z) -> (w•y)∘(x•z)

_DIRECTION_FOR_OP = {H: FORWARD, V: BACKWARD}


class InvalidRedexError(ValueError):
    """Raised when a redex does not fit the shape it is applied to."""


@dataclass(frozen=True)
class Redex:
    """One position where the interchange law applies.

    path: 1-based child indices from the root to the enclosing node P;
    pair: children pair and pair+1 of P are rewritten;
    left_split / right_split: how many children of each go into the first
    block; direction: "fwd" when P is a ∘ node, "bwd" when P is a • node.
    """

    path: "tuple[int, ...]"
    pair: int
    left_split: int
    right_split: int
    direction: str


def find_redexes(shape: Shape) -> "list[Redex]":
    """All redexes of a shape, in (path, pair, splits) lexicographic order."""
    out: list[Redex] = []

    def visit(sub: Shape, path: tuple) -> None:
        if sub == LEAF:
            return
        direction = _DIRECTION_FOR_OP[sub[0]]
        children = sub[1:]
        for i in range(len(children) - 1):
            a, b = children[i], children[i + 1]
            if a != LEAF and b != LEAF:
                for p in range(1, len(a) - 1):
                    for q in range(1, len(b) - 1):
                        out.append(Redex(path, i + 1, p, q, direction))
        for i, child in enumerate(children):
            visit(child, path + (i + 1,))

    visit(shape, ())
    return out


def _leaf_prefix(shape: Shape, path: "tuple[int, ...]", extra_children: int) -> int:
    """Leaves strictly before child number extra_children+1 of the node at path."""
    count = 0
    current = shape
    for step in path:
        if current == LEAF or not 1 <= step <= len(current) - 1:
            raise InvalidRedexError(f"path {path} does not fit the shape")
        count += sum(degree(c) for c in current[1 : step])
        current = current[step]
    if current == LEAF:
        raise InvalidRedexError(f"path {path} ends at a leaf")
    count += sum(degree(c) for c in current[1 : extra_children + 1])
    return count


def _node_at(shape: Shape, path: "tuple[int, ...]") -> Shape:
    current = shape
    for step in path:
        if current == LEAF or not 1 <= step <= len(current) - 1:
            raise InvalidRedexError(f"path {path} does not fit the shape")
        current = current[step]
    return current


def _replace_at(shape: Shape, path: "tuple[int, ...]", replacement: Shape) -> Shape:
    if not path:
        return replacement
    step = path[0]
    children = list(shape[1:])
    children[step - 1] = _replace_at(children[step - 1], path[1:], replacement)
    return node(shape[0], children)


def _bunch(op: str, block: "tuple[Shape, ...]") -> Shape:
    return block[0] if len(block) == 1 else (op,) + block


def apply_redex(m: Monomial, r: Redex) -> Monomial:
    """Apply the interchange law once and canonicalize the result.

    Blocks w, x, y, z are recombined according to the direction, single-child
    nodes are collapsed, same-operation nestings are flattened, and the leaf
    decorations travel with their leaves.
    """
    target = _node_at(m.shape, r.path)
    if target == LEAF:
        raise InvalidRedexError("redex path ends at a leaf")
    op = target[0]
    if _DIRECTION_FOR_OP[op] != r.direction:
        raise InvalidRedexError(
            f"direction {r.direction} does not match a {op} node"
        )
    children = target[1:]
    if not 1 <= r.pair <= len(children) - 1:
        raise InvalidRedexError(f"pair index {r.pair} out of range")
    a, b = children[r.pair - 1], children[r.pair]
    if a == LEAF or b == LEAF:
        raise InvalidRedexError("both rewritten children must be internal")
    u, v = a[1:], b[1:]
    if not 1 <= r.left_split < len(u) or not 1 <= r.right_split < len(v):
        raise InvalidRedexError("split out of range")

    inner = OTHER[op]
    w, x = u[: r.left_split], u[r.left_split :]
    y, z = v[: r.right_split], v[r.right_split :]
    # (w ⋆ x) ∗ (y ⋆ z) -> (w ∗ y) ⋆ (x ∗ z) where ∗ is the op at the node.
    joined = node(
        inner,
        [
            node(op, [_bunch(inner, w), _bunch(inner, y)]),
            node(op, [_bunch(inner, x), _bunch(inner, z)]),
        ],
    )
    new_children = children[: r.pair - 1] + (joined,) + children[r.pair + 1 :]
    new_shape = _replace_at(m.shape, r.path, node(op, list(new_children)))

    prefix = _leaf_prefix(m.shape, r.path, r.pair - 1)
    dw = sum(degree(s) for s in w)
    dx = sum(degree(s) for s in x)
    dy = sum(degree(s) for s in y)
    dz = sum(degree(s) for s in z)
    # Result leaf order is prefix, w, y, x, z, suffix in source positions.
    rho = list(range(1, m.degree + 1))
    middle = (
        list(range(prefix + 1, prefix + dw + 1))
        + list(range(prefix + dw + dx + 1, prefix + dw + dx + dy + 1))
        + list(range(prefix + dw + 1, prefix + dw + dx + 1))
        + list(range(prefix + dw + dx + dy + 1, prefix + dw + dx + dy + dz + 1))
    )
    rho[prefix : prefix + len(middle)] = middle
    return Monomial(new_shape, tuple(m.perm[s - 1] for s in rho))


def inverse_redex(m: Monomial, r: Redex) -> Redex:
    """The redex on apply_redex(m, r) that rewrites back to m exactly."""
    result = apply_redex(m, r)
    for candidate in find_redexes(result.shape):
        if apply_redex(result, candidate) == m:
            return candidate
    raise InvalidRedexError("no inverse redex found")  # unreachable for valid input


# ---------------------------------------------------------------------------
# Normalized relations


@dataclass(frozen=True, order=True)
class NormalizedRelation:
    """identity-decorated shape[left] ≡ sigma-decorated shape[right], with
    left <= right in the total order (indices into the degree's ShapeTable)."""

    left: int
    right: int
    sigma: "tuple[int, ...]"


def _normalize_pair(ia: int, da: tuple, ib: int, db: tuple) -> NormalizedRelation:
    if ia < ib:
        return NormalizedRelation(ia, ib, compose(inverse(da), db))
    if ib < ia:
        return NormalizedRelation(ib, ia, compose(inverse(db), da))
    sigma = compose(inverse(da), db)
    return NormalizedRelation(ia, ia, min(sigma, inverse(sigma)))


def normalize_relation(table, ma: Monomial, mb: Monomial) -> NormalizedRelation:
    """Normal form of the relation ma ≡ mb."""
    return _normalize_pair(
        table.index_of(ma.shape), ma.perm, table.index_of(mb.shape), mb.perm
    )


def _relations_for_range(degree_: int, lo: int, hi: int) -> "set[NormalizedRelation]":
    table = shape_table(degree_)
    out: set[NormalizedRelation] = set()
    for idx0 in range(lo, hi):
        shape = table.shapes[idx0]
        i = idx0 + 1
        m = Monomial(shape, identity_perm(degree_))
        for r in find_redexes(shape):
            result = apply_redex(m, r)
            j = table.index_of(result.shape)
            if i < j:
                out.add(NormalizedRelation(i, j, result.perm))
            elif j < i:
                out.add(NormalizedRelation(j, i, inverse(result.perm)))
            else:
                sigma = result.perm
                out.add(NormalizedRelation(i, i, min(sigma, inverse(sigma))))
    return out


def _worker_relations(args) -> "set[NormalizedRelation]":
    return _relations_for_range(*args)


def generate_relations(degree_: int, workers: int = 1) -> "tuple[NormalizedRelation, ...]":
    """The normalized consequence set NC(n): for every shape and every redex,
    normalize and deduplicate.  Sorted by (left, right, sigma); the result is
    identical for any worker count."""
    if degree_ < 2:
        raise ValueError("degree must be >= 2")
    table = shape_table(degree_)
    count = len(table)
    if workers <= 1 or count < 64:
        merged = _relations_for_range(degree_, 0, count)
    else:
        chunks = max(1, workers * 4)
        step = (count + chunks - 1) // chunks
        ranges = [
            (degree_, lo, min(lo + step, count)) for lo in range(0, count, step)
        ]
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(processes=workers) as pool:
            merged = set()
            for part in pool.imap_unordered(_worker_relations, ranges):
                merged |= part
    return tuple(sorted(merged))


# ---------------------------------------------------------------------------
# Inductive consequence generator (validation oracle)
#
# The consequence set is built inductively from the degree-4 interchange law:
# each degree-n relation yields 2n substitutions a_i <- a_i ∗ a_{n+1} and 4
# outer multiplications by a_{n+1}, giving 2^{n+1}(n+1)!/(2^5 5!) relations
# in each degree.  The induction works on formal binary trees in which
# associativity has not been applied; flattening would identify the
# substitution into the last variable with a right multiplication (and
# likewise on the left), and the closed-form count holds only before that
# identification.  Canonical flattened shapes appear only in the normal
# forms.


def consequence_count(degree_: int) -> int:
    """Closed form 2^(n+1) (n+1)! / (2^5 5!) for n >= 4."""
    import math

    if degree_ < 4:
        raise ValueError("degree must be >= 4")
    numerator = (1 << (degree_ + 1)) * math.factorial(degree_ + 1)
    return numerator // (32 * 120)


def _base_relation() -> tuple:
    left = (H, (V, LEAF, LEAF), (V, LEAF, LEAF))
    right = (V, (H, LEAF, LEAF), (H, LEAF, LEAF))
    return (left, (1, 2, 3, 4), right, (1, 3, 2, 4))


def _formal_replace_leaf(tree, pos: int, replacement):
    """Replace the pos-th leaf (1-based) in a formal binary tree."""

    def rec(sub, start):
        if sub == LEAF:
            if start == pos:
                return replacement, start + 1
            return sub, start + 1
        left, start = rec(sub[1], start)
        right, start = rec(sub[2], start)
        return (sub[0], left, right), start

    new_tree, _ = rec(tree, 1)
    return new_tree


def _substituted(tree, dec: tuple, subscript: int, op: str) -> tuple:
    """Substitute a_subscript -> a_subscript op a_new where new = degree+1."""
    pos = dec.index(subscript) + 1
    new_tree = _formal_replace_leaf(tree, pos, (op, LEAF, LEAF))
    new_dec = dec[:pos] + (len(dec) + 1,) + dec[pos:]
    return new_tree, new_dec


def _multiplied(tree, dec: tuple, op: str, on_right: bool) -> tuple:
    new = len(dec) + 1
    if on_right:
        return (op, tree, LEAF), dec + (new,)
    return (op, LEAF, tree), (new,) + dec


def _expansions(rel: tuple, n: int) -> Iterable[tuple]:
    ta, da, tb, db = rel
    for subscript in range(1, n + 1):
        for op in (H, V):
            yield _substituted(ta, da, subscript, op) + _substituted(tb, db, subscript, op)
    for op in (H, V):
        yield _multiplied(ta, da, op, True) + _multiplied(tb, db, op, True)
        yield _multiplied(ta, da, op, False) + _multiplied(tb, db, op, False)


def _next_level(relations: "list[tuple]", n: int) -> "list[tuple]":
    seen: set = set()
    out: list[tuple] = []
    for rel in relations:
        for cand in _expansions(rel, n):
            if cand not in seen:
                seen.add(cand)
                out.append(cand)
    return out


def _formal_key(tree, out: bytearray) -> None:
    if tree == LEAF:
        out.append(0)
    else:
        out.append(1 if tree[0] == H else 2)
        _formal_key(tree[1], out)
        _formal_key(tree[2], out)


def _canonical_shape(tree) -> Shape:
    if tree == LEAF:
        return LEAF
    return node(tree[0], [_canonical_shape(tree[1]), _canonical_shape(tree[2])])


def generate_consequences_inductive(
    degree_: int,
) -> "tuple[int, frozenset[NormalizedRelation]]":
    """Count of the formal consequences and their normalized set.

    The final level is streamed: formal relations are deduplicated through a
    compact byte key so that degree 9 (967680 relations) stays within memory,
    and only the normalized set is materialized.
    """
    if not 4 <= degree_ <= 9:
        raise ValueError("degree must be between 4 and 9")
    relations = [_base_relation()]
    n = 4
    while n < degree_ - 1:
        relations = _next_level(relations, n)
        n += 1
    table = shape_table(degree_)
    index_of = table.index_of

    def normalized_of(ta, da, tb, db):
        return _normalize_pair(
            index_of(_canonical_shape(ta)), da, index_of(_canonical_shape(tb)), db
        )

    if degree_ == 4:
        rel = relations[0]
        return 1, frozenset({normalized_of(*rel)})

    seen: set = set()
    normalized: set[NormalizedRelation] = set()
    for rel in relations:
        for ta, da, tb, db in _expansions(rel, n):
            key = bytearray()
            _formal_key(ta, key)
            key.extend(da)
            _formal_key(tb, key)
            key.extend(db)
            frozen = bytes(key)
            if frozen in seen:
                continue
            seen.add(frozen)
            normalized.add(normalized_of(ta, da, tb, db))
    return len(seen), frozenset(normalized)
