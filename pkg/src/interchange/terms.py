"""Association types, multilinear monomials, and permutation arithmetic.

A double semigroup has two associative operations: horizontal composition
(printed ``∘``) and vertical composition (printed ``•``).  An association
type of degree n is a placement of parentheses and operation symbols on n
arguments; it is represented here as a planar rooted tree in flattened
n-ary form, in which every internal node has at least two children and the
operations alternate along every root-to-leaf path.  A multilinear monomial
is an association type whose leaf positions carry a permutation of the
variables a, b, c, ...
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Union

# A shape is "x" for a leaf, or a tuple (op, child, child, ...) with at
# least two children and strictly alternating operations.  Permutations are
# 1-based image tuples: perm[i-1] is the image of position i.
Shape = Union[str, tuple]
Perm = tuple

LEAF = "x"
H = "H"  # horizontal composition ∘
V = "V"  # vertical composition •

OPS = (H, V)
OTHER = {H: V, V: H}
OP_CHARS = {H: "∘", V: "•"}  # ∘ and •

# Variable letters for positions 1, 2, 3, ...  The letter "o" is excluded:
# it is accepted as an input alias for the ∘ operation symbol.
VARIABLES = "abcdefghijklmnpqrstuvwxyz"


class ParseError(ValueError):
    """Raised when monomial text cannot be parsed."""


# ---------------------------------------------------------------------------
# Schröder numbers


def schroeder_large(n_max: int) -> list[int]:
    """Return the large Schröder numbers T(1)..T(n_max).

    T(n) counts the association types in degree n.  Computed with exact
    integer arithmetic from the binomial sum
    T(n) = (1/m) * sum_{i=1..m} 2^i C(m,i) C(m,i-1) with m = n-1, which
    reproduces the table 1, 2, 6, 22, 90, 394, 1806, 8558, 41586, 206098.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    counts = [1]
    for n in range(2, n_max + 1):
        m = n - 1
        total = sum(
            (1 << i) * math.comb(m, i) * math.comb(m, i - 1) for i in range(1, m + 1)
        )
        quotient, remainder = divmod(total, m)
        if remainder:
            raise ArithmeticError(f"Schröder sum not divisible by {m}")
        counts.append(quotient)
    return counts


# ---------------------------------------------------------------------------
# Shapes


def is_leaf(shape: Shape) -> bool:
    return shape == LEAF


def degree(shape: Shape) -> int:
    """Number of leaves."""
    if shape == LEAF:
        return 1
    return sum(degree(child) for child in shape[1:])


def node(op: str, children: "list[Shape]") -> Shape:
    """Canonical internal node: flattens same-operation children and
    collapses a single-child node to its child."""
    flat: list[Shape] = []
    for child in children:
        if child != LEAF and child[0] == op:
            flat.extend(child[1:])
        else:
            flat.append(child)
    if len(flat) == 1:
        return flat[0]
    return (op,) + tuple(flat)


def validate_shape(shape: Shape) -> None:
    """Check the n-ary alternating-tree invariants; raise ValueError if broken."""
    if shape == LEAF:
        return
    if not isinstance(shape, tuple) or len(shape) < 3 or shape[0] not in OPS:
        raise ValueError(f"malformed shape node: {shape!r}")
    op = shape[0]
    for child in shape[1:]:
        if child != LEAF:
            if not isinstance(child, tuple) or child[0] != OTHER[op]:
                raise ValueError(f"alternation violated under {op}: {child!r}")
            validate_shape(child)


def transpose_shape(shape: Shape) -> Shape:
    """Swap the two operations at every internal node (an involution)."""
    if shape == LEAF:
        return LEAF
    return (OTHER[shape[0]],) + tuple(transpose_shape(c) for c in shape[1:])


def shape_to_json(shape: Shape):
    """Nested-list encoding: ["H"|"V", child, ...] with "x" for leaves."""
    if shape == LEAF:
        return LEAF
    return [shape[0]] + [shape_to_json(c) for c in shape[1:]]


def shape_from_json(data) -> Shape:
    if data == LEAF:
        return LEAF
    if not isinstance(data, list) or len(data) < 3 or data[0] not in OPS:
        raise ValueError(f"bad shape encoding: {data!r}")
    shape = node(data[0], [shape_from_json(c) for c in data[1:]])
    validate_shape(shape)
    return shape


# ---------------------------------------------------------------------------
# Total order on association types
#
# Shapes of smaller degree come first.  At equal degree the shape is viewed
# in right-justified binary form (a chain c1 * (c2 * (c3 * ...)) for each
# flattened node); the root operation decides with ∘ before •, then the left
# and right binary factors are compared recursively.


@lru_cache(maxsize=None)
def sort_key(shape: Shape):
    """Nested-tuple key whose lexicographic order is the total order."""
    if shape == LEAF:
        return (1,)
    op = shape[0]
    children = shape[1:]
    left = children[0]
    right = children[1] if len(children) == 2 else (op,) + children[1:]
    return (degree(shape), 0 if op == H else 1, sort_key(left), sort_key(right))


def compare_shapes(s1: Shape, s2: Shape) -> int:
    """Return -1, 0, or 1 as s1 precedes, equals, or follows s2."""
    k1, k2 = sort_key(s1), sort_key(s2)
    if k1 < k2:
        return -1
    if k1 > k2:
        return 1
    return 0


# ---------------------------------------------------------------------------
# Enumeration


def _child_options(n: int, op: str) -> "tuple[Shape, ...]":
    """Possible children of an op-node that use n leaves."""
    if n == 1:
        return (LEAF,)
    return _rooted(n, OTHER[op])


def _child_sequences(n: int, op: str) -> Iterator["tuple[Shape, ...]"]:
    """All nonempty child tuples for an op-node, degrees summing to n."""
    for m in range(1, n + 1):
        for first in _child_options(m, op):
            if m == n:
                yield (first,)
            else:
                for rest in _child_sequences(n - m, op):
                    yield (first,) + rest


@lru_cache(maxsize=None)
def _rooted(n: int, op: str) -> "tuple[Shape, ...]":
    """All shapes of degree n whose root operation is op (n >= 2)."""
    if n < 2:
        return ()
    out = []
    # The first child takes m < n leaves, so the node has >= 2 children.
    for m in range(1, n):
        for first in _child_options(m, op):
            for rest in _child_sequences(n - m, op):
                out.append((op, first) + rest)
    return tuple(out)


@dataclass(frozen=True)
class ShapeTable:
    """All association types of one degree, sorted by the total order.

    Indices are 1-based throughout, matching the numbering used in listings
    and component tables.
    """

    degree: int
    shapes: "tuple[Shape, ...]"
    _index: dict = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.shapes)

    def __iter__(self):
        return iter(self.shapes)

    def shape_at(self, index: int) -> Shape:
        if not 1 <= index <= len(self.shapes):
            raise ValueError(f"index {index} out of range 1..{len(self.shapes)}")
        return self.shapes[index - 1]

    def index_of(self, shape: Shape) -> int:
        try:
            return self._index[shape]
        except KeyError:
            raise ValueError(f"shape of degree {self.degree} not in table: {shape!r}")


@lru_cache(maxsize=None)
def shape_table(degree_: int) -> ShapeTable:
    """Enumerate and sort all T(n) association types of the given degree."""
    if degree_ < 1:
        raise ValueError("degree must be >= 1")
    if degree_ == 1:
        shapes: tuple = (LEAF,)
    else:
        shapes = _rooted(degree_, H) + _rooted(degree_, V)
        shapes = tuple(sorted(shapes, key=sort_key))
    expected = schroeder_large(degree_)[-1]
    if len(shapes) != expected:
        raise AssertionError(
            f"enumerated {len(shapes)} shapes in degree {degree_}, expected {expected}"
        )
    index = {shape: i + 1 for i, shape in enumerate(shapes)}
    return ShapeTable(degree_, shapes, index)


def enumerate_shapes(degree_: int) -> ShapeTable:
    return shape_table(degree_)


# ---------------------------------------------------------------------------
# Permutations (1-based image tuples: perm[i-1] is the image of i)


def identity_perm(n: int) -> "tuple[int, ...]":
    return tuple(range(1, n + 1))


def is_identity(perm: "tuple[int, ...]") -> bool:
    return all(image == i + 1 for i, image in enumerate(perm))


def validate_perm(perm: "tuple[int, ...]") -> None:
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise ValueError(f"not a permutation of 1..{len(perm)}: {perm!r}")


def compose(sigma: "tuple[int, ...]", tau: "tuple[int, ...]") -> "tuple[int, ...]":
    """Product for path composition: applying the result to a monomial is
    the same as applying sigma first, then tau.

    As functions on positions this is x -> sigma(tau(x)); with the position
    action of apply_permutation it satisfies
    apply(compose(s, t), m) == apply(t, apply(s, m)).
    """
    if len(sigma) != len(tau):
        raise ValueError(f"degree mismatch: {len(sigma)} vs {len(tau)}")
    return tuple(sigma[t - 1] for t in tau)


def inverse(sigma: "tuple[int, ...]") -> "tuple[int, ...]":
    out = [0] * len(sigma)
    for i, image in enumerate(sigma):
        out[image - 1] = i + 1
    return tuple(out)


def perm_cycles(sigma: "tuple[int, ...]") -> "list[tuple[int, ...]]":
    """Disjoint cycles (fixed points omitted), each starting at its minimum,
    sorted by minimum."""
    seen = [False] * len(sigma)
    cycles = []
    for start in range(1, len(sigma) + 1):
        if seen[start - 1]:
            continue
        cycle = [start]
        seen[start - 1] = True
        current = sigma[start - 1]
        while current != start:
            cycle.append(current)
            seen[current - 1] = True
            current = sigma[current - 1]
        if len(cycle) > 1:
            cycles.append(tuple(cycle))
    return cycles


def format_perm(sigma: "tuple[int, ...]") -> str:
    """Cycle notation: "(23)" style for degree <= 9, comma-separated above."""
    cycles = perm_cycles(sigma)
    if not cycles:
        return "()"
    if len(sigma) <= 9:
        return "".join("(" + "".join(str(k) for k in cycle) + ")" for cycle in cycles)
    return "".join("(" + ",".join(str(k) for k in cycle) + ")" for cycle in cycles)


# ---------------------------------------------------------------------------
# Monomials


@dataclass(frozen=True)
class Monomial:
    """An association type whose position i carries variable number perm[i-1]."""

    shape: Shape
    perm: "tuple[int, ...]"

    def __post_init__(self):
        if len(self.perm) != degree(self.shape):
            raise ValueError(
                f"decoration of length {len(self.perm)} on a shape of degree "
                f"{degree(self.shape)}"
            )

    @property
    def degree(self) -> int:
        return len(self.perm)


def identity_monomial(shape: Shape) -> Monomial:
    return Monomial(shape, identity_perm(degree(shape)))


def apply_permutation(sigma: "tuple[int, ...]", m: Monomial) -> Monomial:
    """Position action: the variable at position i of the result is the
    variable at position sigma(i) of m."""
    if len(sigma) != m.degree:
        raise ValueError(f"degree mismatch: {len(sigma)} vs {m.degree}")
    return Monomial(m.shape, tuple(m.perm[s - 1] for s in sigma))


def transpose_monomial(m: Monomial) -> Monomial:
    return Monomial(transpose_shape(m.shape), m.perm)


# ---------------------------------------------------------------------------
# Printing


def variable_name(i: int) -> str:
    if not 1 <= i <= len(VARIABLES):
        raise ValueError(f"no variable letter for position {i}")
    return VARIABLES[i - 1]


def variable_number(name: str) -> int:
    try:
        return VARIABLES.index(name) + 1
    except ValueError:
        raise ParseError(f"not a variable letter: {name!r}")


def _format(shape: Shape, names: "list[str]", pos: int) -> "tuple[str, int]":
    if shape == LEAF:
        return names[pos], pos + 1
    parts = []
    for child in shape[1:]:
        text, pos = _format(child, names, pos)
        if child != LEAF:
            text = "(" + text + ")"
        parts.append(text)
    return OP_CHARS[shape[0]].join(parts), pos


def format_shape(shape: Shape) -> str:
    """Identity-decorated display, e.g. "(a•b)∘(c•(d∘e))"."""
    names = [variable_name(i) for i in range(1, degree(shape) + 1)]
    text, _ = _format(shape, names, 0)
    return text


def format_monomial(m: Monomial) -> str:
    names = [variable_name(k) for k in m.perm]
    text, _ = _format(m.shape, names, 0)
    return text


print_monomial = format_monomial


# ---------------------------------------------------------------------------
# Parsing


def _tokenize(text: str) -> "list[str]":
    tokens = []
    for ch in text:
        if ch.isspace():
            continue
        if ch in "()":
            tokens.append(ch)
        elif ch in ("∘", "o"):
            tokens.append(H)
        elif ch in ("•", "*"):
            tokens.append(V)
        elif ch == "ℓ":  # ℓ is an alias for l
            tokens.append("var:l")
        elif ch in VARIABLES:
            tokens.append("var:" + ch)
        else:
            raise ParseError(f"unexpected character {ch!r}")
    return tokens


class _Parser:
    def __init__(self, tokens: "list[str]"):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        token = self.peek()
        if token is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return token

    def factor(self) -> "tuple[Shape, list[str]]":
        token = self.take()
        if token == "(":
            shape, names = self.chain()
            if self.take() != ")":
                raise ParseError("expected ')'")
            return shape, names
        if token.startswith("var:"):
            return LEAF, [token[4:]]
        raise ParseError(f"expected a variable or '(', got {token!r}")

    def chain(self) -> "tuple[Shape, list[str]]":
        shape, names = self.factor()
        children = [shape]
        op = None
        while self.peek() in OPS:
            token = self.take()
            if op is None:
                op = token
            elif token != op:
                raise ParseError("mixed operations in one chain need parentheses")
            child, child_names = self.factor()
            children.append(child)
            names.extend(child_names)
        if op is None:
            return children[0], names
        return node(op, children), names


def parse_term(text: str) -> "tuple[Shape, list[str]]":
    """Parse to (canonical shape, leaf names left to right).

    Same-operation nesting such as "(a∘(b∘c))∘d" is flattened; names must be
    distinct single letters.
    """
    parser = _Parser(_tokenize(text))
    shape, names = parser.chain()
    if parser.peek() is not None:
        raise ParseError(f"trailing input at token {parser.pos}")
    if len(set(names)) != len(names):
        raise ParseError(f"repeated variable in {text!r}")
    validate_shape(shape)
    return shape, names


def parse_shape(text: str) -> Shape:
    shape, _ = parse_term(text)
    return shape


def parse_monomial(text: str, degree_: int) -> Monomial:
    """Parse a monomial over the variables a, b, ... of the given degree."""
    shape, names = parse_term(text)
    if len(names) != degree_:
        raise ParseError(f"expected degree {degree_}, found {len(names)} variables")
    expected = set(VARIABLES[:degree_])
    if set(names) != expected:
        raise ParseError(
            f"expected the variables {''.join(sorted(expected))}, got {''.join(sorted(names))}"
        )
    return Monomial(shape, tuple(variable_number(name) for name in names))
