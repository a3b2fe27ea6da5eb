import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from interchange import terms
from interchange.terms import (
    LEAF,
    Monomial,
    ParseError,
    apply_permutation,
    compare_shapes,
    compose,
    format_monomial,
    format_perm,
    format_shape,
    identity_monomial,
    identity_perm,
    inverse,
    parse_monomial,
    parse_shape,
    schroeder_large,
    shape_from_json,
    shape_table,
    shape_to_json,
    sort_key,
    transpose_shape,
    validate_shape,
)

SCHROEDER = [1, 2, 6, 22, 90, 394, 1806, 8558, 41586, 206098]

# Index -> display string for the vertices of the nontrivial degree-5
# components, used as the reference listing for the total order.
DEGREE5_TYPES = {
    8: "a∘(b•c)∘(d•e)",
    18: "a∘((b∘c)•(d∘e))",
    25: "(a•b)∘(c•d)∘e",
    26: "(a•b)∘(c•(d∘e))",
    27: "(a•b)∘(c•d•e)",
    28: "(a•b)∘((c∘d)•e)",
    30: "(a•(b∘c))∘(d•e)",
    32: "(a•b•c)∘(d•e)",
    34: "((a∘b)•c)∘(d•e)",
    41: "((a∘b)•(c∘d))∘e",
    53: "a•((b•c)∘(d•e))",
    63: "a•(b∘c)•(d∘e)",
    68: "(a∘b)•(c∘d∘e)",
    69: "(a∘b)•(c∘(d•e))",
    70: "(a∘b)•((c•d)∘e)",
    73: "(a∘b)•(c∘d)•e",
    74: "(a∘b∘c)•(d∘e)",
    76: "(a∘(b•c))•(d∘e)",
    78: "((a•b)∘c)•(d∘e)",
    87: "((a•b)∘(c•d))•e",
}

DEGREE5_TRANSPOSE_ORBITS = [
    (8, 63), (18, 53), (25, 73), (26, 69), (27, 68),
    (28, 70), (30, 76), (32, 74), (34, 78), (41, 87),
]


def cycle_perm(n, *cycles):
    images = list(range(1, n + 1))
    for cycle in cycles:
        for i, value in enumerate(cycle):
            images[value - 1] = cycle[(i + 1) % len(cycle)]
    return tuple(images)


class TestSchroeder:
    def test_table_values(self):
        assert schroeder_large(10) == SCHROEDER

    def test_base_case(self):
        assert schroeder_large(1) == [1]

    def test_degree_4_and_10(self):
        assert schroeder_large(4)[-1] == 22
        assert schroeder_large(10)[-1] == 206098

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            schroeder_large(0)

    @pytest.mark.parametrize("n", [2, 5, 9, 20])
    def test_agrees_with_lattice_path_oracle(self, n):
        # independent oracle: T(n) counts N/E/NE paths from (0,0) to
        # (n-1, n-1) that never rise above the diagonal
        m = n - 1
        grid = [[0] * (m + 1) for _ in range(m + 1)]
        grid[0][0] = 1
        for x in range(m + 1):
            for y in range(x + 1):
                if x and y <= x - 1:
                    grid[x][y] += grid[x - 1][y]
                if y:
                    grid[x][y] += grid[x][y - 1]
                if x and y:
                    grid[x][y] += grid[x - 1][y - 1]
        assert schroeder_large(n)[-1] == grid[m][m]


class TestEnumeration:
    @pytest.mark.parametrize("degree", range(1, 9))
    def test_counts_match_schroeder(self, degree):
        assert len(shape_table(degree)) == SCHROEDER[degree - 1]

    def test_counts_degree_9_and_10(self):
        assert len(shape_table(9)) == 41586
        assert len(shape_table(10)) == 206098

    def test_rejects_degree_zero(self):
        with pytest.raises(ValueError):
            terms.enumerate_shapes(0)

    def test_degree_one_is_a_leaf(self):
        table = shape_table(1)
        assert list(table) == [LEAF]

    def test_degree5_reference_listing(self):
        table = shape_table(5)
        for index, text in DEGREE5_TYPES.items():
            assert format_shape(table.shape_at(index)) == text

    def test_degree4_interchange_pair(self):
        table = shape_table(4)
        assert format_shape(table.shape_at(8)) == "(a•b)∘(c•d)"
        assert format_shape(table.shape_at(18)) == "(a∘b)•(c∘d)"

    @pytest.mark.parametrize("degree", range(2, 7))
    def test_alternation_everywhere(self, degree):
        for shape in shape_table(degree):
            validate_shape(shape)

    def test_index_of_round_trip(self):
        table = shape_table(6)
        for i, shape in enumerate(table, start=1):
            assert table.index_of(shape) == i
        with pytest.raises(ValueError):
            table.index_of(shape_table(5).shape_at(1))


class TestTotalOrder:
    def test_leaves_equal(self):
        assert compare_shapes(LEAF, LEAF) == 0

    def test_degree5_neighbours(self):
        table = shape_table(5)
        assert compare_shapes(table.shape_at(8), table.shape_at(18)) == -1
        assert compare_shapes(table.shape_at(18), table.shape_at(8)) == 1

    def test_degree9_table_row(self):
        table = shape_table(9)
        shape = parse_shape("(a•b)∘(c•d)∘(e•((f•g•h)∘i))")
        assert table.index_of(shape) == 9007

    @pytest.mark.parametrize("degree", [4, 5, 6])
    def test_strict_total_order(self, degree):
        shapes = shape_table(degree).shapes
        keys = [sort_key(s) for s in shapes]
        # listing order is strictly increasing, hence antisymmetric and total
        assert all(a < b for a, b in zip(keys, keys[1:]))

    def test_smaller_degree_comes_first(self):
        assert compare_shapes(shape_table(3).shape_at(6), shape_table(4).shape_at(1)) == -1


class TestTranspose:
    @pytest.mark.parametrize("degree", range(1, 7))
    def test_involution_on_tables(self, degree):
        table = shape_table(degree)
        seen = set()
        for shape in table:
            other = transpose_shape(shape)
            assert transpose_shape(other) == shape
            seen.add(table.index_of(other))
        assert seen == set(range(1, len(table) + 1))

    def test_degree5_orbits(self):
        table = shape_table(5)
        for a, b in DEGREE5_TRANSPOSE_ORBITS:
            assert table.index_of(transpose_shape(table.shape_at(a))) == b


class TestPermutations:
    def test_compose_identity(self):
        tau = cycle_perm(5, (2, 3, 4))
        assert compose(identity_perm(5), tau) == tau
        assert compose(tau, identity_perm(5)) == tau

    def test_path_composition_convention(self):
        # composing the walk labels (23) then (234) must give (34)
        assert compose(cycle_perm(4, (2, 3)), cycle_perm(4, (2, 3, 4))) == cycle_perm(4, (3, 4))

    def test_inverse_pair(self):
        assert compose(cycle_perm(4, (2, 4, 3)), cycle_perm(4, (2, 3, 4))) == identity_perm(4)

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            compose(identity_perm(3), identity_perm(4))

    def test_laws_exhaustive_degree_4(self):
        perms = [tuple(p) for p in itertools.permutations(range(1, 5))]
        for sigma in perms:
            assert compose(sigma, inverse(sigma)) == identity_perm(4)
            assert compose(inverse(sigma), sigma) == identity_perm(4)
        for sigma, tau, rho in itertools.product(perms[:8], perms[8:16], perms[16:]):
            assert compose(compose(sigma, tau), rho) == compose(sigma, compose(tau, rho))

    @given(st.permutations(range(1, 8)), st.permutations(range(1, 8)), st.permutations(range(1, 8)))
    def test_laws_randomized(self, sigma, tau, rho):
        sigma, tau, rho = tuple(sigma), tuple(tau), tuple(rho)
        assert compose(compose(sigma, tau), rho) == compose(sigma, compose(tau, rho))
        assert compose(sigma, inverse(sigma)) == identity_perm(7)

    def test_cycle_notation(self):
        assert format_perm(identity_perm(5)) == "()"
        assert format_perm(cycle_perm(5, (2, 3))) == "(23)"
        assert format_perm(cycle_perm(6, (2, 4), (3, 5))) == "(24)(35)"
        assert format_perm(cycle_perm(12, (2, 11))) == "(2,11)"


class TestMonomials:
    def test_identity_action(self):
        m = parse_monomial("(a•b)∘(c•d)", 4)
        assert apply_permutation(identity_perm(4), m) == m

    def test_position_action(self):
        m = parse_monomial("(a•b)∘(c•d)", 4)
        moved = apply_permutation(cycle_perm(4, (2, 3)), m)
        assert format_monomial(moved) == "(a•c)∘(b•d)"

    def test_apply_inverse_round_trip(self):
        m = parse_monomial("(a∘b)•(c∘d∘e)", 5)
        sigma = cycle_perm(5, (1, 4, 2))
        assert apply_permutation(sigma, apply_permutation(inverse(sigma), m)) == m

    def test_compose_is_apply_in_sequence(self):
        perms = [tuple(p) for p in itertools.permutations(range(1, 5))]
        m = parse_monomial("(a•b)∘(c•d)", 4)
        for sigma in perms:
            for tau in perms:
                assert apply_permutation(compose(sigma, tau), m) == apply_permutation(
                    tau, apply_permutation(sigma, m)
                )

    def test_shape_decoration_length_must_agree(self):
        with pytest.raises(ValueError):
            Monomial(parse_shape("(a•b)∘(c•d)"), (1, 2, 3))


class TestTextRoundTrip:
    @pytest.mark.parametrize("degree", [1, 2, 3, 4, 5])
    def test_print_parse_all_shapes(self, degree):
        for shape in shape_table(degree):
            assert parse_shape(format_shape(shape)) == shape

    @settings(max_examples=120)
    @given(st.data())
    def test_random_monomials(self, data):
        degree = data.draw(st.integers(min_value=1, max_value=7))
        shape = data.draw(st.sampled_from(shape_table(degree).shapes))
        perm = tuple(data.draw(st.permutations(range(1, degree + 1))))
        m = Monomial(shape, perm)
        assert parse_monomial(format_monomial(m), degree) == m

    def test_flattens_nested_chains(self):
        assert parse_shape("(a∘(b∘c))∘d") == parse_shape("a∘b∘c∘d")

    def test_operator_aliases(self):
        assert parse_monomial("(a*b)o(c*d)", 4) == parse_monomial("(a•b)∘(c•d)", 4)

    def test_ell_alias(self):
        m = parse_monomial("a∘b∘c∘d∘e∘f∘g∘h∘i∘j∘k∘ℓ", 12)
        assert m.perm == identity_perm(12)

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            parse_monomial("(a•b", 2)
        with pytest.raises(ParseError):
            parse_monomial("a∘b•c", 3)
        with pytest.raises(ParseError):
            parse_monomial("a∘a", 2)
        with pytest.raises(ParseError):
            parse_monomial("a∘c", 2)
        with pytest.raises(ParseError):
            parse_monomial("(a•b)∘(c•d)", 5)


class TestJsonCodec:
    def test_round_trip(self):
        shape = parse_shape("(a•b)∘(c•(d∘e))")
        encoded = shape_to_json(shape)
        assert encoded == ["H", ["V", "x", "x"], ["V", "x", ["H", "x", "x"]]]
        assert shape_from_json(encoded) == shape

    def test_rejects_malformed(self):
        with pytest.raises(ValueError):
            shape_from_json(["H", "x"])
        with pytest.raises(ValueError):
            shape_from_json(["Q", "x", "x"])
