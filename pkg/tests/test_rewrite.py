import pytest

from interchange.rewrite import (
    InvalidRedexError,
    NormalizedRelation,
    Redex,
    apply_redex,
    consequence_count,
    find_redexes,
    generate_consequences_inductive,
    generate_relations,
    inverse_redex,
    normalize_relation,
)
from interchange.terms import (
    format_monomial,
    format_perm,
    identity_monomial,
    identity_perm,
    inverse,
    parse_monomial,
    parse_shape,
    shape_table,
)

NC_COUNTS = {4: 1, 5: 12, 6: 98, 7: 688, 8: 4482}
C_COUNTS = {4: 1, 5: 12, 6: 168, 7: 2688, 8: 48384}


class TestFindRedexes:
    def test_pure_chain_has_none(self):
        assert find_redexes(parse_shape("a∘b∘c∘d∘e∘f")) == []

    def test_interchange_square(self):
        redexes = find_redexes(parse_shape("(a•b)∘(c•d)"))
        assert redexes == [Redex((), 1, 1, 1, "fwd")]

    def test_two_backward_redexes_after_flattening(self):
        redexes = find_redexes(parse_shape("(a∘b)•(c∘(d∘e))"))
        assert [r.direction for r in redexes] == ["bwd", "bwd"]
        assert sorted(r.right_split for r in redexes) == [1, 2]

    def test_deterministic_order(self):
        shape = parse_shape("((a•b)∘(c•d))•((e•f)∘(g•h))")
        redexes = find_redexes(shape)
        assert redexes == sorted(
            redexes, key=lambda r: (r.path, r.pair, r.left_split, r.right_split)
        )


class TestApplyRedex:
    def test_interchange_square(self):
        m = parse_monomial("(a•b)∘(c•d)", 4)
        (redex,) = find_redexes(m.shape)
        assert format_monomial(apply_redex(m, redex)) == "(a∘c)•(b∘d)"

    def test_split_inside_a_chain(self):
        m = parse_monomial("(a∘b)•(c∘d∘e)", 5)
        redex = [r for r in find_redexes(m.shape) if r.right_split == 1][0]
        result = apply_redex(m, redex)
        assert format_monomial(result) == "(a•c)∘(b•(d∘e))"
        table = shape_table(5)
        rel = normalize_relation(table, m, result)
        assert (rel.left, rel.right, format_perm(rel.sigma)) == (26, 68, "(23)")

    def test_other_split_gives_the_shifted_cycle(self):
        m = parse_monomial("(a∘b)•(c∘d∘e)", 5)
        redex = [r for r in find_redexes(m.shape) if r.right_split == 2][0]
        rel = normalize_relation(shape_table(5), m, apply_redex(m, redex))
        assert (rel.left, rel.right, format_perm(rel.sigma)) == (30, 68, "(243)")

    def test_decorations_travel_with_leaves(self):
        m = parse_monomial("(b•d)∘(a•c)", 4)
        (redex,) = find_redexes(m.shape)
        assert format_monomial(apply_redex(m, redex)) == "(b∘a)•(d∘c)"

    @pytest.mark.parametrize("degree", [4, 5, 6])
    def test_involution_exhaustive(self, degree):
        for shape in shape_table(degree):
            m = identity_monomial(shape)
            for redex in find_redexes(shape):
                backward = inverse_redex(m, redex)
                assert apply_redex(apply_redex(m, redex), backward) == m

    @pytest.mark.parametrize("degree", [4, 5, 6])
    def test_degree_and_multilinearity_preserved(self, degree):
        for shape in shape_table(degree):
            m = identity_monomial(shape)
            for redex in find_redexes(shape):
                result = apply_redex(m, redex)
                assert sorted(result.perm) == list(range(1, degree + 1))

    def test_rejects_wrong_direction(self):
        m = parse_monomial("(a•b)∘(c•d)", 4)
        with pytest.raises(InvalidRedexError):
            apply_redex(m, Redex((), 1, 1, 1, "bwd"))

    def test_rejects_bad_path(self):
        m = parse_monomial("(a•b)∘(c•d)", 4)
        with pytest.raises(InvalidRedexError):
            apply_redex(m, Redex((5,), 1, 1, 1, "fwd"))

    def test_rejects_split_out_of_range(self):
        m = parse_monomial("(a•b)∘(c•d)", 4)
        with pytest.raises(InvalidRedexError):
            apply_redex(m, Redex((), 1, 2, 1, "fwd"))


class TestGenerateRelations:
    @pytest.mark.parametrize("degree,count", sorted(NC_COUNTS.items()))
    def test_counts(self, degree, count):
        assert len(generate_relations(degree)) == count

    def test_degree4_is_the_interchange_relation(self):
        (rel,) = generate_relations(4)
        assert rel == NormalizedRelation(8, 18, (1, 3, 2, 4))

    def test_degrees_2_and_3_are_empty(self):
        assert generate_relations(2) == ()
        assert generate_relations(3) == ()

    def test_normalization_idempotent(self):
        table = shape_table(6)
        for rel in generate_relations(6):
            left = identity_monomial(table.shape_at(rel.left))
            right = left.__class__(table.shape_at(rel.right), rel.sigma)
            assert normalize_relation(table, left, right) == rel
            assert normalize_relation(table, right, left) == rel

    @pytest.mark.parametrize("degree", [4, 5, 6, 7])
    def test_boundary_positions_fixed(self, degree):
        # the outermost arguments of the interchange law never move
        for rel in generate_relations(degree):
            assert rel.sigma[0] == 1
            assert rel.sigma[-1] == degree

    def test_worker_count_does_not_change_the_result(self):
        assert generate_relations(6, workers=2) == generate_relations(6, workers=1)

    @pytest.mark.parametrize("degree", [5, 6, 7])
    def test_transposing_operations_permutes_the_relation_set(self, degree):
        from interchange.terms import transpose_shape

        table = shape_table(degree)
        relations = set(generate_relations(degree))
        transposed = set()
        for rel in relations:
            left = table.index_of(transpose_shape(table.shape_at(rel.left)))
            right = table.index_of(transpose_shape(table.shape_at(rel.right)))
            if left <= right:
                transposed.add(NormalizedRelation(left, right, rel.sigma))
            else:
                transposed.add(NormalizedRelation(right, left, inverse(rel.sigma)))
        assert transposed == relations


class TestInductiveOracle:
    @pytest.mark.parametrize("degree", [4, 5, 6, 7])
    def test_counts_and_set_equality(self, degree):
        count, normalized = generate_consequences_inductive(degree)
        assert count == C_COUNTS[degree] == consequence_count(degree)
        assert normalized == set(generate_relations(degree))

    def test_degree8(self):
        count, normalized = generate_consequences_inductive(8)
        assert count == 48384
        assert normalized == set(generate_relations(8))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            generate_consequences_inductive(3)
        with pytest.raises(ValueError):
            generate_consequences_inductive(10)
