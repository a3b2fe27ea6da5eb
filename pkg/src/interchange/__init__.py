"""Interchange-law analysis for double semigroups.

The package enumerates association types, generates the normalized
consequences of the interchange law, builds the permutation-labelled
quotient graph of each degree, analyzes cycle spaces and monodromy, and
extracts commutativity identities with replayable rewrite proofs.
"""

from .terms import (
    Monomial,
    ShapeTable,
    apply_permutation,
    compare_shapes,
    compose,
    enumerate_shapes,
    format_monomial,
    format_perm,
    format_shape,
    identity_monomial,
    inverse,
    parse_monomial,
    parse_shape,
    schroeder_large,
    shape_table,
)
from .rewrite import (
    NormalizedRelation,
    Redex,
    apply_redex,
    find_redexes,
    generate_consequences_inductive,
    generate_relations,
)
from .graph import (
    Component,
    QuotientGraph,
    build_quotient_graph,
    cache_roundtrip,
    component_summary,
    connected_components,
    count_free_monomials,
    lift_path,
)
from .cycles import (
    CycleBasis,
    MonodromyReport,
    canonical_cycle_basis,
    cycle_permutation,
    find_nontrivial_components,
    fundamental_cycle_basis,
    monodromy_group,
)
from .witness import (
    Identity,
    Proof,
    extract_identity,
    kock_derivation_check,
    substitute_and_multiply,
    transpose_operations,
    verify_proof,
)

__version__ = "0.1.0"
