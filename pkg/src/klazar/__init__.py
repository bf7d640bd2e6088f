"""Increasing ordered trees, perfect matchings, and the maps between them.

The package provides the five equinumerous families (trees, violator-free
marked trees, matchings, build codes, trapezoidal words), the bijections
connecting them, exact counting tables, and truncated exponential
generating functions over rational coefficients.
"""

from __future__ import annotations

from .bijections import (
    Phi_explicit,
    Phi_recursive,
    phi,
    phi_inverse,
    sigma,
    sigma_inverse,
    tau,
    tau_inverse,
    tau_variant,
    uplines_from_matchcode,
    violators_from_treecode,
)
from .codes import (
    code_from_text,
    code_to_matching,
    code_to_text,
    code_to_trapezoidal,
    code_to_tree,
    enumerate_match_codes,
    enumerate_tree_codes,
    enumerate_words,
    matchcode_to_treecode,
    matching_to_code,
    trapezoidal_to_code,
    tree_to_code,
    treecode_to_matchcode,
    validate_match_code,
    validate_tree_code,
    validate_word,
    word_from_text,
    word_parity_stats,
    word_to_text,
)
from .counting import (
    CountTable,
    bad_vertex_distribution,
    binomial,
    eq4_terms,
    no_upline_count,
    no_upline_refined,
    no_upline_refined2,
    odd_double_factorial,
    refined_tree_counts,
    refined_tree_counts4,
    stirling2,
    w12_sequence,
)
from .matching_core import (
    EMPTY_MATCHING,
    DotRef,
    EdgeClasses,
    Matching,
    PowerMatching,
    StirlingMatching,
    check_power,
    check_stirling,
    class2_expand,
    class2_reduce,
    class3_expand,
    class3_reduce,
    classify_edges,
    compose_no_upline,
    decompose_no_upline,
    enlarge,
    enumerate_matchings,
    enumerate_power_matchings,
    enumerate_stirling_matchings,
    matching_from_text,
    matching_to_text,
    prune_matching,
    recurrence_class,
    shift_S,
    stirling_to_partition,
    uplines,
    weak_downlines,
)
from .series import (
    TruncatedEGF,
    gf_even_odd,
    gf_Fstarstar,
    gf_kv,
    gf_leaves,
    gf_trivariate,
    gf_vertical,
    gf_w12,
    series_add,
    series_exp,
    series_inv,
    series_inv_sqrt,
    series_mul,
    series_scale,
    series_sqrt,
)
from .tree_core import (
    INFINITY,
    MarkedTree,
    Tree,
    VertexStats,
    apply_F_tables,
    associate,
    bad_vertices,
    big_cohort,
    check_increasing_tree,
    check_marked_tree,
    cohort,
    descent_terminators,
    enumerate_increasing_trees,
    enumerate_shapes,
    H_map,
    involution_F,
    klazar_violators,
    klazar_weighted_sum,
    pi_inverse,
    pi_leaf_map,
    prune_tree,
    reverse_bad_vertices,
    shape_edges,
    shape_leaves,
    shape_of,
    tables_of,
    tree_from_json,
    tree_from_tables,
    tree_from_text,
    tree_stats,
    tree_to_json,
    tree_to_text,
    violator_partner,
    violator_partners,
    w12_of_shape,
)

__all__ = [name for name in dir() if not name.startswith("_")]
