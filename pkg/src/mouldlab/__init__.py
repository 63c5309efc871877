"""Exact computer algebra for the anticyclic operad of moulds.

Components of arity n are rational functions of u1..un over Q, composed by
substituting interval sums of consecutive variables.  The package covers the
operad structure and its cyclic action, the dendriform and tridendriform
suboperads spanned by images of planar binary (resp. planar) trees, the
bigger suboperad indexed by plants on a polygon, classical mould operations
(mu, limu, ari, over, under, derivation), a gallery of named mould families,
and the degree-respecting map onto formal power series.
"""

from .operad import (
    Mould,
    MouldComponent,
    ari,
    arit,
    arrow,
    circ,
    compose_at,
    dend_left,
    dend_right,
    derivation,
    forgetful,
    is_alternal,
    is_vegetal,
    limu,
    middle_gen,
    mould_mu,
    mu,
    over,
    prec,
    push,
    push_inverse,
    succ,
    under,
    unit,
)
from .core.poly import Polynomial, T, U, VarId, X
from .core.ratfun import RatFun, interval_form, residue_at_zero
from .core.series import PowerSeries
from .trees import (
    LEAF,
    binary_decompose,
    binary_trees,
    expand_in_tree_basis,
    graft_generator,
    left_comb,
    multi_residue,
    pi,
    planar_generator_expression,
    planar_trees,
    psi_tree,
    right_comb,
    sum_psi_trees,
    tamari_covers,
    tamari_interval,
    tamari_leq,
    top_vertex_removals,
    tree_basis_independent,
    tree_from_text,
    tree_to_text,
    vertex_intervals,
)
from .plants import (
    Plant,
    border_leaves,
    decompose,
    enumerate_plants,
    graft,
    is_valid_plant,
    peeling_points,
    plant_counts_series,
    plant_kind,
    psi_plant,
    push_plant,
    unit_plant,
)
from .gallery import (
    GALLERY_NAMES,
    as_mould,
    cm_closed,
    cm_mould,
    named_mould,
    po_mould,
    po_recursion,
    pq_sum,
    ty_mould,
    weighted_mould,
)

__version__ = "0.1.0"

__all__ = [
    "GALLERY_NAMES",
    "LEAF",
    "Mould",
    "MouldComponent",
    "Plant",
    "PowerSeries",
    "Polynomial",
    "RatFun",
    "T",
    "U",
    "VarId",
    "X",
    "ari",
    "arit",
    "arrow",
    "as_mould",
    "binary_decompose",
    "binary_trees",
    "border_leaves",
    "circ",
    "cm_closed",
    "cm_mould",
    "compose_at",
    "decompose",
    "dend_left",
    "dend_right",
    "derivation",
    "enumerate_plants",
    "expand_in_tree_basis",
    "forgetful",
    "graft",
    "graft_generator",
    "interval_form",
    "is_alternal",
    "is_valid_plant",
    "is_vegetal",
    "left_comb",
    "limu",
    "middle_gen",
    "mould_mu",
    "mu",
    "multi_residue",
    "named_mould",
    "over",
    "peeling_points",
    "pi",
    "planar_generator_expression",
    "planar_trees",
    "plant_counts_series",
    "plant_kind",
    "po_mould",
    "po_recursion",
    "pq_sum",
    "prec",
    "psi_plant",
    "psi_tree",
    "push",
    "push_inverse",
    "push_plant",
    "residue_at_zero",
    "right_comb",
    "succ",
    "sum_psi_trees",
    "tamari_covers",
    "tamari_interval",
    "tamari_leq",
    "top_vertex_removals",
    "tree_basis_independent",
    "tree_from_text",
    "tree_to_text",
    "ty_mould",
    "under",
    "unit",
    "unit_plant",
    "vertex_intervals",
    "weighted_mould",
]
