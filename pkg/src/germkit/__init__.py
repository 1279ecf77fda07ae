"""Exact minimal log discrepancies for surface germs from dual-graph data.

Everything computes over rational coordinate vectors in a declared span of
irrationals; comparisons are certified by shrinking interval enclosures and
no float ever enters a result.
"""

from .coefflattice import (
    BasisDescriptor,
    DEFAULT_BUDGET,
    QLinearMap,
    SpanElement,
    TRIVIAL_BASIS,
    compare,
    decimal_str,
    floor_span,
    is_ge,
    is_gt,
    is_le,
    is_lt,
    partition_of_one,
    product_basis,
    render_exact,
    shrink_delta,
    span_max,
    span_min,
    span_product,
    verify_partition,
)
from .complements import (
    ComplementDatum,
    ComplementPart,
    Decomposition,
    check_decomposable,
    check_n_complement_coeffs,
    check_strong_auto,
    epsilon_tag,
)
from .discrepancy import (
    Branch,
    DiscrepancyProfile,
    NEG_INFINITY,
    NegInfinity,
    SurfaceGermModel,
    adjunction_coefficient,
    adjunction_form,
    apply_to_coefficients,
    check_convexity,
    check_empty_graph_value,
    check_smooth_threshold,
    check_vertex_window,
    find_computing_path,
    general_closed_point_mld,
    generic_point_mld,
    mld_oracle,
    mld_point,
    resolution_model,
    smooth_point_mld,
    solve_discrepancies,
)
from .dualgraph import (
    MarkedVertexPath,
    WeightedDualGraph,
    find_chain,
    fork_census,
    graph_determinant_abs,
    hj_graph,
    hj_weights,
    intersection_matrix,
    is_negative_definite,
    split_at_edge,
)
from .enclosures import (
    ContinuedFractionEnclosure,
    NestedIntervalsEnclosure,
    PointEnclosure,
)
from .errors import (
    BasisMismatch,
    FloorUndecidable,
    GermkitError,
    HypothesesUnmet,
    ModelError,
    NotNegativeDefinite,
    RefinementExhausted,
)
from .explorer import (
    ScanConfig,
    canonical_model_doc,
    load_model,
    model_digest,
    parse_model,
    run_perturb_harness,
    run_scan,
    run_verification,
)

__version__ = "0.1.0"

__all__ = [
    "BasisDescriptor",
    "BasisMismatch",
    "Branch",
    "ComplementDatum",
    "ComplementPart",
    "ContinuedFractionEnclosure",
    "DEFAULT_BUDGET",
    "Decomposition",
    "DiscrepancyProfile",
    "FloorUndecidable",
    "GermkitError",
    "HypothesesUnmet",
    "MarkedVertexPath",
    "ModelError",
    "NEG_INFINITY",
    "NegInfinity",
    "NestedIntervalsEnclosure",
    "NotNegativeDefinite",
    "PointEnclosure",
    "QLinearMap",
    "RefinementExhausted",
    "ScanConfig",
    "SpanElement",
    "SurfaceGermModel",
    "TRIVIAL_BASIS",
    "WeightedDualGraph",
    "adjunction_coefficient",
    "adjunction_form",
    "apply_to_coefficients",
    "canonical_model_doc",
    "check_convexity",
    "check_decomposable",
    "check_empty_graph_value",
    "check_n_complement_coeffs",
    "check_smooth_threshold",
    "check_strong_auto",
    "check_vertex_window",
    "compare",
    "decimal_str",
    "epsilon_tag",
    "find_chain",
    "find_computing_path",
    "floor_span",
    "fork_census",
    "general_closed_point_mld",
    "generic_point_mld",
    "graph_determinant_abs",
    "hj_graph",
    "hj_weights",
    "intersection_matrix",
    "is_ge",
    "is_gt",
    "is_le",
    "is_lt",
    "is_negative_definite",
    "load_model",
    "mld_oracle",
    "mld_point",
    "model_digest",
    "parse_model",
    "partition_of_one",
    "product_basis",
    "render_exact",
    "resolution_model",
    "run_perturb_harness",
    "run_scan",
    "run_verification",
    "shrink_delta",
    "smooth_point_mld",
    "solve_discrepancies",
    "span_max",
    "span_min",
    "span_product",
    "split_at_edge",
    "verify_partition",
]
