"""Exact census of cycle structure for polynomial and rational-map
dynamics over finite fields, with closed-form cross-checks and
random-map baselines."""

from .ffield import FieldCtx, FqElem, enumerate_elements, make_field
from .fmaps import (
    CONSTANT_INFINITY,
    Mobius,
    Poly,
    ProjPoint,
    RationalMap,
    canonicalize_rational,
    conjugate,
    enumerate_mobius,
    enumerate_polys,
    enumerate_rationals,
    eval_poly,
    eval_rational,
    interpolate,
)
from .fgraph import (
    CycleStats,
    FunctionalGraph,
    brent_rho,
    build_graph,
    cycle_census,
    graph_from_succ,
    rho_length,
)
from .theory import (
    BoundSet,
    QuadGraphStats,
    RandomMapStats,
    coprime_prob,
    falling,
    harmonic,
    poly_avg_k,
    poly_component_bounds,
    poly_cycle_sum,
    poly_periodic_lower,
    quad_graph_stats,
    random_map_stats,
    rat_avg_k_bounds,
    rat_component_bounds,
    rat_count,
    rat_k_cycle_total_bounds,
    rat_periodic_lower,
)
from .census import (
    BudgetError,
    CensusReport,
    TheoryComparison,
    count_cycle_givers,
    enumerate_S,
    poly_census,
    poly_cycle_totals_at_most,
    rat_census,
    rat_cycle_totals_at_most,
    rho_experiment,
    sampled_census,
)
from .baseline import (
    BaselineReport,
    baseline_census,
    enumerate_quadratic_graphs,
    exhaustive_random_stats,
    sample_quadratic_graph,
    sample_random_map,
)

__all__ = [
    "BaselineReport",
    "BoundSet",
    "BudgetError",
    "CONSTANT_INFINITY",
    "CensusReport",
    "CycleStats",
    "FieldCtx",
    "FqElem",
    "FunctionalGraph",
    "Mobius",
    "Poly",
    "ProjPoint",
    "QuadGraphStats",
    "RandomMapStats",
    "RationalMap",
    "TheoryComparison",
    "baseline_census",
    "brent_rho",
    "build_graph",
    "canonicalize_rational",
    "conjugate",
    "coprime_prob",
    "count_cycle_givers",
    "cycle_census",
    "enumerate_S",
    "enumerate_elements",
    "enumerate_mobius",
    "enumerate_polys",
    "enumerate_quadratic_graphs",
    "enumerate_rationals",
    "eval_poly",
    "eval_rational",
    "exhaustive_random_stats",
    "falling",
    "graph_from_succ",
    "harmonic",
    "interpolate",
    "make_field",
    "poly_avg_k",
    "poly_census",
    "poly_component_bounds",
    "poly_cycle_sum",
    "poly_cycle_totals_at_most",
    "poly_periodic_lower",
    "quad_graph_stats",
    "random_map_stats",
    "rat_avg_k_bounds",
    "rat_census",
    "rat_component_bounds",
    "rat_count",
    "rat_cycle_totals_at_most",
    "rat_k_cycle_total_bounds",
    "rat_periodic_lower",
    "rho_experiment",
    "rho_length",
    "sample_quadratic_graph",
    "sample_random_map",
    "sampled_census",
]

__version__ = "0.1.0"
