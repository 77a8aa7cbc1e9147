"""CONGEST maximum-weight-independent-set approximation toolkit.

Thin re-export of the compiled core. Rationals cross the boundary as
"p/q" strings; convert with fractions.Fraction where exact arithmetic is
needed on the python side.
"""

from ._core import (
    Graph,
    MwisError,
    approx_alpha_power,
    approx_basic,
    approx_delta_eps,
    approx_directed,
    approx_generic,
    approx_linear,
    approx_squared,
    arboricity_upper_bound,
    check_ratio,
    exact_arboricity,
    exact_mwis,
    gen_forest_union,
    gen_oriented_ring,
    gen_random_dout,
    induced_subgraph,
    is_independent,
    load_graph,
    run_experiment_csv,
    save_graph,
    sparse_set,
)

__all__ = [
    "Graph",
    "MwisError",
    "approx_alpha_power",
    "approx_basic",
    "approx_delta_eps",
    "approx_directed",
    "approx_generic",
    "approx_linear",
    "approx_squared",
    "arboricity_upper_bound",
    "check_ratio",
    "exact_arboricity",
    "exact_mwis",
    "gen_forest_union",
    "gen_oriented_ring",
    "gen_random_dout",
    "induced_subgraph",
    "is_independent",
    "load_graph",
    "run_experiment_csv",
    "save_graph",
    "sparse_set",
]
