"""Simulation-based reduction of nondeterministic Büchi automata."""

from .automata import (
    BaParseError,
    LassoWord,
    Nba,
    QuotientMap,
    StateRelation,
    complete,
    fig_1a,
    fig_2,
    fig_3,
    fig_7,
    fig_9,
    induced_equivalence,
    parse_ba,
    quotient,
    random_nba,
    reverse,
    trim,
    write_ba,
    write_dot,
)
from .fixedword import (
    Aba,
    FxLimits,
    collapse_check,
    fx_delayed_sim,
    lasso_kpebble_delayed,
    mh_to_nba,
    product_aba,
)
from .games import GameGraph, cpre, solve_buchi, solve_safety
from .langops import (
    CapExceeded,
    accepts_lasso,
    complement,
    equivalent,
    includes,
    intersect,
    is_empty,
    universal,
)
from .proxy import ReductionReport, proxy_delayed, proxy_direct, reduce_pipeline
from .simulations import (
    backward_direct_sim,
    delayed_containment,
    delayed_sim,
    direct_sim,
)
from .transformers import is_appealing_fragment, tau0, tau0_de, tau1, tau1_de

__all__ = [
    "Aba",
    "BaParseError",
    "CapExceeded",
    "FxLimits",
    "GameGraph",
    "LassoWord",
    "Nba",
    "QuotientMap",
    "ReductionReport",
    "StateRelation",
    "accepts_lasso",
    "backward_direct_sim",
    "collapse_check",
    "complement",
    "complete",
    "cpre",
    "delayed_containment",
    "delayed_sim",
    "direct_sim",
    "equivalent",
    "fig_1a",
    "fig_2",
    "fig_3",
    "fig_7",
    "fig_9",
    "fx_delayed_sim",
    "includes",
    "induced_equivalence",
    "intersect",
    "is_appealing_fragment",
    "is_empty",
    "lasso_kpebble_delayed",
    "mh_to_nba",
    "parse_ba",
    "product_aba",
    "proxy_delayed",
    "proxy_direct",
    "quotient",
    "random_nba",
    "reduce_pipeline",
    "reverse",
    "solve_buchi",
    "solve_safety",
    "tau0",
    "tau0_de",
    "tau1",
    "tau1_de",
    "trim",
    "universal",
    "write_ba",
    "write_dot",
]
