"""Exact all-terminal network failure probabilities on random graph ensembles."""

__version__ = "0.1.0"

from .exactmath import EpsPolynomial, Rational, binom, poly_eval, poly_mul  # noqa: E402
from .graphcore import (  # noqa: E402
    F2Matrix, IOWeightTable, LabeledGraph, cut_weight_distribution, cutset_oracle, f2_rank,
    incidence_matrix, io_weight_table, is_connected, null_space_size, parse_graph,
)
from .reliability import FailureProfile, eval_failure, failure_profile_enum, failure_profile_pivotal  # noqa: E402
from .ensemble import (  # noqa: E402
    EnsembleParams, epf_exact, epf_lower, epf_montecarlo, epf_upper, expected_iow, expected_t,
    match_probability, pu_exact, pu_lower, pu_upper, rank_distribution,
)

__all__ = [
    "EpsPolynomial", "Rational", "binom", "poly_eval", "poly_mul",
    "F2Matrix", "IOWeightTable", "LabeledGraph", "cut_weight_distribution", "cutset_oracle", "f2_rank",
    "incidence_matrix", "io_weight_table", "is_connected", "null_space_size", "parse_graph",
    "FailureProfile", "eval_failure", "failure_profile_enum", "failure_profile_pivotal",
    "EnsembleParams", "epf_exact", "epf_lower", "epf_montecarlo", "epf_upper", "expected_iow", "expected_t",
    "match_probability", "pu_exact", "pu_lower", "pu_upper", "rank_distribution",
]
