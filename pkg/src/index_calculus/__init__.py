"""Exact index calculus and admissibility checkers."""

from src.index_calculus.criteria import (
    check_global_criterion,
    check_local_criterion,
    check_yz_criterion,
)
from src.index_calculus.estimates import admissible_estimate
from src.index_calculus.exponent import INF, Exponent, parse_rational
from src.index_calculus.indices import (
    Admissibility,
    EstimateIndices,
    IndexTuple,
    check_scaling,
    lambda_gap,
    lambda_index,
    omega_index,
    ptilde_global,
    ptilde_local,
)
from src.index_calculus.initial_data import check_initial_data_conditions

__all__ = [
    "INF",
    "Admissibility",
    "EstimateIndices",
    "Exponent",
    "IndexTuple",
    "admissible_estimate",
    "check_global_criterion",
    "check_initial_data_conditions",
    "check_local_criterion",
    "check_scaling",
    "check_yz_criterion",
    "lambda_gap",
    "lambda_index",
    "omega_index",
    "parse_rational",
    "ptilde_global",
    "ptilde_local",
]
