"""
Hypothesis checks for the weighted kernel estimates.

Decay (heat and Oseen), parabola-localized, time-integral and Duhamel
estimates, each judged on an EstimateIndices with named violations and the
derived decay rate, localization exponent or scaling balance.
Follows SRP: Estimate admissibility only.
"""

from fractions import Fraction
from typing import Callable, Dict

from src.common.types import CaseLabel, EstimateKind
from src.index_calculus.exponent import INF, inv
from src.index_calculus.indices import (
    Admissibility,
    EstimateIndices,
    lambda_index,
    omega_index,
)

LAMBDA_ORDERING = "Lambda ordering"
LAMBDA_GAP_NEGATIVE = "Lambda gap < 0"
BETA_LOWER = "beta > -n/q"
ALPHA_UPPER = "alpha < n/p'"
OMEGA_BALANCE = "Omega balance"


def _lambdas(e: EstimateIndices, adm: Admissibility) -> Fraction:
    lam_a = lambda_index(e.alpha, e.p, e.ptilde, e.n)
    lam_b = lambda_index(e.beta, e.q, e.qtilde, e.n)
    adm.derived["lambda_alpha"] = lam_a
    adm.derived["lambda_beta"] = lam_b
    adm.derived["lambda_gap"] = lam_a - lam_b
    return lam_a - lam_b


def _weights(e: EstimateIndices, adm: Admissibility) -> None:
    adm.require(e.beta + e.n * inv(e.q) > 0, BETA_LOWER)
    adm.require(e.alpha < e.n * (1 - inv(e.p)), ALPHA_UPPER)


def _decay_rate(e: EstimateIndices, oseen: bool) -> Fraction:
    """(|eta| + n/p - n/q + alpha - beta)/2, plus 1/2 for the Oseen operator"""
    base = e.eta + e.n * inv(e.p) - e.n * inv(e.q) + e.alpha - e.beta
    return ((1 if oseen else 0) + base) / 2


def _decay(e: EstimateIndices, oseen: bool, localized: bool) -> Admissibility:
    adm = Admissibility(CaseLabel.NONE)
    adm.require(e.p <= e.q, "p <= q")
    adm.require(e.ptilde <= e.qtilde, "ptilde <= qtilde")
    _weights(e, adm)
    gap = _lambdas(e, adm)
    if localized:
        adm.require(gap < 0, LAMBDA_GAP_NEGATIVE)
        adm.derived["localization_exponent"] = -gap
    else:
        adm.require(gap >= 0, LAMBDA_ORDERING)

    rate = _decay_rate(e, oseen)
    adm.derived["rate"] = rate
    if oseen:
        adm.require(rate > 0, "rate > 0")
    else:
        adm.require(rate >= 0, "rate >= 0")
    return adm


def _integral(e: EstimateIndices, localized: bool) -> Admissibility:
    adm = Admissibility(CaseLabel.NONE)
    adm.require(e.p <= e.q, "p <= q")
    # q < np/((eta+alpha-beta)p + n - 2), read through reciprocals
    upper_reciprocal = (e.eta + e.alpha - e.beta) / e.n + Fraction(e.n - 2, e.n) * inv(e.p)
    adm.derived["q_upper_reciprocal"] = upper_reciprocal
    adm.require(inv(e.q) > upper_reciprocal, "q < np/((eta+alpha-beta)p+n-2)")
    adm.require(not e.r.is_inf and inv(e.r) < inv(e.p), "p < r < inf")
    adm.require(e.ptilde <= e.qtilde, "ptilde <= qtilde")
    _weights(e, adm)

    lhs = e.eta + omega_index(e.alpha, e.p, INF, e.n)
    rhs = omega_index(e.beta, e.q, e.r, e.n)
    adm.derived["omega_source"] = lhs
    adm.derived["omega_target"] = rhs
    adm.require(lhs == rhs, OMEGA_BALANCE)

    gap = _lambdas(e, adm)
    if localized:
        adm.require(gap < 0, LAMBDA_GAP_NEGATIVE)
        adm.derived["localization_exponent"] = -gap
    else:
        adm.require(gap >= 0, LAMBDA_ORDERING)
    return adm


def _duhamel(e: EstimateIndices) -> Admissibility:
    adm = Admissibility(CaseLabel.NONE)
    adm.require(inv(e.p) <= Fraction(1, 2) and inv(e.p) >= inv(e.q) / 2, "2 <= p <= 2q")
    adm.require(
        not e.r.is_inf and Fraction(0) < inv(e.s) < Fraction(1, 2) and inv(e.s) > inv(e.r) / 2,
        "2 < s < 2r < inf",
    )
    adm.require(
        inv(e.ptilde) <= Fraction(1, 2) and inv(e.ptilde) >= inv(e.qtilde) / 2,
        "2 <= ptilde <= 2qtilde",
    )
    adm.require(e.beta + e.n * inv(e.q) > 0, BETA_LOWER)
    adm.require(e.alpha < Fraction(e.n, 2) - e.n * inv(e.p), "alpha < n/2 - n/p")

    lhs = 2 * omega_index(e.alpha, e.p, e.s, e.n)
    rhs = omega_index(e.beta, e.q, e.r, e.n) + 1 - e.eta
    adm.derived["omega_source"] = lhs
    adm.derived["omega_target"] = rhs
    adm.require(lhs == rhs, OMEGA_BALANCE)

    lam_a = lambda_index(e.alpha, e.p, e.ptilde, e.n)
    lam_b = lambda_index(e.beta, e.q, e.qtilde, e.n)
    adm.derived["lambda_alpha"] = lam_a
    adm.derived["lambda_beta"] = lam_b
    adm.require(2 * lam_a >= lam_b, LAMBDA_ORDERING)
    return adm


def _duhamel_diagonal(e: EstimateIndices) -> Admissibility:
    """Source equal to target: 2/r + n/q = 1 - beta and Lambda(beta,q,qtilde) >= 0"""
    adm = Admissibility(CaseLabel.NONE)
    adm.require(not e.r.is_inf and inv(e.r) < Fraction(1, 2), "2 < r < inf")
    adm.require(2 * inv(e.r) + e.n * inv(e.q) == 1 - e.beta, "scaling")
    lam_b = lambda_index(e.beta, e.q, e.qtilde, e.n)
    adm.derived["lambda_beta"] = lam_b
    adm.require(lam_b >= 0, "Lambda nonnegative")
    adm.require(e.beta + e.n * inv(e.q) > 0, BETA_LOWER)
    return adm


_CHECKS: Dict[EstimateKind, Callable[[EstimateIndices], Admissibility]] = {
    EstimateKind.HEAT_DECAY: lambda e: _decay(e, oseen=False, localized=False),
    EstimateKind.OSEEN_DECAY: lambda e: _decay(e, oseen=True, localized=False),
    EstimateKind.LOCALIZED: lambda e: _decay(e, oseen=False, localized=True),
    EstimateKind.LOCALIZED_OSEEN: lambda e: _decay(e, oseen=True, localized=True),
    EstimateKind.INTEGRAL: lambda e: _integral(e, localized=False),
    EstimateKind.INTEGRAL_LOCALIZED: lambda e: _integral(e, localized=True),
    EstimateKind.DUHAMEL: _duhamel,
    EstimateKind.DUHAMEL_DIAGONAL: _duhamel_diagonal,
}


def admissible_estimate(kind: EstimateKind, e: EstimateIndices) -> Admissibility:
    """Judge the hypotheses of one estimate family"""
    adm = _CHECKS[kind](e)
    adm.derived["kind"] = kind.value
    return adm
