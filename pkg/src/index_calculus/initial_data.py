"""
Refined conditions on the initial datum.

A weighted mixed-norm bound on u0 with indices (alpha0, p0, ptilde0) that,
together with the criterion tuple, suffices for the global or local
regularity statements.
Follows SRP: Initial-data admissibility only.
"""

from fractions import Fraction

from src.common.types import CaseLabel, InitialDataVariant
from src.index_calculus.criteria import check_global_criterion, check_local_criterion
from src.index_calculus.exponent import Exponent, RationalLike, inv, parse_rational
from src.index_calculus.indices import (
    Admissibility,
    IndexTuple,
    lambda_index,
    ptilde_global,
)

ALPHA0_SCALING = "alpha0 scaling"
ALPHA0_RANGE = "alpha0 range"
PTILDE0_UPPER = "ptilde0 <= bound/2"
P0_RANGE = "p0 range"
P0_UPPER = "p0 upper"
LAMBDA0 = "Lambda0 >= 0"


def _global(alpha0: Fraction, p0: Exponent, ptilde0: Exponent, t: IndexTuple) -> Admissibility:
    n, alpha = t.n, t.alpha
    if Fraction(1 - n, 2) < alpha < 0:
        adm = Admissibility(CaseLabel.NEG_ALPHA)
        bound = ptilde_global(alpha, t.p, n)
        adm.derived["bound_name"] = "ptilde_G"
    elif 0 <= alpha < Fraction(1, 2):
        adm = Admissibility(CaseLabel.NONNEG_ALPHA)
        bound = t.p
        adm.derived["bound_name"] = "p"
    else:
        adm = Admissibility(CaseLabel.NONE)
        adm.require(False, "alpha range")
        return adm
    adm.derived["bound"] = bound

    adm.require(alpha0 == 1 - n * inv(p0), ALPHA0_SCALING)
    adm.require(Fraction(2 - n, 2) <= alpha0 < Fraction(2, 2 + n), ALPHA0_RANGE)
    adm.require(inv(ptilde0) >= 2 * inv(bound), PTILDE0_UPPER)
    adm.require(Fraction(1, 2) >= inv(p0) >= 2 * inv(bound), P0_RANGE)
    if inv(bound) < Fraction(1, 2 * n):
        # p0 < 2 bound / (bound - 2n)
        upper_reciprocal = (1 - 2 * n * inv(bound)) / 2
        adm.derived["p0_upper"] = Exponent(upper_reciprocal)
        adm.require(inv(p0) > upper_reciprocal, P0_UPPER)
    return adm


def _local(alpha0: Fraction, p0: Exponent, ptilde0: Exponent, t: IndexTuple) -> Admissibility:
    n, alpha = t.n, t.alpha
    if Fraction(-1, 2) <= alpha < 0:
        adm = Admissibility(CaseLabel.NEG_ALPHA)
        low, high = Fraction(1 - n), Fraction(2 - n, 2 + n)
        p0_low_reciprocal = Fraction(1)
        upper_reciprocal = 1 - n * inv(t.p) if inv(t.p) < Fraction(1, n) else None
    elif 0 <= alpha < 1:
        adm = Admissibility(CaseLabel.NONNEG_ALPHA)
        low = 1 - (1 - alpha) * n
        high = 1 - (1 - alpha) * Fraction(2 * n, 2 + n)
        p0_low_reciprocal = 1 - alpha
        upper_reciprocal = (1 - alpha) - n * inv(t.p)
    else:
        adm = Admissibility(CaseLabel.NONE)
        adm.require(False, "alpha range")
        return adm

    lam0 = lambda_index(alpha0, p0, ptilde0, n)
    adm.derived["lambda0"] = lam0
    adm.derived["alpha0_range"] = [low, high]
    adm.require(lam0 >= 0, LAMBDA0)
    adm.require(alpha0 == 1 - n * inv(p0), ALPHA0_SCALING)
    adm.require(low <= alpha0 < high, ALPHA0_RANGE)
    adm.require(inv(ptilde0) >= 2 * inv(t.p), PTILDE0_UPPER)
    adm.require(p0_low_reciprocal >= inv(p0) >= 2 * inv(t.p), P0_RANGE)
    if upper_reciprocal is not None and upper_reciprocal > 0:
        adm.derived["p0_upper"] = Exponent(upper_reciprocal)
        adm.require(inv(p0) > upper_reciprocal, P0_UPPER)
    return adm


def check_initial_data_conditions(
    variant: InitialDataVariant,
    alpha0: RationalLike,
    p0: Exponent | RationalLike,
    ptilde0: Exponent | RationalLike,
    t: IndexTuple,
) -> Admissibility:
    """Judge (alpha0, p0, ptilde0) against the refined initial-data hypotheses of tuple t"""
    a0 = parse_rational(alpha0, "alpha0")
    p0_exp = Exponent.of(p0)
    ptilde0_exp = Exponent.of(ptilde0)

    if variant is InitialDataVariant.GLOBAL:
        adm = _global(a0, p0_exp, ptilde0_exp, t)
        criterion = check_global_criterion(t)
    else:
        adm = _local(a0, p0_exp, ptilde0_exp, t)
        criterion = check_local_criterion(t)

    adm.derived["variant"] = variant.value
    adm.derived["criterion"] = criterion.to_dict()
    return adm
