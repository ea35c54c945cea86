"""
Admissibility checkers for the regularity criteria.

Each checker evaluates the hypothesis set of one criterion on an IndexTuple
and reports named violations. Strictness of every inequality follows the
criterion statement exactly.
Follows SRP: Criterion membership tests only.
"""

import logging
from fractions import Fraction

from src.common.types import CaseLabel
from src.index_calculus.exponent import inv
from src.index_calculus.indices import (
    Admissibility,
    IndexTuple,
    check_scaling,
    ptilde_global,
    ptilde_local,
)

logger = logging.getLogger(__name__)

SCALING = "scaling"
ALPHA_RANGE = "alpha range"
P_RANGE = "p range"
S_RANGE = "s range"
PTILDE_G = "ptilde >= ptilde_G"
PTILDE_L = "ptilde >= ptilde_L"
PTILDE_L_STRICT = "ptilde > ptilde_L (strict)"


def _s_negative_alpha(t: IndexTuple) -> bool:
    """max(2, 2/(1-alpha)) < s < inf, or s = 2/(1-alpha)"""
    half_gap = (1 - t.alpha) / 2
    open_branch = (
        not t.s.is_inf
        and inv(t.s) < Fraction(1, 2)
        and inv(t.s) < half_gap
    )
    return open_branch or inv(t.s) == half_gap


def _s_nonnegative_alpha(t: IndexTuple) -> bool:
    """2/(1-alpha) <= s < inf"""
    return not t.s.is_inf and inv(t.s) <= (1 - t.alpha) / 2


def _yz_main(t: IndexTuple) -> Admissibility:
    adm = Admissibility(CaseLabel.YZ_MAIN)
    adm.require(check_scaling(t), SCALING)
    adm.require(t.alpha >= -1, "alpha >= -1")
    adm.require(t.alpha < 1, "alpha < 1")
    adm.require(not t.s.is_inf and inv(t.s) < (1 - t.alpha) / 2, S_RANGE)
    adm.require(not t.p.is_inf and t.n * inv(t.p) < 1 - t.alpha, P_RANGE)
    return adm


def _yz_linf(t: IndexTuple) -> Admissibility:
    adm = Admissibility(CaseLabel.YZ_LINF)
    adm.require(-1 < t.alpha < 1, "-1 < alpha < 1")
    adm.require(inv(t.s) == (1 - t.alpha) / 2, "s = 2/(1-alpha)")
    adm.require(t.p.is_inf, "p = inf")
    return adm


def _yz_small(t: IndexTuple) -> Admissibility:
    adm = Admissibility(CaseLabel.YZ_SMALL)
    adm.require(-1 <= t.alpha <= 1, "-1 <= alpha <= 1")
    adm.require(t.s.is_inf, "s = inf")
    adm.require(t.n * inv(t.p) == 1 - t.alpha, "p = n/(1-alpha)")
    return adm


def check_yz_criterion(t: IndexTuple) -> Admissibility:
    """
    Weighted Serrin-type criterion with three branches.

    The first passing branch wins (MAIN, LINF, SMALL). When none passes the
    main-branch violations are reported and every branch's violations are
    kept in derived["branch_violations"].
    """
    branches = [_yz_main(t), _yz_linf(t), _yz_small(t)]
    for adm in branches:
        if adm.admissible:
            if adm.case_label is CaseLabel.YZ_SMALL:
                adm.derived["requires_smallness"] = True
            return adm

    main = branches[0]
    main.derived["branch_violations"] = {
        adm.case_label.value: list(adm.violations) for adm in branches
    }
    return main


def check_global_criterion(t: IndexTuple) -> Admissibility:
    """Regularity on the whole space under a weighted mixed-norm bound"""
    n, alpha = t.n, t.alpha

    if Fraction(1 - n, 2) < alpha < 0:
        adm = Admissibility(CaseLabel.NEG_ALPHA)
        p_ok = (
            not t.p.is_inf
            and inv(t.p) < Fraction(1, 2)
            and n * inv(t.p) < 1 - alpha
            and inv(t.p) >= alpha / (1 - n)
        )
        adm.require(p_ok or t.p == 2, P_RANGE)
        adm.require(check_scaling(t), SCALING)
        adm.require(_s_negative_alpha(t), S_RANGE)
    elif 0 <= alpha < Fraction(1, 2):
        adm = Admissibility(CaseLabel.NONNEG_ALPHA)
        adm.require(inv(t.p) < Fraction(1, 2 * n), P_RANGE)
        adm.require(check_scaling(t), SCALING)
        adm.require(_s_nonnegative_alpha(t), S_RANGE)
    else:
        adm = Admissibility(CaseLabel.NONE)
        adm.require(False, ALPHA_RANGE)
        return adm

    bound = ptilde_global(alpha, t.p, n)
    adm.derived["ptilde_G"] = bound
    if bound.is_inf:
        adm.derived["endpoint"] = "angular L-infinity required"
    adm.require(t.ptilde >= bound, PTILDE_G)
    logger.debug("global criterion %s -> %s", t.to_dict(), adm.violations)
    return adm


def check_local_criterion(t: IndexTuple) -> Admissibility:
    """Regularity on the time axis through the weight center"""
    n, alpha = t.n, t.alpha

    if Fraction(-1, 2) <= alpha < 0:
        adm = Admissibility(CaseLabel.NEG_ALPHA)
        adm.require(inv(t.p) < Fraction(1, n), P_RANGE)
        adm.require(check_scaling(t), SCALING)
        adm.require(_s_negative_alpha(t), S_RANGE)
        bound = ptilde_local(alpha, t.p, n)
        adm.require(t.ptilde >= bound, PTILDE_L)
    elif 0 <= alpha < 1:
        adm = Admissibility(CaseLabel.NONNEG_ALPHA)
        adm.require(n * inv(t.p) < 1 - alpha, P_RANGE)
        adm.require(check_scaling(t), SCALING)
        adm.require(_s_nonnegative_alpha(t), S_RANGE)
        bound = ptilde_local(alpha, t.p, n)
        adm.require(t.ptilde > bound, PTILDE_L_STRICT)
    else:
        adm = Admissibility(CaseLabel.NONE)
        adm.require(False, ALPHA_RANGE)
        return adm

    adm.derived["ptilde_L"] = bound
    return adm
