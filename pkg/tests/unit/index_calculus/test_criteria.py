"""
Unit tests for the regularity-criterion checkers.
"""

from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from src.common.types import CaseLabel
from src.index_calculus.criteria import (
    check_global_criterion,
    check_local_criterion,
    check_yz_criterion,
)
from src.index_calculus.exponent import Exponent
from src.index_calculus.indices import IndexTuple, check_scaling, ptilde_global


class TestYZCriterion:
    """Three-branch weighted Serrin criterion"""

    def test_main_branch_unweighted(self):
        """✅ PASS: (3, 0, 8, 4) -> YZ_MAIN"""
        adm = check_yz_criterion(IndexTuple.create(3, 0, 8, 4, 2))
        assert adm.admissible
        assert adm.case_label is CaseLabel.YZ_MAIN

    def test_main_branch_endpoint_weight(self):
        """✅ PASS: (3, -2/3, 3, 3) -> YZ_MAIN"""
        adm = check_yz_criterion(IndexTuple.create(3, "-2/3", 3, 3, 3))
        assert adm.admissible
        assert adm.case_label is CaseLabel.YZ_MAIN

    def test_alpha_one_excluded(self):
        """✅ PASS: alpha = 1 fails the main branch with 'alpha < 1'"""
        adm = check_yz_criterion(IndexTuple.create(3, 1, 8, 4, 2))
        assert not adm.admissible
        assert "alpha < 1" in adm.violations
        assert set(adm.derived["branch_violations"]) == {"YZ_MAIN", "YZ_LINF", "YZ_SMALL"}

    def test_linf_branch(self):
        """✅ PASS: s = 2/(1-alpha), p = INF -> YZ_LINF"""
        adm = check_yz_criterion(IndexTuple.create(3, "1/2", 4, "inf", 2))
        assert adm.admissible
        assert adm.case_label is CaseLabel.YZ_LINF

    def test_small_branch_flags_smallness(self):
        """✅ PASS: s = INF, p = n/(1-alpha) -> YZ_SMALL with smallness flag"""
        adm = check_yz_criterion(IndexTuple.create(3, 0, "inf", 3, 2))
        assert adm.admissible
        assert adm.case_label is CaseLabel.YZ_SMALL
        assert adm.derived["requires_smallness"] is True


class TestGlobalCriterion:
    """Global regularity criterion"""

    def test_endpoint_tuple_admissible(self):
        """✅ PASS: (3, -2/3, 3, 3, INF) admissible, NEG_ALPHA"""
        adm = check_global_criterion(IndexTuple.create(3, "-2/3", 3, 3, "inf"))
        assert adm.admissible, adm.violations
        assert adm.case_label is CaseLabel.NEG_ALPHA
        assert adm.derived["ptilde_G"].is_inf

    @settings(max_examples=60, deadline=None)
    @given(q=st.fractions(F(1), F(10**6), max_denominator=100))
    def test_endpoint_tuple_finite_ptilde_rejected(self, q):
        """✅ PASS: (3, -2/3, 3, 3, q) inadmissible for every finite q"""
        adm = check_global_criterion(IndexTuple.create(3, "-2/3", 3, 3, q))
        assert not adm.admissible
        assert adm.violations == ["ptilde >= ptilde_G"]

    def test_hundred_rejected(self):
        """✅ PASS: (3, -2/3, 3, 3, 100) violates ptilde >= ptilde_G"""
        adm = check_global_criterion(IndexTuple.create(3, "-2/3", 3, 3, 100))
        assert adm.violations == ["ptilde >= ptilde_G"]

    def test_nonneg_alpha_admissible(self):
        """✅ PASS: (3, 0, 16/5, 8, 8) admissible, NONNEG_ALPHA"""
        adm = check_global_criterion(IndexTuple.create(3, 0, "16/5", 8, 8))
        assert adm.admissible, adm.violations
        assert adm.case_label is CaseLabel.NONNEG_ALPHA
        assert adm.derived["ptilde_G"] == 8

    def test_p_equals_two_branch(self):
        """✅ PASS: case A accepts p = 2 with s from scaling"""
        # alpha = -1/4, p = 2: 2/s = 5/4 - 3/2 < 0 -> no scaling-compatible s exists
        adm = check_global_criterion(IndexTuple.create(3, "-1/4", 2, 2, "inf"))
        assert "p range" not in adm.violations
        assert "scaling" in adm.violations

    def test_alpha_out_of_range(self):
        """✅ PASS: alpha = 1/2 -> NONE, 'alpha range'"""
        adm = check_global_criterion(IndexTuple.create(3, "1/2", 8, 8, 8))
        assert adm.case_label is CaseLabel.NONE
        assert adm.violations == ["alpha range"]

    @settings(max_examples=200, deadline=None)
    @given(
        alpha=st.fractions(F(-1), F(1, 2), max_denominator=12),
        p=st.fractions(F(2), F(40), max_denominator=6),
        ptilde=st.fractions(F(1), F(60), max_denominator=6),
    )
    def test_admissible_implies_scaling_and_ptilde(self, alpha, p, ptilde):
        """✅ PASS: admissible => scaling and ptilde >= ptilde_G"""
        two_over_s = 1 - alpha - F(3) / p
        if two_over_s <= 0 or two_over_s > 2:
            return
        t = IndexTuple(3, alpha, Exponent.from_reciprocal(two_over_s / 2), Exponent.of(p), Exponent.of(ptilde))
        adm = check_global_criterion(t)
        if adm.admissible:
            assert check_scaling(t)
            assert t.ptilde >= ptilde_global(alpha, t.p, 3)


class TestLocalCriterion:
    """Local regularity criterion"""

    def test_endpoint_weight_admissible(self):
        """✅ PASS: (3, -1/2, 8/3, 4, 4) admissible, NEG_ALPHA"""
        adm = check_local_criterion(IndexTuple.create(3, "-1/2", "8/3", 4, 4))
        assert adm.admissible, adm.violations
        assert adm.case_label is CaseLabel.NEG_ALPHA

    def test_strict_inequality(self):
        """✅ PASS: ptilde = ptilde_L rejected when alpha >= 0"""
        adm = check_local_criterion(IndexTuple.create(3, 0, "16/5", 8, "8/3"))
        assert adm.violations == ["ptilde > ptilde_L (strict)"]

    def test_ptilde_below_local_bound(self):
        """✅ PASS: (3, -1/2, 8/3, 4, 3) violates ptilde >= ptilde_L"""
        adm = check_local_criterion(IndexTuple.create(3, "-1/2", "8/3", 4, 3))
        assert adm.violations == ["ptilde >= ptilde_L"]

    def test_alpha_out_of_range(self):
        """✅ PASS: alpha < -1/2 -> NONE"""
        adm = check_local_criterion(IndexTuple.create(3, -1, 2, 3, 3))
        assert adm.case_label is CaseLabel.NONE
