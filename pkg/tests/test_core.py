import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import fuzzcorr as fc
from conftest import finite, lr_numbers, spread
from oracles import scan_level, trap_membership, tri_membership


class TestInterval:
    def test_degenerate_is_allowed(self):
        iv = fc.Interval(2, 2)
        assert iv.width == 0 and iv.contains(2)

    def test_reversed_bounds_rejected(self):
        with pytest.raises(fc.InvalidParameterError):
            fc.Interval(1, 0)

    def test_arithmetic(self):
        a, b = fc.Interval(1, 2), fc.Interval(-1, 3)
        assert a + b == fc.Interval(0, 5)
        assert a - b == fc.Interval(-2, 3)
        assert a * b == fc.Interval(-2, 6)
        assert a / fc.Interval(2, 4) == fc.Interval(0.25, 1)
        with pytest.raises(fc.DomainViolationError):
            a / b

    def test_hausdorff(self):
        assert fc.Interval(0, 1).hausdorff(fc.Interval(0.5, 3)) == 2


class TestConstructors:
    def test_crisp_triangle(self):
        A = fc.tri(1, 1, 1)
        assert A.membership(1) == 1
        for alpha in (0, 0.3, 1):
            assert A.alpha_level(alpha) == fc.Interval(1, 1)

    def test_tri_level_half(self):
        assert fc.tri(0, 1, 2).alpha_level(0.5) == fc.Interval(0.5, 1.5)
        lo, hi, step = scan_level(lambda x: tri_membership(0, 1, 2, x), -1, 3, 0.5)
        assert lo == pytest.approx(0.5, abs=step) and hi == pytest.approx(1.5, abs=step)

    def test_tri_right_branch(self):
        assert fc.tri(0, 1, 2).membership(1.5) == 0.5
        assert tri_membership(0, 1, 2, np.array([1.5]))[0] == 0.5

    def test_trap_equals_degenerate_tri(self):
        assert fc.equals_by_levels(fc.trap(0, 1, 1, 2), fc.tri(0, 1, 2), 0)

    def test_trap_level_half(self):
        assert fc.trap(0, 1, 2, 3).alpha_level(0.5) == fc.Interval(0.5, 2.5)
        lo, hi, step = scan_level(lambda x: trap_membership(0, 1, 2, 3, x), -1, 4, 0.5)
        assert lo == pytest.approx(0.5, abs=step) and hi == pytest.approx(2.5, abs=step)

    def test_trap_right_branch_denominator(self):
        # (q+ + b - u) / b with q+ = 2, b = 1
        assert fc.trap(0, 1, 2, 3).membership(2.5) == 0.5
        assert fc.trap(0, 1, 2, 3).membership(2.0) == 1.0

    @pytest.mark.parametrize("args", [(2, 1, 0), (0, 3, 2), (1, 0, 1)])
    def test_tri_ordering_error(self, args):
        with pytest.raises(fc.InvalidParameterError):
            fc.tri(*args)

    def test_trap_ordering_error(self):
        with pytest.raises(fc.InvalidParameterError):
            fc.trap(0, 2, 1, 3)

    def test_negative_spread_rejected(self):
        with pytest.raises(fc.InvalidParameterError):
            fc.LRNumber(0, 1, -1, 0)


class TestMembership:
    def test_peak(self):
        A = fc.trap(0, 1, 2, 3)
        assert np.all(A.membership(np.linspace(1, 2, 7)) == 1)

    def test_outside_support(self):
        assert fc.membership(fc.tri(0, 1, 2), 5) == 0

    def test_left_branch(self):
        assert fc.membership(fc.tri(0, 1, 2), 0.25) == 0.25

    def test_zero_spread_vertical_edge(self):
        A = fc.LRNumber(1, 2, 0, 1)
        assert A.membership(1) == 1
        assert A.membership(0.999) == 0

    def test_power_shape(self):
        A = fc.LRNumber(0, 0, 1, 1, fc.ShapeFunction.power(2), fc.ShapeFunction.linear())
        assert A.membership(-0.5) == pytest.approx(0.75)
        assert A.alpha_level(0.75).lo == pytest.approx(-0.5, abs=1e-15)

    def test_staircase_matches_parametric(self):
        A = fc.trap(0, 1, 2, 3)
        S = fc.from_lr(A, 11)
        xs = np.linspace(-1, 4, 501)
        np.testing.assert_allclose(S.membership(xs), A.membership(xs), atol=1e-12)


class TestAlphaLevel:
    def test_lr_formula(self):
        A = fc.LRNumber(1, 2, 1, 2)
        for alpha in np.linspace(0, 1, 11):
            lv = A.alpha_level(alpha)
            assert lv.lo == pytest.approx(alpha, abs=1e-15)
            assert lv.hi == pytest.approx(4 - 2 * alpha, abs=1e-15)
        assert A.alpha_level(0) == fc.Interval(0, 4)
        assert A.alpha_level(1) == fc.Interval(1, 2)

    @pytest.mark.parametrize("alpha", [-0.1, 1.5])
    def test_alpha_out_of_range(self, alpha):
        with pytest.raises(fc.InvalidParameterError):
            fc.alpha_level(fc.tri(0, 1, 2), alpha)
        with pytest.raises(fc.InvalidParameterError):
            fc.alpha_level(fc.from_lr(fc.tri(0, 1, 2), 3), alpha)

    def test_staircase_interpolates(self):
        S = fc.AlphaCutNumber.from_cuts([(0, (0, 4)), (1, (2, 2))])
        assert S.alpha_level(0.25) == fc.Interval(0.5, 3.5)


class TestFromLR:
    def test_triangle_three_levels(self):
        S = fc.from_lr(fc.tri(0, 1, 2), 3)
        assert S.cuts == [(0.0, fc.Interval(0, 2)), (0.5, fc.Interval(0.5, 1.5)), (1.0, fc.Interval(1, 1))]

    def test_crisp(self):
        S = fc.from_lr(fc.crisp(3.5), 7)
        assert np.all(S.lo == 3.5) and np.all(S.hi == 3.5)

    def test_trapezoid_two_levels(self):
        S = fc.from_lr(fc.trap(0, 1, 2, 3), 2)
        assert S.cuts == [(0.0, fc.Interval(0, 3)), (1.0, fc.Interval(1, 2))]

    def test_too_few_levels(self):
        with pytest.raises(fc.InvalidParameterError):
            fc.from_lr(fc.tri(0, 1, 2), 1)

    def test_flat_tabulated_shape_uses_largest_preimage(self):
        # L is 0.5 on [0.25, 0.75]
        L = fc.ShapeFunction.tabulated([(0, 1), (0.25, 0.5), (0.75, 0.5), (1, 0)])
        assert not L.strictly_decreasing
        assert L.inverse(0.5) == pytest.approx(0.75, abs=1e-11)
        A = fc.LRNumber(0, 0, 1, 1, L, fc.ShapeFunction.linear())
        S = fc.from_lr(A, 5)
        assert S.generalized_inverse
        assert S.alpha_level(0.5).lo == pytest.approx(-0.75, abs=1e-11)
        assert not fc.from_lr(fc.tri(0, 1, 2)).generalized_inverse

    def test_tabulated_with_zero_tail(self):
        L = fc.ShapeFunction.tabulated([(0, 1), (0.5, 0), (1, 0)])
        assert L.inverse(0.0) == pytest.approx(0.5, abs=1e-11)


class TestStaircaseValidation:
    def test_alphas_must_span_unit_interval(self):
        with pytest.raises(fc.InvalidParameterError):
            fc.AlphaCutNumber([0, 0.5], [0, 0], [1, 1])

    def test_not_nested(self):
        with pytest.raises(fc.InvalidParameterError):
            fc.AlphaCutNumber([0, 1], [0, -1], [1, 1])

    def test_empty_peak(self):
        with pytest.raises(fc.InvalidParameterError):
            fc.AlphaCutNumber([0, 1], [0, 2], [3, 1])

    def test_read_only(self):
        S = fc.from_lr(fc.tri(0, 1, 2), 3)
        with pytest.raises(ValueError):
            S.lo[0] = 5


class TestEquality:
    def test_reflexive(self):
        A = fc.from_lr(fc.tri(0, 1, 3), 17)
        assert fc.equals_by_levels(A, A, 0)

    def test_tri_trap(self):
        assert fc.equals_by_levels(fc.tri(0, 1, 2), fc.trap(0, 1, 1, 2), 1e-12)

    def test_support_differs(self):
        assert not fc.equals_by_levels(fc.tri(0, 1, 2), fc.tri(0, 1, 2.1), 1e-12)

    def test_mixed_grids(self):
        A = fc.from_lr(fc.tri(0, 1, 2), 3)
        B = fc.from_lr(fc.tri(0, 1, 2), 5)
        assert fc.equals_by_levels(A, B, 1e-15)


# ---------------------------------------------------------------------------
# properties


@settings(max_examples=60, deadline=None)
@given(lr_numbers(), st.integers(min_value=2, max_value=60))
def test_nested_levels(A, n):
    S = fc.from_lr(A, n)
    assert np.all(np.diff(S.lo) >= 0) and np.all(np.diff(S.hi) <= 0)
    assert np.all(S.lo <= S.hi)


@settings(max_examples=60, deadline=None)
@given(lr_numbers(), st.floats(min_value=-20, max_value=20))
def test_membership_one_iff_peak(A, x):
    peak = A.alpha_level(1)
    assert (A.membership(x) == 1) == peak.contains(x)


@settings(max_examples=40, deadline=None)
@given(lr_numbers(min_spread=0.1))
def test_support_is_closure_of_positive_membership(A):
    sup = A.alpha_level(0)
    xs = np.linspace(sup.lo - 1, sup.hi + 1, 4001)
    pos = xs[A.membership(xs) > 0]
    step = xs[1] - xs[0]
    assert pos.min() == pytest.approx(sup.lo, abs=step)
    assert pos.max() == pytest.approx(sup.hi, abs=step)


@settings(max_examples=60, deadline=None)
@given(finite, spread, spread, spread, st.floats(min_value=0, max_value=1))
def test_linear_shape_formula(qm, w, a, b, alpha):
    A = fc.LRNumber(qm, qm + w, a, b)
    lv = A.alpha_level(alpha)
    assert abs(lv.lo - (qm - a * (1 - alpha))) <= 1e-12
    assert abs(lv.hi - (qm + w + b * (1 - alpha))) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(lr_numbers(min_spread=0.05))
def test_staircase_membership_round_trip(A):
    n = 101
    S = fc.from_lr(A, n)
    # reconstruct each level from the staircase membership by scanning
    xs = np.union1d(np.linspace(S.lo[0], S.hi[0], 20001), [S.lo[-1], S.hi[-1]])
    mu = S.membership(xs)
    bound = 2.0 / (n - 1) * S.support.width + S.support.width / 20000
    for alpha in (0.0, 0.3, 0.77, 1.0):
        keep = xs[mu >= alpha - 1e-12]
        lv = S.alpha_level(alpha)
        assert abs(keep.min() - lv.lo) <= bound and abs(keep.max() - lv.hi) <= bound

