import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from epicusp import (
    CurveSpec,
    KernelParams,
    NearPole,
    OnCurve,
    PlanePoint,
    TwoTermSpec,
    Unresolved,
    evaluate,
    kernel_integral,
    winding_closed_form,
    winding_decomposition_check,
    winding_numeric,
    zeros_of_curve,
)

ORIGIN = PlanePoint(0.0, 0.0)


class TestClosedForm:
    def test_dominant_low_frequency(self):
        assert winding_closed_form(TwoTermSpec(1, 3, -0.5)) == 1

    def test_dominant_high_frequency(self):
        assert winding_closed_form(TwoTermSpec(1, 3, 0.5)) == 3

    def test_balanced_curve_passes_through_origin(self):
        with pytest.raises(OnCurve):
            winding_closed_form(TwoTermSpec(2, 7, 0.0))

    @given(st.integers(min_value=1, max_value=9), st.integers(min_value=1, max_value=9),
           st.floats(min_value=-1.0, max_value=1.0, allow_nan=False))
    @settings(deadline=None)
    def test_picks_the_heavier_frequency(self, a, d, s):
        assume(s != 0.0)
        b = a + d
        expected = a if s < 0 else b
        assert winding_closed_form(TwoTermSpec(a, b, s)) == expected


class TestNumeric:
    def test_circle_multiplicity(self):
        res = winding_numeric(CurveSpec.from_pairs([(5, 2.0)]), ORIGIN, 256)
        assert res.value == 5
        assert res.residual < 1e-6

    def test_point_outside_winds_zero(self):
        res = winding_numeric(TwoTermSpec(1, 3, 0.2), PlanePoint(10.0, 0.0), 256)
        assert res.value == 0

    @pytest.mark.parametrize("s,expected", [(-0.3, 1), (0.3, 3)])
    def test_agrees_with_closed_form(self, s, expected):
        res = winding_numeric(TwoTermSpec(1, 3, s), ORIGIN, 4096)
        assert res.value == expected
        assert res.residual < 1e-6

    def test_base_point_on_curve(self):
        # 0.25 lands exactly on the 512-point grid, so the sample distance is 0
        z0 = evaluate(TwoTermSpec(1, 3, 0.4), 0.25)
        with pytest.raises(OnCurve):
            winding_numeric(TwoTermSpec(1, 3, 0.4), z0, 512)

    def test_base_point_barely_off_curve(self):
        # close enough that angle steps stay too coarse after one retry
        p = evaluate(TwoTermSpec(1, 3, 0.4), 0.3)
        z0 = PlanePoint(p.x + 1e-7, p.y)
        with pytest.raises(Unresolved):
            winding_numeric(TwoTermSpec(1, 3, 0.4), z0, 64)

    def test_rejects_small_grids(self):
        with pytest.raises(ValueError):
            winding_numeric(TwoTermSpec(1, 3, 0.2), ORIGIN, 63)

    @pytest.mark.parametrize("n", [64, 128, 1024])
    def test_grid_doubling_stability(self, n):
        spec = TwoTermSpec(2, 5, -0.6)
        assert winding_numeric(spec, ORIGIN, n).value == winding_numeric(spec, ORIGIN, 2 * n).value

    def test_samples_field_reports_grid_used(self):
        res = winding_numeric(TwoTermSpec(1, 2, 0.5), ORIGIN, 128)
        assert res.samples in (128, 256)


class TestKernelIntegral:
    def test_dominant_constant(self):
        v = kernel_integral(KernelParams(alpha=1.0, beta=2.0), 512)
        assert v == pytest.approx(0.5, abs=1e-12)

    def test_dominant_oscillation(self):
        v = kernel_integral(KernelParams(alpha=2.0, beta=1.0), 512)
        assert v == pytest.approx(0.0, abs=1e-12)

    def test_sign_of_alpha_is_irrelevant(self):
        p = kernel_integral(KernelParams(alpha=-1.5, beta=2.0), 512)
        q = kernel_integral(KernelParams(alpha=1.5, beta=2.0), 512)
        assert p == pytest.approx(q, abs=1e-14)

    def test_near_pole_refused(self):
        with pytest.raises(NearPole):
            kernel_integral(KernelParams(alpha=1.0, beta=1.0 + 1e-9), 512)

    def test_beta_must_be_positive(self):
        with pytest.raises(ValueError):
            KernelParams(alpha=1.0, beta=0.0)

    @given(st.floats(min_value=-3.0, max_value=3.0, allow_nan=False),
           st.floats(min_value=0.05, max_value=3.0, allow_nan=False))
    @settings(deadline=None, max_examples=200)
    def test_dichotomy(self, alpha, beta):
        # stay away from the circle |alpha| = beta where the value jumps
        assume(beta > 1.02 * abs(alpha) or beta < 0.98 * abs(alpha))
        expected = 1.0 / beta if beta > abs(alpha) else 0.0
        assert kernel_integral(KernelParams(alpha, beta), 2048) == pytest.approx(expected, abs=1e-10)


class TestDecomposition:
    def test_low_frequency_side(self):
        first, second = winding_decomposition_check(TwoTermSpec(1, 3, -0.5), 2048)
        assert first == pytest.approx(1.0, abs=1e-10)
        assert second == pytest.approx(0.0, abs=1e-10)

    def test_high_frequency_side(self):
        first, second = winding_decomposition_check(TwoTermSpec(1, 3, 0.5), 2048)
        assert first == pytest.approx(0.0, abs=1e-10)
        assert second == pytest.approx(3.0, abs=1e-10)

    def test_sum_matches_numeric_winding(self):
        spec = TwoTermSpec(2, 7, -0.9)
        first, second = winding_decomposition_check(spec, 4096)
        total = winding_numeric(spec, ORIGIN, 8192)
        assert first + second == pytest.approx(total.value, abs=1e-9)

    def test_degenerate_weights_still_split(self):
        first, second = winding_decomposition_check(TwoTermSpec(1, 3, -1.0), 1024)
        assert (first, second) == (pytest.approx(1.0, abs=1e-12), pytest.approx(0.0, abs=1e-12))

    def test_balanced_curve_refused(self):
        with pytest.raises(OnCurve):
            winding_decomposition_check(TwoTermSpec(1, 3, 0.0), 1024)


class TestOriginPassages:
    def test_known_quarter_points(self):
        assert zeros_of_curve(1, 3) == [Fraction(1, 4), Fraction(3, 4)]

    def test_adjacent_frequencies(self):
        assert zeros_of_curve(1, 2) == [Fraction(1, 2)]

    def test_wide_gap(self):
        assert zeros_of_curve(2, 5) == [Fraction(1, 6), Fraction(1, 2), Fraction(5, 6)]

    def test_count_equals_frequency_gap(self):
        for a, b in [(1, 2), (1, 5), (2, 7), (3, 8)]:
            assert len(zeros_of_curve(a, b)) == b - a

    def test_values_are_actual_origin_passages(self):
        for t in zeros_of_curve(2, 7):
            assert evaluate(TwoTermSpec(2, 7, 0.0), float(t)).norm() < 1e-12
