import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from epicusp import (
    CurveSpec,
    IntersectionRecord,
    TwoTermSpec,
    grid_intersection_check,
    self_intersections,
    verify_symmetry,
)


class TestVerifySymmetry:
    def test_coprime_pair_verifies(self):
        report = verify_symmetry(TwoTermSpec(1, 3, 0.4))
        assert report.verified
        assert report.claimed_order == 2
        assert not report.degenerate

    def test_deviations_are_tiny(self):
        report = verify_symmetry(TwoTermSpec(2, 5, -0.7))
        assert report.rotation_deviation < 1e-12
        assert report.reflection_deviation < 1e-12

    def test_common_factor_blocks_verification(self):
        report = verify_symmetry(TwoTermSpec(2, 4, 0.5))
        assert not report.coprime
        assert not report.verified

    def test_degenerate_weight_is_flagged(self):
        report = verify_symmetry(TwoTermSpec(1, 3, 1.0))
        assert report.degenerate
        assert report.verified  # the circle still has the claimed symmetry

    def test_rejects_small_sample_counts(self):
        with pytest.raises(ValueError):
            verify_symmetry(TwoTermSpec(1, 3, 0.0), n=99)

    @given(st.integers(min_value=1, max_value=6), st.integers(min_value=1, max_value=6),
           st.floats(min_value=-0.95, max_value=0.95, allow_nan=False))
    @settings(deadline=None, max_examples=40)
    def test_identities_hold_for_coprime_pairs(self, a, d, s):
        assume(math.gcd(a, a + d) == 1)
        report = verify_symmetry(TwoTermSpec(a, a + d, s), n=256)
        assert report.rotation_deviation < 1e-12
        assert report.reflection_deviation < 1e-12


def record_near(records: list[IntersectionRecord], t1: float, t2: float, tol: float = 1e-6):
    for r in records:
        if abs(r.t1 - t1) < tol and abs(r.t2 - t2) < tol:
            return r
    return None


class TestSelfIntersections:
    def test_balanced_curve_has_three_crossings(self):
        records = self_intersections(TwoTermSpec(1, 3, 0.0))
        assert len(records) == 3
        assert all(r.t1 < r.t2 for r in records)
        assert [r.t1 for r in records] == sorted(r.t1 for r in records)

    def test_origin_contact_is_found_exactly(self):
        records = self_intersections(TwoTermSpec(1, 3, 0.0))
        hit = record_near(records, 0.25, 0.75)
        assert hit is not None
        assert hit.point.norm() < 1e-9
        assert hit.on_rational_grid
        assert hit.grid_index_pair == (2, 6)

    def test_balanced_records_sit_on_the_eighths_grid(self):
        for r in self_intersections(TwoTermSpec(1, 3, 0.0)):
            assert r.on_rational_grid
            j1, j2 = r.grid_index_pair
            assert abs(r.t1 - j1 / 8.0) < 1e-9
            assert abs(r.t2 - j2 / 8.0) < 1e-9

    def test_generic_spec_matches_two_term_route(self):
        generic = CurveSpec.from_pairs([(1, 1.0), (4, 1.0)])
        a = [(r.t1, r.t2) for r in self_intersections(generic)]
        b = [(r.t1, r.t2) for r in self_intersections(TwoTermSpec(1, 4, 0.0))]
        assert len(a) == len(b)
        for (u1, u2), (v1, v2) in zip(a, b):
            assert u1 == pytest.approx(v1, abs=1e-9)
            assert u2 == pytest.approx(v2, abs=1e-9)

    def test_records_are_genuine_coincidences(self):
        from epicusp import evaluate

        spec = TwoTermSpec(2, 5, 0.0)
        for r in self_intersections(spec):
            p, q = evaluate(spec, r.t1), evaluate(spec, r.t2)
            assert math.hypot(p.x - q.x, p.y - q.y) < 1e-9 * 2.0

    def test_loop_appears_past_the_transition_weight(self):
        # crossing s through -1/2 births a small loop near t = 1/4
        born = self_intersections(TwoTermSpec(1, 3, -0.495))
        flat = self_intersections(TwoTermSpec(1, 3, -0.505))

        def in_window(r):
            return 0.2 < r.t1 < 0.3 and 0.2 < r.t2 < 0.3

        assert sum(1 for r in born if in_window(r)) == 1
        assert sum(1 for r in flat if in_window(r)) == 0

    def test_intersection_set_shares_the_curve_symmetry(self):
        spec = TwoTermSpec(2, 5, 0.0)
        records = self_intersections(spec)
        points = [r.point.as_complex() for r in records]
        rot = complex(math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3))
        for p in points:
            assert any(abs(p * rot - q) < 1e-6 for q in points)

    def test_off_grid_weight_loses_the_grid_flag(self):
        records = self_intersections(TwoTermSpec(1, 4, 0.2))
        assert records
        assert all(not r.on_rational_grid for r in records)
        assert all(r.grid_index_pair is None for r in records)

    def test_rejects_coarse_grids(self):
        with pytest.raises(ValueError):
            self_intersections(TwoTermSpec(1, 3, 0.0), t_grid=128)


class TestGridCheck:
    @pytest.mark.parametrize("a,b", [(1, 2), (1, 3), (2, 3)])
    def test_small_pairs_match_the_oracle(self, a, b):
        assert grid_intersection_check(a, b)

    def test_common_factor_is_rejected(self):
        with pytest.raises(ValueError):
            grid_intersection_check(2, 4)

    def test_order_is_enforced(self):
        with pytest.raises(ValueError):
            grid_intersection_check(3, 2)
