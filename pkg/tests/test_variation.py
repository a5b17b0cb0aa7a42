"""Total variation, local monotonicity, trend preservation and the sampling
bridge."""

import pytest

from lulukit import (
    DiscreteSignal,
    Domain,
    OperatorExpr,
    PiecewiseLinearFunction,
    check_trend_preservation,
    is_locally_delta_monotone,
    is_monotone_on,
    is_n_monotone,
    monotone_runs,
    total_variation_plf,
    total_variation_seq,
    tv_decomposition,
    verify_sampling_bridge,
)
from lulukit.generators import random_delta, random_plf
from lulukit.oracles import grid_tv


class TestTotalVariation:
    def test_identity(self, ident):
        assert total_variation_plf(ident) == 4.0

    def test_open_pulse(self, f1):
        assert total_variation_plf(f1) == 2.0

    def test_constant(self):
        c = PiecewiseLinearFunction.constant(Domain(0.0, 4.0), 3.0)
        assert total_variation_plf(c) == 0.0

    def test_grid_partition_never_exceeds_exact(self, rng):
        for _ in range(15):
            f = random_plf(rng, max_breakpoints=30)
            extra = rng.uniform(f.domain.lo, f.domain.hi, 20)
            assert grid_tv(f, extra) <= total_variation_plf(f) + 1e-12

    def test_sequence(self):
        assert total_variation_seq(DiscreteSignal([0, 0, 5, 0, 0])) == 10.0
        assert total_variation_seq(DiscreteSignal([1, 2, 5])) == 4.0
        assert total_variation_seq(DiscreteSignal([3.0])) == 0.0


class TestLocalMonotonicity:
    def test_monotone_always(self, ident):
        for d in (0.1, 1.0, 4.0):
            ok, w = is_locally_delta_monotone(ident, d)
            assert ok and w is None

    def test_narrow_tent_fails(self, tent):
        ok, w = is_locally_delta_monotone(tent, 0.5)
        assert not ok
        x, z, y = w.sample_points
        assert x < 1.2 < y and tent(z) > tent(x) and tent(z) > tent(y)

    def test_wide_enough_delta_for_tent(self, tent):
        # flip plateau widths are zero, so any positive delta catches the tent;
        # a function with a long plateau between moves passes for small delta
        f = PiecewiseLinearFunction.from_points(
            [(0.0, 0.0), (1.0, 1.0), (3.0, 1.0), (4.0, 0.0)]
        )
        ok, _ = is_locally_delta_monotone(f, 1.5)
        assert ok
        ok, _ = is_locally_delta_monotone(f, 2.5)
        assert not ok

    def test_jump_counts_as_strict_move(self, f1):
        # the pulse plateau has width 1: fine at delta=0.5, violated at 1.5
        ok, _ = is_locally_delta_monotone(f1, 0.5)
        assert ok
        ok, w = is_locally_delta_monotone(f1, 1.5)
        assert not ok and w.hi - w.lo <= 1.5 + 1e-12

    def test_eps_flattens_small_wiggle(self):
        f = PiecewiseLinearFunction.from_points(
            [(0.0, 0.0), (1.0, 1e-12), (2.0, 0.0), (4.0, 1.0)]
        )
        ok, _ = is_locally_delta_monotone(f, 3.0, eps=1e-9)
        assert ok

    def test_invalid_delta(self, ident):
        with pytest.raises(ValueError):
            is_locally_delta_monotone(ident, 0.0)


class TestNMonotone:
    def test_witness(self):
        ok, idx = is_n_monotone(DiscreteSignal([1, 2, 3, 2, 1]), 1)
        assert not ok and idx == 1

    def test_monotone(self):
        ok, idx = is_n_monotone(DiscreteSignal([1, 1, 2, 5]), 3)
        assert ok and idx is None

    def test_constant_after_smoothing(self):
        ok, _ = is_n_monotone(DiscreteSignal([0, 0, 0, 0, 0]), 1)
        assert ok

    def test_invalid_n(self):
        with pytest.raises(ValueError):
            is_n_monotone(DiscreteSignal([1.0, 2.0]), 0)


class TestMonotoneRuns:
    def test_tent_runs(self, tent):
        runs = monotone_runs(tent)
        dirs = [d for _, _, d in runs]
        assert 1 in dirs and -1 in dirs
        for a, b, d in runs:
            ok, _ = is_monotone_on(tent, a, b, d if d != 0 else 1)
            assert ok

    def test_constant(self):
        c = PiecewiseLinearFunction.constant(Domain(0.0, 1.0), 2.0)
        assert monotone_runs(c) == [(0.0, 1.0, 0)]

    def test_runs_verified_on_random(self, rng):
        for _ in range(15):
            f = random_plf(rng, max_breakpoints=30)
            for a, b, d in monotone_runs(f):
                want = d if d != 0 else 1
                ok, _ = is_monotone_on(f, a, b, want)
                ok2, _ = is_monotone_on(f, a, b, -want)
                assert ok or (d == 0 and ok2)


class TestTrendPreservation:
    def test_identity_under_L(self, ident):
        ok, _ = check_trend_preservation(ident, OperatorExpr("L", 1.0), (3.0, 4.0))
        assert ok

    def test_counterfeit_operator_fails(self, ident):
        ok, w = check_trend_preservation(ident, lambda f: -f, (0.0, 4.0))
        assert not ok and w is not None

    def test_requires_monotone_interval(self, tent):
        with pytest.raises(ValueError):
            check_trend_preservation(tent, OperatorExpr("L", 0.1), (0.5, 2.0))

    def test_bad_interval(self, ident):
        with pytest.raises(ValueError):
            check_trend_preservation(ident, OperatorExpr("L", 1.0), (3.0, 3.0))


class TestTVDecomposition:
    def test_identity_L(self, ident):
        rep = tv_decomposition(ident, OperatorExpr("L", 1.0))
        assert (rep.tv_f, rep.tv_smooth, rep.tv_residual, rep.defect) == (
            4.0, 3.5, 0.5, 0.0,
        )

    def test_pulse_L(self, f1):
        rep = tv_decomposition(f1, OperatorExpr("L", 1.0))
        assert (rep.tv_f, rep.tv_smooth, rep.tv_residual, rep.defect) == (
            2.0, 0.0, 2.0, 0.0,
        )

    def test_constant(self):
        c = PiecewiseLinearFunction.constant(Domain(0.0, 4.0), 1.0)
        rep = tv_decomposition(c, OperatorExpr("ULU", 0.7))
        assert rep.as_dict() == {
            "tv_f": 0.0, "tv_smooth": 0.0, "tv_residual": 0.0, "defect": 0.0,
        }

    def test_subadditivity_for_arbitrary_operator(self, rng):
        for _ in range(10):
            f = random_plf(rng, max_breakpoints=30)
            rep = tv_decomposition(f, lambda g: -g)
            assert rep.defect >= -1e-9


class TestSamplingBridge:
    def test_identity_sampling_tv(self, ident):
        rep = verify_sampling_bridge(ident, 1.0, 1, 0.25, 0.0)
        assert rep.n_monotone
        # monotone function sampled through both endpoints: TVs coincide
        assert rep.tv_sample == 4.0 == rep.tv_function

    def test_smoothed_function_is_n_monotone(self, rng):
        from lulukit import apply_pipeline

        for _ in range(5):
            f = random_plf(rng, max_breakpoints=25)
            delta = random_delta(rng, f.domain.span, lo=0.5)
            g = apply_pipeline(OperatorExpr("LU", delta), f)
            n = int(rng.integers(1, 6))
            h = delta / (n + 2)
            rep = verify_sampling_bridge(g, delta, n, h, g.domain.lo, eps=1e-9)
            assert rep.n_monotone
            assert rep.tv_sample <= rep.tv_function + 1e-9

    def test_precondition_errors(self, ident, tent):
        with pytest.raises(ValueError):
            verify_sampling_bridge(ident, 1.0, 1, 0.6, 0.0)  # h too large
        with pytest.raises(ValueError):
            verify_sampling_bridge(ident, 1.0, 1, -0.1, 0.0)
        with pytest.raises(ValueError):
            verify_sampling_bridge(tent, 1.0, 1, 0.3, 0.0)  # not locally monotone
