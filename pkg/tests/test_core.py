"""Representation, evaluation, arithmetic and normalization of
piecewise-linear functions, plus discrete signals."""

import numpy as np
import pytest

from lulukit import (
    DiscreteSignal,
    Domain,
    OutsideDomainError,
    PiecewiseLinearFunction,
    jump_tolerant_distance,
    plf_from_samples,
    sample,
    violation_above,
)


class TestDomain:
    def test_span(self):
        assert Domain(1.0, 3.5).span == 2.5

    def test_contains(self):
        d = Domain(0.0, 4.0)
        assert 0.0 in d and 4.0 in d and 2.0 in d
        assert -0.1 not in d and 4.1 not in d

    @pytest.mark.parametrize("lo,hi", [(1.0, 1.0), (2.0, 1.0), (float("inf"), 3.0)])
    def test_invalid(self, lo, hi):
        with pytest.raises(ValueError):
            Domain(lo, hi)


class TestConstruction:
    def test_validation_errors(self):
        d = Domain(0.0, 1.0)
        with pytest.raises(ValueError):
            PiecewiseLinearFunction(d, [0.0], [1.0], [], [])
        with pytest.raises(ValueError):
            PiecewiseLinearFunction(d, [0.0, 0.0], [1.0, 1.0], [1.0], [1.0])
        with pytest.raises(ValueError):
            PiecewiseLinearFunction(d, [0.0, 0.5], [1.0, 1.0], [1.0], [1.0])
        with pytest.raises(ValueError):
            PiecewiseLinearFunction(d, [0.0, 1.0], [1.0, float("nan")], [1.0], [1.0])
        with pytest.raises(ValueError):
            PiecewiseLinearFunction(d, [0.0, 1.0], [1.0, 1.0], [1.0, 2.0], [1.0])

    def test_immutability(self, f1):
        with pytest.raises(ValueError):
            f1.values[0] = 99.0

    def test_constant_and_from_points(self):
        c = PiecewiseLinearFunction.constant(Domain(0.0, 2.0), 7.0)
        assert c(1.3) == 7.0
        f = PiecewiseLinearFunction.from_points([(0, 0), (2, 4), (1, 1)])
        assert f(0.5) == 0.5 and f(1.5) == 2.5


class TestEvaluate:
    def test_pulse_interior(self, f1):
        assert f1.evaluate(1.5) == 1.0

    def test_pulse_breakpoint_sides(self, f1):
        assert f1.evaluate(1.0) == 0.0
        assert f1.evaluate(1.0, "right_limit") == 1.0
        assert f1.evaluate(1.0, "left_limit") == 0.0
        assert f1.evaluate(2.0, "left_limit") == 1.0

    def test_outside_domain(self, f1):
        with pytest.raises(OutsideDomainError):
            f1.evaluate(5.0)

    def test_bad_side(self, f1):
        with pytest.raises(ValueError):
            f1.evaluate(1.0, "above")
        with pytest.raises(ValueError):
            f1.evaluate(0.0, "left_limit")
        with pytest.raises(ValueError):
            f1.evaluate(4.0, "right_limit")


class TestSupDistance:
    def test_self(self, f1):
        assert f1.sup_distance(f1) == 0.0

    def test_pulse_vs_zero(self, f1):
        zero = PiecewiseLinearFunction.constant(f1.domain, 0.0)
        assert f1.sup_distance(zero) == 1.0

    def test_identity_vs_clipped(self, ident):
        clipped = PiecewiseLinearFunction.from_points(
            [(0.0, 0.0), (3.5, 3.5), (4.0, 3.5)]
        )
        assert ident.sup_distance(clipped) == 0.5

    def test_domain_mismatch(self, ident):
        other = PiecewiseLinearFunction.constant(Domain(0.0, 5.0), 0.0)
        with pytest.raises(ValueError):
            ident.sup_distance(other)


class TestRefineRestrict:
    def test_refine_preserves_values(self, f1, rng):
        g = f1.refine([0.25, 1.5, 3.9])
        for x in rng.uniform(0.0, 4.0, 50):
            assert g.evaluate(float(x)) == f1.evaluate(float(x))
        assert g.evaluate(1.5, "left_limit") == f1.evaluate(1.5, "left_limit")

    def test_refine_outside(self, f1):
        with pytest.raises(ValueError):
            f1.refine([-1.0])

    def test_restrict(self, f1):
        g = f1.restrict(0.5, 2.5)
        assert g.domain == Domain(0.5, 2.5)
        assert g(1.5) == 1.0 and g(2.0) == 0.0
        assert g.evaluate(2.0, "left_limit") == 1.0

    def test_restrict_invalid(self, f1):
        with pytest.raises(ValueError):
            f1.restrict(3.0, 3.0)


class TestArithmetic:
    def test_add_sub_neg(self, f1, ident, rng):
        h = f1 + ident
        for x in rng.uniform(0.0, 4.0, 30):
            x = float(x)
            assert h.evaluate(x) == f1.evaluate(x) + ident.evaluate(x)
        assert (f1 - f1).sup_distance(
            PiecewiseLinearFunction.constant(f1.domain, 0.0)
        ) == 0.0
        assert (-f1)(1.5) == -1.0

    def test_shift_scale(self, ident):
        assert (ident + 2.0)(1.0) == 3.0
        assert ident.scale(-2.0)(1.5) == -3.0

    def test_leq(self, f1):
        zero = PiecewiseLinearFunction.constant(f1.domain, 0.0)
        assert zero.leq(f1)
        assert not f1.leq(zero)
        assert f1.max_violation_above(zero) == 1.0


class TestNormalize:
    def test_drops_redundant(self, ident):
        g = ident.refine([1.0, 2.0, 3.0]).normalize()
        assert g.breakpoint_count == 2
        assert g.sup_distance(ident) == 0.0

    def test_keeps_jumps(self, f1):
        g = f1.refine([0.5, 1.5]).normalize()
        assert g == f1

    def test_keeps_isolated_point_value(self):
        f = PiecewiseLinearFunction(
            Domain(0.0, 2.0), [0.0, 1.0, 2.0], [0.0, 5.0, 0.0], [0.0, 0.0], [0.0, 0.0]
        )
        g = f.normalize()
        assert g(1.0) == 5.0 and g.breakpoint_count == 3


class TestSampling:
    def test_identity_unit_step(self, ident):
        s = sample(ident, 1.0, 0.0)
        assert np.array_equal(s.values, [0, 1, 2, 3, 4])
        assert s.spacing == 1.0 and s.origin == 0.0

    def test_pulse_half_step(self, f1):
        s = sample(f1, 0.5, 0.0)
        assert np.array_equal(s.values, [0, 0, 0, 1, 0, 0, 0, 0, 0])

    def test_constant(self):
        c = PiecewiseLinearFunction.constant(Domain(0.0, 3.0), 7.0)
        assert (sample(c, 0.7, 0.0).values == 7.0).all()

    def test_errors(self, ident):
        with pytest.raises(ValueError):
            sample(ident, -1.0, 0.0)
        with pytest.raises(ValueError):
            sample(ident, 1.0, 9.0)

    def test_round_trip(self, ident):
        g = plf_from_samples(sample(ident, 0.5, 0.0))
        assert g.sup_distance(ident) == 0.0


class TestDiscreteSignal:
    def test_validation(self):
        with pytest.raises(ValueError):
            DiscreteSignal([])
        with pytest.raises(ValueError):
            DiscreteSignal([1.0, float("inf")])
        with pytest.raises(ValueError):
            DiscreteSignal([1.0], spacing=0.0)

    def test_to_function_requires_metadata(self):
        with pytest.raises(ValueError):
            DiscreteSignal([1.0, 2.0]).to_function()


class TestJumpTolerantComparison:
    def _step_at(self, x0):
        return PiecewiseLinearFunction(
            Domain(0.0, 4.0), [0.0, x0, 4.0], [0.0, 1.0, 1.0], [0.0, 1.0], [0.0, 1.0]
        )

    def test_exact_when_aligned(self, f1, g1):
        assert violation_above(f1, g1) == 0.0
        assert violation_above(g1, f1) == 1.0
        assert jump_tolerant_distance(f1, g1) == 1.0

    def test_xtol_excuses_shifted_jump(self):
        f = self._step_at(2.0)
        g = self._step_at(2.0 + 1e-13)
        assert jump_tolerant_distance(f, g, xtol=0.0) == 1.0
        assert jump_tolerant_distance(f, g, xtol=1e-12) < 1e-12

    def test_xtol_does_not_hide_real_gaps(self):
        f = self._step_at(2.0)
        g = self._step_at(2.0).shift(-0.25)
        assert jump_tolerant_distance(f, g, xtol=1e-12) == 0.25
