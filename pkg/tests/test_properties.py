"""Property-based checks over randomly structured inputs.

Breakpoint positions and smoothing radii are drawn on a coarse dyadic grid so
window-shift arithmetic is exact and equalities can be asserted at 1e-9."""

import numpy as np
from hypothesis import given, settings, strategies as st

from lulukit import (
    DiscreteSignal,
    Domain,
    OperatorExpr,
    PiecewiseLinearFunction,
    apply_L,
    apply_U,
    apply_canonical,
    apply_pipeline,
    canonicalize,
    lower_envelope,
    total_variation_plf,
    tv_decomposition,
    upper_envelope,
    windowed_max,
    windowed_min,
)
from lulukit.oracles import brute_windowed_max, brute_windowed_min

TICK = 2.0 ** -6  # domain [0, 8] has 512 ticks


@st.composite
def plfs(st_draw):
    k = st_draw(st.integers(min_value=0, max_value=10))
    ticks = st_draw(
        st.lists(st.integers(1, 511), min_size=k, max_size=k, unique=True)
    )
    xs = [0.0] + sorted(t * TICK for t in ticks) + [8.0]
    n = len(xs)
    cents = st.integers(-300, 300)
    vals = [c / 100 for c in st_draw(st.lists(cents, min_size=n, max_size=n))]
    ss = list(vals[:-1])
    se = list(vals[1:])
    for i in range(n - 1):
        if st_draw(st.booleans()):
            ss[i] = st_draw(cents) / 100
        if st_draw(st.booleans()):
            se[i] = st_draw(cents) / 100
    return PiecewiseLinearFunction(Domain(0.0, 8.0), xs, vals, ss, se)


deltas = st.integers(min_value=1, max_value=256).map(lambda t: t * TICK)

signals = st.lists(
    st.integers(-500, 500).map(lambda v: v / 100), min_size=1, max_size=80
).map(DiscreteSignal)


@settings(max_examples=30, deadline=None)
@given(plfs(), deltas)
def test_bounding(f, delta):
    assert apply_L(f, delta).leq(f, eps=1e-9)
    assert f.leq(apply_U(f, delta), eps=1e-9)


@settings(max_examples=30, deadline=None)
@given(plfs(), deltas)
def test_envelope_duality(f, delta):
    r = 0.5 * delta
    assert upper_envelope(-f, r).sup_distance(-lower_envelope(f, r)) == 0.0


@settings(max_examples=20, deadline=None)
@given(plfs(), deltas)
def test_idempotence(f, delta):
    Lf = apply_L(f, delta)
    assert apply_L(Lf, delta).sup_distance(Lf) <= 1e-9


@settings(max_examples=20, deadline=None)
@given(plfs(), deltas)
def test_tv_preservation(f, delta):
    rep = tv_decomposition(f, OperatorExpr("L", delta))
    assert abs(rep.defect) <= 1e-9
    assert rep.tv_smooth <= rep.tv_f + 1e-9


@settings(max_examples=15, deadline=None)
@given(plfs(), deltas, st.text(alphabet="LU", min_size=1, max_size=5))
def test_canonicalize_agrees_with_pipeline(f, delta, word):
    e = OperatorExpr(word, delta)
    assert apply_pipeline(e, f).sup_distance(apply_canonical(canonicalize(e), f)) <= 1e-9


@settings(max_examples=30, deadline=None)
@given(plfs())
def test_normalize_is_pointwise_identity(f):
    g = f.normalize()
    assert g.breakpoint_count <= f.breakpoint_count
    for x in np.linspace(0.0, 8.0, 33):
        assert g.evaluate(float(x)) == f.evaluate(float(x))
    for x in f.xs:
        x = float(x)
        assert g.evaluate(x) == f.evaluate(x)


@settings(max_examples=30, deadline=None)
@given(plfs())
def test_tv_is_nonnegative_and_zero_only_when_flat(f):
    tv = total_variation_plf(f)
    assert tv >= 0.0
    if tv == 0.0:
        c = PiecewiseLinearFunction.constant(f.domain, f(0.0))
        assert f.sup_distance(c) == 0.0


@settings(max_examples=50, deadline=None)
@given(signals, st.integers(0, 10), st.integers(0, 10))
def test_windowed_extrema_match_brute_force(s, back, fwd):
    assert np.array_equal(
        windowed_min(s, back, fwd).values, brute_windowed_min(s, back, fwd).values
    )
    assert np.array_equal(
        windowed_max(s, back, fwd).values, brute_windowed_max(s, back, fwd).values
    )
