"""Random inputs for the law suites and the verify command.

Breakpoint positions and smoothing widths are snapped to a dyadic grid
(multiples of 2**-20).  All window-shift arithmetic x ± r is then exact in
double precision, so output breakpoints produced by different but
mathematically equal operator expressions coincide bitwise instead of landing
one ulp apart around jumps.
"""

from __future__ import annotations

import numpy as np

from .core import Domain, PiecewiseLinearFunction, DiscreteSignal
from .envelopes import lower_envelope, upper_envelope

__all__ = [
    "DYADIC",
    "snap_dyadic",
    "random_plf",
    "random_signal",
    "random_delta",
    "random_fixture_operator",
]

DYADIC = 2.0 ** -20


def snap_dyadic(x: float) -> float:
    return float(np.round(x / DYADIC) * DYADIC)


def random_plf(
    rng: np.random.Generator,
    domain: Domain = Domain(0.0, 8.0),
    max_breakpoints: int = 60,
    jump_prob: float = 0.35,
    value_scale: float = 3.0,
) -> PiecewiseLinearFunction:
    """A random piecewise-linear function with jumps on a dyadic breakpoint
    grid.  Continuous at each breakpoint with probability 1 - jump_prob per
    side."""
    lo, hi = domain.lo, domain.hi
    k = int(rng.integers(0, max_breakpoints - 1))
    inner = np.unique([snap_dyadic(x) for x in rng.uniform(lo, hi, k)])
    inner = inner[(inner > lo) & (inner < hi)]
    xs = np.concatenate([[lo], inner, [hi]])
    n = xs.size
    vals = rng.uniform(-value_scale, value_scale, n)
    ss = vals[:-1].copy()
    se = vals[1:].copy()
    j1 = rng.random(n - 1) < jump_prob
    ss[j1] = rng.uniform(-value_scale, value_scale, int(j1.sum()))
    j2 = rng.random(n - 1) < jump_prob
    se[j2] = rng.uniform(-value_scale, value_scale, int(j2.sum()))
    return PiecewiseLinearFunction(domain, xs, vals, ss, se)


def random_signal(
    rng: np.random.Generator,
    length: int = 50,
    value_scale: float = 5.0,
    spiky: bool = True,
) -> DiscreteSignal:
    v = rng.uniform(-value_scale, value_scale, length)
    if spiky and length > 4:
        idx = rng.integers(0, length, max(1, length // 10))
        v[idx] += rng.choice([-3, 3], idx.size) * value_scale
    return DiscreteSignal(v, spacing=1.0, origin=0.0)


def random_delta(rng: np.random.Generator, span: float, lo: float = 0.01) -> float:
    """Log-uniform in [lo, span], snapped to the dyadic grid."""
    d = float(np.exp(rng.uniform(np.log(lo), np.log(span))))
    d = snap_dyadic(d)
    return max(d, DYADIC)


def random_fixture_operator(rng: np.random.Generator):
    """A random function-to-function map that is not a LULU smoother.
    Used as a negative fixture: TV subadditivity must still hold for it."""
    choice = int(rng.integers(0, 5))
    if choice == 0:
        a = float(rng.uniform(-1.5, 1.5))
        c = float(rng.uniform(-2, 2))
        return lambda f: f.scale(a).shift(c)
    if choice == 1:
        return lambda f: -f
    if choice == 2:
        r = max(snap_dyadic(float(rng.uniform(0.05, 1.0))), DYADIC)
        return lambda f: lower_envelope(f, r)
    if choice == 3:
        r = max(snap_dyadic(float(rng.uniform(0.05, 1.0))), DYADIC)
        a = float(rng.uniform(0.0, 2.0))
        return lambda f: upper_envelope(f, r).scale(a)
    c = float(rng.uniform(-2, 2))
    return lambda f: PiecewiseLinearFunction.constant(f.domain, c)
