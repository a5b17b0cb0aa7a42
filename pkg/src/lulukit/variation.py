"""Total variation, local monotonicity, trend preservation and the
function-to-sequence sampling bridge.

Total variation of a piecewise-linear function with jumps decomposes exactly
into jump contributions at breakpoints plus the slope contribution of each
segment, so no partition refinement is needed.  Local delta-monotonicity is
decided structurally: the function fails exactly when a direction flip (a
maximal plateau separating a strict rise from a strict fall, or vice versa)
has plateau width below delta; jumps count as strict changes of zero width.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .core import DiscreteSignal, PiecewiseLinearFunction, sample
from .semigroup import OperatorExpr, apply_pipeline

__all__ = [
    "TVDecompositionReport",
    "WitnessInterval",
    "SamplingBridgeReport",
    "total_variation_plf",
    "total_variation_seq",
    "is_locally_delta_monotone",
    "is_n_monotone",
    "monotone_runs",
    "is_monotone_on",
    "check_trend_preservation",
    "tv_decomposition",
    "verify_sampling_bridge",
]

Operator = Union[OperatorExpr, Callable[[PiecewiseLinearFunction], PiecewiseLinearFunction]]


@dataclass(frozen=True)
class TVDecompositionReport:
    """TV of f, of the smoothed part, of the residual, and the defect
    tv_smooth + tv_residual - tv_f (zero for variation-preserving operators,
    nonnegative always)."""

    tv_f: float
    tv_smooth: float
    tv_residual: float
    defect: float

    def as_dict(self) -> dict:
        return {
            "tv_f": self.tv_f,
            "tv_smooth": self.tv_smooth,
            "tv_residual": self.tv_residual,
            "defect": self.defect,
        }


@dataclass(frozen=True)
class WitnessInterval:
    """An interval plus up to three sample points exhibiting a violation."""

    lo: float
    hi: float
    sample_points: tuple

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError("witness interval must have lo < hi")
        for p in self.sample_points:
            if not self.lo <= p <= self.hi:
                raise ValueError("sample points must lie inside the interval")


@dataclass(frozen=True)
class SamplingBridgeReport:
    n_monotone: bool
    tv_sample: float
    tv_function: float

    def as_dict(self) -> dict:
        return {
            "n_monotone": self.n_monotone,
            "tv_sample": self.tv_sample,
            "tv_function": self.tv_function,
        }


def total_variation_plf(f: PiecewiseLinearFunction) -> float:
    """Exact total variation: jump parts at breakpoints plus slope parts."""
    jumps_in = np.abs(f.values[1:] - f.seg_end).sum()
    jumps_out = np.abs(f.seg_start - f.values[:-1]).sum()
    slopes = np.abs(f.seg_end - f.seg_start).sum()
    return float(jumps_in + jumps_out + slopes)


def total_variation_seq(s: DiscreteSignal) -> float:
    return float(np.abs(np.diff(s.values)).sum())


def _walk(f: PiecewiseLinearFunction):
    """The function's value sequence along increasing position: point value,
    right limit, then for each following breakpoint left limit, point value,
    right limit.  Returns (positions, values)."""
    n = f.xs.size
    pos = np.repeat(f.xs, 3)[1:-1]
    val = np.empty(3 * n - 2)
    val[0] = f.values[0]
    val[1::3] = f.seg_start
    val[2::3] = f.seg_end
    val[3::3] = f.values[1:]
    return pos, val


def _strict_moves(f: PiecewiseLinearFunction, eps: float):
    """Direction flips candidates: list of (start_pos, end_pos, sign) for
    value changes exceeding eps, in order."""
    pos, val = _walk(f)
    d = np.diff(val)
    idx = np.nonzero(np.abs(d) > eps)[0]
    return [(pos[i], pos[i + 1], 1 if d[i] > 0 else -1) for i in idx]


def _flip_witness(f, b1, a2, want_peak, slack, eps=0.0):
    """Concrete three-point witness for a direction flip whose strict rise
    ends at b1 and strict fall starts at a2 (or vice versa).  The extreme may
    be attained only as a one-sided limit, so several center candidates at
    shrinking offsets are tried.  The extreme must beat both outer points by
    more than eps, so a flip whose plateau is within rounding of delta wide
    never yields a sub-tolerance witness."""
    lo, hi = f.domain.lo, f.domain.hi
    tau = slack
    for _ in range(70):
        x = max(lo, b1 - tau)
        y = min(hi, a2 + tau)
        mid = 0.5 * (b1 + a2)
        for z in (b1, a2, mid, b1 - 0.5 * tau, a2 + 0.5 * tau):
            if not (x < z < y):
                continue
            fx, fz, fy = f(x), f(z), f(y)
            if want_peak and fz > fx + eps and fz > fy + eps:
                return x, z, y
            if not want_peak and fz < fx - eps and fz < fy - eps:
                return x, z, y
        tau *= 0.5
        if tau == 0.0:
            break
    return None


def is_locally_delta_monotone(
    f: PiecewiseLinearFunction, delta: float, eps: float = 0.0
) -> tuple[bool, Optional[WitnessInterval]]:
    """True iff f is monotone on every interval of length at most delta.

    Changes of magnitude <= eps are treated as flat, which guards against
    sub-tolerance numeric wiggle in operator outputs.
    """
    if not delta > 0:
        raise ValueError("delta must be positive")
    moves = _strict_moves(f, eps)
    for (a1, b1, s1), (a2, b2, s2) in zip(moves[:-1], moves[1:]):
        if s1 == s2:
            continue
        gap = a2 - b1
        if gap >= delta:
            continue
        # a flip closer than delta: build a concrete three-point witness
        trip = _flip_witness(
            f, b1, a2, want_peak=(s1 > 0), slack=0.5 * (delta - gap), eps=eps
        )
        if trip is None:
            continue
        x, z, y = trip
        return False, WitnessInterval(x, y, (x, z, y))
    return True, None


def _nearest_below_idx(v: np.ndarray, eps: float) -> np.ndarray:
    """For each i, the nearest j < i with v[j] < v[i] - eps, or -1."""
    from bisect import bisect_left

    out = np.full(v.size, -1, dtype=np.int64)
    idx: list[int] = []
    vs: list[float] = []
    for i in range(v.size):
        x = float(v[i])
        while vs and vs[-1] >= x:
            vs.pop()
            idx.pop()
        k = bisect_left(vs, x - eps)
        if k > 0:
            out[i] = idx[k - 1]
        idx.append(i)
        vs.append(x)
    return out


def is_n_monotone(
    s: DiscreteSignal, n: int, eps: float = 0.0
) -> tuple[bool, Optional[int]]:
    """True iff every n+2 consecutive terms form a monotone block.
    On failure also returns the start index of an offending block.

    A block only fails when some term beats terms on both sides of it by
    more than eps in the same direction."""
    if n < 1 or int(n) != n:
        raise ValueError("n must be a positive integer")
    v = np.asarray(s.values, dtype=float)
    if v.size <= 2:
        return True, None
    first = None
    for w in (v, -v):
        left = _nearest_below_idx(w, eps)
        right = _nearest_below_idx(w[::-1], eps)
        right = np.where(right >= 0, v.size - 1 - right, -1)[::-1]
        ok = (left >= 0) & (right >= 0) & (right - left <= n + 1)
        zs = np.nonzero(ok)[0]
        if zs.size:
            start = int(left[zs].min())
            first = start if first is None else min(first, start)
    return (first is None), first


def monotone_runs(f: PiecewiseLinearFunction) -> list[tuple[float, float, int]]:
    """Maximal-up-to-jumps intervals on which f is monotone, as
    (lo, hi, direction) with direction +1 (nondecreasing), -1 (nonincreasing)
    or 0 (constant).  Every returned interval is verified; endpoints shrink
    to the neighbouring breakpoint when a jump at the boundary would break
    monotonicity of the closed interval."""
    moves = _strict_moves(f, 0.0)
    if not moves:
        return [(f.domain.lo, f.domain.hi, 0)]
    candidates = []
    start = f.domain.lo
    cur = moves[0][2]
    for (a1, b1, s1), (a2, b2, s2) in zip(moves[:-1], moves[1:]):
        if s2 != s1:
            candidates.append((start, a2, cur))
            start = b1
            cur = s2
    candidates.append((start, f.domain.hi, cur))
    xs = f.xs
    runs = []
    for a, b, want in candidates:
        for aa, bb in ((a, b), (a, _bp_before(xs, b)), (_bp_after(xs, a), b),
                       (_bp_after(xs, a), _bp_before(xs, b))):
            if aa is None or bb is None or not aa < bb:
                continue
            got = _direction_on(f, aa, bb)
            if got is not None and (got == want or got == 0):
                runs.append((aa, bb, want))
                break
    return runs


def _bp_before(xs, b):
    i = int(np.searchsorted(xs, b, side="left")) - 1
    return float(xs[i]) if i >= 0 else None


def _bp_after(xs, a):
    i = int(np.searchsorted(xs, a, side="right"))
    return float(xs[i]) if i < xs.size else None


def is_monotone_on(
    f: PiecewiseLinearFunction, a: float, b: float, direction: int, eps: float = 0.0
) -> tuple[bool, Optional[WitnessInterval]]:
    """Check that f restricted to [a, b] moves only in the given direction
    (+1 nondecreasing, -1 nonincreasing), allowing eps of slack per step."""
    g = f.restrict(a, b)
    pos, val = _walk(g)
    d = np.diff(val) * direction
    bad = np.nonzero(d < -eps)[0]
    if bad.size == 0:
        return True, None
    i = int(bad[0])
    x, y = float(pos[i]), float(pos[i + 1])
    if x == y:
        x = max(a, x - 1e-9 * max(1.0, abs(x)))
        y = min(b, y + 1e-9 * max(1.0, abs(y)))
    return False, WitnessInterval(x, y, (x, y))


def _apply(op: Operator, f: PiecewiseLinearFunction) -> PiecewiseLinearFunction:
    if isinstance(op, OperatorExpr):
        return apply_pipeline(op, f)
    return op(f)


def _direction_on(f: PiecewiseLinearFunction, a: float, b: float) -> Optional[int]:
    pos, val = _walk(f.restrict(a, b))
    d = np.diff(val)
    up = bool((d > 0).any())
    down = bool((d < 0).any())
    if up and down:
        return None
    if up:
        return 1
    if down:
        return -1
    return 0


def check_trend_preservation(
    f: PiecewiseLinearFunction,
    op: Operator,
    interval: tuple[float, float],
    eps: float = 0.0,
) -> tuple[bool, Optional[WitnessInterval]]:
    """On an interval where f is monotone, verify that both op(f) and the
    residual f - op(f) are monotone in the same direction there."""
    a, b = interval
    if not (f.domain.lo <= a < b <= f.domain.hi):
        raise ValueError("interval must be a nondegenerate subinterval of the domain")
    direction = _direction_on(f, a, b)
    if direction is None:
        raise ValueError("f is not monotone on the given interval")
    smooth = _apply(op, f)
    residual = f - smooth
    for g in (smooth, residual):
        if direction == 0:
            # constant input: accept monotone output of either direction
            ok_up, w = is_monotone_on(g, a, b, 1, eps)
            ok_dn, w2 = is_monotone_on(g, a, b, -1, eps)
            if not (ok_up or ok_dn):
                return False, w or w2
        else:
            ok, w = is_monotone_on(g, a, b, direction, eps)
            if not ok:
                return False, w
    return True, None


def tv_decomposition(f: PiecewiseLinearFunction, op: Operator) -> TVDecompositionReport:
    smooth = _apply(op, f)
    residual = f - smooth
    tv_f = total_variation_plf(f)
    tv_s = total_variation_plf(smooth)
    tv_r = total_variation_plf(residual)
    return TVDecompositionReport(tv_f, tv_s, tv_r, tv_s + tv_r - tv_f)


def verify_sampling_bridge(
    f: PiecewiseLinearFunction,
    delta: float,
    n: int,
    h: float,
    x0: float,
    eps: float = 0.0,
) -> SamplingBridgeReport:
    """Sample a locally delta-monotone function at spacing h < delta/(n+1)
    and report whether the sampling is n-monotone along with both total
    variations (tv_sample <= tv_function always)."""
    if not h > 0:
        raise ValueError("h must be positive")
    if not h < delta / (n + 1):
        raise ValueError("h must be smaller than delta / (n + 1)")
    ok, witness = is_locally_delta_monotone(f, delta, eps)
    if not ok:
        raise ValueError(f"f is not locally delta-monotone (witness near {witness.lo})")
    s = sample(f, h, x0)
    mono, _ = is_n_monotone(s, n, eps)
    return SamplingBridgeReport(mono, total_variation_seq(s), total_variation_plf(f))
