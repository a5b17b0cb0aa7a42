"""Exact representations of piecewise-linear functions with jumps and of finite signals.

A ``PiecewiseLinearFunction`` lives on a bounded closed interval.  It is stored
as a strictly increasing breakpoint grid together with a point value at every
breakpoint and a pair of one-sided limits per open segment, so jump
discontinuities and isolated point values are represented exactly.  The class
is closed under all the smoothing operators in this package: envelopes of a
member are again members.

All values are immutable after construction and every operation is a pure
function, so instances are safe to share between threads.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "OutsideDomainError",
    "Domain",
    "Tolerance",
    "PiecewiseLinearFunction",
    "DiscreteSignal",
    "plf_evaluate",
    "plf_normalize",
    "plf_sup_distance",
    "sample",
    "plf_from_samples",
    "violation_above",
    "jump_tolerant_distance",
]


class OutsideDomainError(ValueError):
    """Raised when a coordinate falls outside a function's domain."""


@dataclass(frozen=True)
class Domain:
    """A bounded closed interval [lo, hi] with lo < hi."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("domain endpoints must be finite")
        if not self.lo < self.hi:
            raise ValueError(f"domain requires lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def span(self) -> float:
        return self.hi - self.lo

    def __contains__(self, x: float) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class Tolerance:
    """Absolute comparison tolerance used by the law checkers and tests."""

    eps: float = 1e-9

    def __post_init__(self) -> None:
        if self.eps < 0:
            raise ValueError("eps must be nonnegative")


def _interp(x0: float, y0: float, x1: float, y1: float, x: float) -> float:
    # Plateau short-circuit keeps constant stretches bitwise flat.
    if y0 == y1:
        return y0
    t = (x - x0) / (x1 - x0)
    return y0 + t * (y1 - y0)


class PiecewiseLinearFunction:
    """A bounded function on a closed interval, linear on open segments.

    ``xs`` are the breakpoint positions (first/last equal the domain ends),
    ``values[i]`` is f(xs[i]), and segment ``i`` on the open interval
    ``(xs[i], xs[i+1])`` is the straight line from ``seg_start[i]`` (the right
    limit at ``xs[i]``) to ``seg_end[i]`` (the left limit at ``xs[i+1]``).
    """

    __slots__ = ("domain", "xs", "values", "seg_start", "seg_end")

    def __init__(
        self,
        domain: Domain,
        xs: Sequence[float],
        values: Sequence[float],
        seg_start: Sequence[float],
        seg_end: Sequence[float],
        *,
        validate: bool = True,
    ):
        xs_a = np.asarray(xs, dtype=float)
        values_a = np.asarray(values, dtype=float)
        ss_a = np.asarray(seg_start, dtype=float)
        se_a = np.asarray(seg_end, dtype=float)
        if validate:
            if xs_a.ndim != 1 or xs_a.size < 2:
                raise ValueError("need at least two breakpoints")
            if not (np.diff(xs_a) > 0).all():
                raise ValueError("breakpoint positions must be strictly increasing")
            if xs_a[0] != domain.lo or xs_a[-1] != domain.hi:
                raise ValueError("first/last breakpoints must equal the domain endpoints")
            if values_a.shape != xs_a.shape:
                raise ValueError("one point value per breakpoint required")
            if ss_a.shape != se_a.shape or ss_a.size != xs_a.size - 1:
                raise ValueError("one limit pair per segment required")
            for arr in (xs_a, values_a, ss_a, se_a):
                if not np.isfinite(arr).all():
                    raise ValueError("all coordinates and values must be finite")
        for arr in (xs_a, values_a, ss_a, se_a):
            arr.flags.writeable = False
        self.domain = domain
        self.xs = xs_a
        self.values = values_a
        self.seg_start = ss_a
        self.seg_end = se_a

    # ---------------------------------------------------------------- basics

    @classmethod
    def constant(cls, domain: Domain, c: float) -> "PiecewiseLinearFunction":
        return cls(domain, [domain.lo, domain.hi], [c, c], [c], [c])

    @classmethod
    def from_points(cls, points: Iterable[tuple[float, float]]) -> "PiecewiseLinearFunction":
        """Continuous piecewise-linear interpolant through the given (x, y) points."""
        pts = sorted(points)
        if len(pts) < 2:
            raise ValueError("need at least two points")
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        domain = Domain(xs[0], xs[-1])
        return cls(domain, xs, ys, ys[:-1], ys[1:])

    @property
    def breakpoint_count(self) -> int:
        return int(self.xs.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PiecewiseLinearFunction):
            return NotImplemented
        return (
            self.domain == other.domain
            and np.array_equal(self.xs, other.xs)
            and np.array_equal(self.values, other.values)
            and np.array_equal(self.seg_start, other.seg_start)
            and np.array_equal(self.seg_end, other.seg_end)
        )

    def __hash__(self):
        return hash((self.domain, self.xs.tobytes(), self.values.tobytes()))

    def __repr__(self) -> str:
        return (
            f"PiecewiseLinearFunction([{self.domain.lo}, {self.domain.hi}], "
            f"{self.breakpoint_count} breakpoints)"
        )

    # ------------------------------------------------------------ evaluation

    def _segment_value(self, i: int, x: float) -> float:
        return _interp(
            self.xs[i], self.seg_start[i], self.xs[i + 1], self.seg_end[i], x
        )

    def _locate(self, x: float) -> tuple[int, bool]:
        """Index of the breakpoint at x, or of the segment containing x.

        Returns ``(j, True)`` when ``x == xs[j]`` and ``(i, False)`` when x lies
        strictly inside segment i.
        """
        j = int(np.searchsorted(self.xs, x))
        if j < self.xs.size and self.xs[j] == x:
            return j, True
        return j - 1, False

    def evaluate(self, x: float, side: str = "at") -> float:
        """f(x), f(x-) or f(x+), exactly per the representation."""
        if x not in self.domain:
            raise OutsideDomainError(f"{x} outside domain [{self.domain.lo}, {self.domain.hi}]")
        if side not in ("at", "left_limit", "right_limit"):
            raise ValueError(f"unknown side {side!r}")
        if side == "left_limit" and x == self.domain.lo:
            raise ValueError("no left limit at the left domain endpoint")
        if side == "right_limit" and x == self.domain.hi:
            raise ValueError("no right limit at the right domain endpoint")
        j, is_bp = self._locate(x)
        if is_bp:
            if side == "at":
                return float(self.values[j])
            if side == "left_limit":
                return float(self.seg_end[j - 1])
            return float(self.seg_start[j])
        return float(self._segment_value(j, x))

    def __call__(self, x: float) -> float:
        return self.evaluate(x, "at")

    # --------------------------------------------------------- refinement

    def _refine_to(self, pts: np.ndarray) -> "PiecewiseLinearFunction":
        """Representation of the same function on a superset of breakpoints.

        ``pts`` must be sorted, unique, contain ``self.xs`` and stay inside the
        domain.  Pointwise values and one-sided limits are preserved; values at
        inserted points are segment interpolations.
        """
        xs = self.xs
        idx = np.searchsorted(xs, pts)
        idx_c = np.minimum(idx, xs.size - 1)
        is_bp = xs[idx_c] == pts
        seg = np.clip(idx - 1, 0, xs.size - 2)

        x0 = xs[seg]
        x1 = xs[seg + 1]
        y0 = self.seg_start[seg]
        y1 = self.seg_end[seg]
        flat = y0 == y1
        with np.errstate(invalid="ignore", divide="ignore"):
            t = (pts - x0) / (x1 - x0)
        interp = np.where(flat, y0, y0 + t * (y1 - y0))

        values = np.where(is_bp, self.values[idx_c], interp)

        # New segment m runs (pts[m], pts[m+1]); find the old segment holding it.
        mseg = np.where(is_bp[:-1], idx_c[:-1], seg[:-1])
        left_is_bp = pts[:-1] == xs[mseg]
        right_is_bp = pts[1:] == xs[mseg + 1]

        mx0 = xs[mseg]
        mx1 = xs[mseg + 1]
        my0 = self.seg_start[mseg]
        my1 = self.seg_end[mseg]
        mflat = my0 == my1
        with np.errstate(invalid="ignore", divide="ignore"):
            tl = (pts[:-1] - mx0) / (mx1 - mx0)
            tr = (pts[1:] - mx0) / (mx1 - mx0)
        start_interp = np.where(mflat, my0, my0 + tl * (my1 - my0))
        end_interp = np.where(mflat, my0, my0 + tr * (my1 - my0))
        seg_start = np.where(left_is_bp, my0, start_interp)
        seg_end = np.where(right_is_bp, my1, end_interp)

        return PiecewiseLinearFunction(
            self.domain, pts, values, seg_start, seg_end, validate=False
        )

    def refine(self, extra: Sequence[float]) -> "PiecewiseLinearFunction":
        extra_a = np.asarray(extra, dtype=float)
        if extra_a.size and (
            extra_a.min() < self.domain.lo or extra_a.max() > self.domain.hi
        ):
            raise ValueError("refinement points must lie inside the domain")
        pts = np.unique(np.concatenate([self.xs, extra_a]))
        return self._refine_to(pts)

    def restrict(self, a: float, b: float) -> "PiecewiseLinearFunction":
        """The same function on the subdomain [a, b]."""
        if not (self.domain.lo <= a < b <= self.domain.hi):
            raise ValueError("invalid restriction interval")
        g = self.refine([a, b])
        i = int(np.searchsorted(g.xs, a))
        j = int(np.searchsorted(g.xs, b))
        return PiecewiseLinearFunction(
            Domain(a, b),
            g.xs[i : j + 1],
            g.values[i : j + 1],
            g.seg_start[i:j],
            g.seg_end[i:j],
            validate=False,
        )

    # -------------------------------------------------------- arithmetic

    def _check_same_domain(self, other: "PiecewiseLinearFunction") -> None:
        if self.domain != other.domain:
            raise ValueError("functions are defined on different domains")

    def _aligned(self, other):
        self._check_same_domain(other)
        pts = np.unique(np.concatenate([self.xs, other.xs]))
        return self._refine_to(pts), other._refine_to(pts)

    def __neg__(self) -> "PiecewiseLinearFunction":
        return PiecewiseLinearFunction(
            self.domain, self.xs, -self.values, -self.seg_start, -self.seg_end,
            validate=False,
        )

    def _combine(self, other, op) -> "PiecewiseLinearFunction":
        f, g = self._aligned(other)
        return PiecewiseLinearFunction(
            self.domain,
            f.xs,
            op(f.values, g.values),
            op(f.seg_start, g.seg_start),
            op(f.seg_end, g.seg_end),
            validate=False,
        )

    def __add__(self, other):
        if isinstance(other, PiecewiseLinearFunction):
            return self._combine(other, np.add)
        return self.shift(float(other))

    def __sub__(self, other):
        if isinstance(other, PiecewiseLinearFunction):
            return self._combine(other, np.subtract)
        return self.shift(-float(other))

    def shift(self, c: float) -> "PiecewiseLinearFunction":
        return PiecewiseLinearFunction(
            self.domain, self.xs, self.values + c, self.seg_start + c,
            self.seg_end + c, validate=False,
        )

    def scale(self, a: float) -> "PiecewiseLinearFunction":
        return PiecewiseLinearFunction(
            self.domain, self.xs, a * self.values, a * self.seg_start,
            a * self.seg_end, validate=False,
        )

    # ------------------------------------------------------- comparison

    def sup_distance(self, other: "PiecewiseLinearFunction") -> float:
        """Exact sup |f - g|.

        f - g is linear on every cell of the merged breakpoint grid, so the
        supremum is attained among point values and one-sided limits there.
        """
        f, g = self._aligned(other)
        d = max(
            np.abs(f.values - g.values).max(),
            np.abs(f.seg_start - g.seg_start).max(),
            np.abs(f.seg_end - g.seg_end).max(),
        )
        return float(d)

    def max_violation_above(self, other: "PiecewiseLinearFunction") -> float:
        """max(0, sup (f - g)): how far f pokes above g."""
        f, g = self._aligned(other)
        d = max(
            (f.values - g.values).max(),
            (f.seg_start - g.seg_start).max(),
            (f.seg_end - g.seg_end).max(),
        )
        return max(0.0, float(d))

    def leq(self, other: "PiecewiseLinearFunction", eps: float = 0.0) -> bool:
        return self.max_violation_above(other) <= eps

    # ---------------------------------------------------- normalization

    def normalize(self) -> "PiecewiseLinearFunction":
        """Canonical form: drop breakpoints that are redundant under exact equality.

        A breakpoint is dropped only when its point value and both one-sided
        limits coincide and the merged segment reproduces, bitwise, the stored
        value at every dropped position, so the result is pointwise identical.
        """
        xs = self.xs.tolist()
        vals = self.values.tolist()
        ss = self.seg_start.tolist()
        se = self.seg_end.tolist()
        k = len(xs) - 1

        out_xs = [xs[0]]
        out_vals = [vals[0]]
        out_ss: list[float] = []
        out_se: list[float] = []
        chain_sx = xs[0]
        chain_sv = ss[0]
        chain_dropped: list[tuple[float, float]] = []

        for i in range(1, k + 1):
            arriving_end = se[i - 1]
            if i < k and vals[i] == arriving_end and vals[i] == ss[i]:
                cand_end_x, cand_end_v = xs[i + 1], se[i]
                ok = _interp(chain_sx, chain_sv, cand_end_x, cand_end_v, xs[i]) == vals[i]
                if ok and chain_dropped and not (chain_sv == cand_end_v == vals[i]):
                    ok = all(
                        _interp(chain_sx, chain_sv, cand_end_x, cand_end_v, dx) == dv
                        for dx, dv in chain_dropped
                    )
                if ok:
                    chain_dropped.append((xs[i], vals[i]))
                    continue
            # close the running segment at xs[i]
            out_ss.append(chain_sv)
            out_se.append(arriving_end)
            out_xs.append(xs[i])
            out_vals.append(vals[i])
            if i < k:
                chain_sx = xs[i]
                chain_sv = ss[i]
                chain_dropped = []

        return PiecewiseLinearFunction(
            self.domain, out_xs, out_vals, out_ss, out_se, validate=False
        )

    # -------------------------------------------------------- sampling

    def sample(self, h: float, x0: float) -> "DiscreteSignal":
        """Values f(x0 + i*h) for i >= 0 while the sample point stays in the domain."""
        if h <= 0:
            raise ValueError("sampling interval must be positive")
        if x0 not in self.domain:
            raise ValueError(f"sampling origin {x0} outside domain")
        # tolerate roundoff at the far end so hi itself is sampled when reachable
        n = int(math.floor((self.domain.hi - x0) / h + 1e-12)) + 1
        vals = []
        for i in range(n):
            x = x0 + i * h
            if x > self.domain.hi:
                x = self.domain.hi
            vals.append(self.evaluate(x, "at"))
        return DiscreteSignal(vals, spacing=h, origin=x0)


@dataclass(frozen=True)
class DiscreteSignal:
    """A finite sequence of samples with optional uniform spacing metadata."""

    values: np.ndarray
    spacing: float | None = None
    origin: float | None = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("signal must be a nonempty 1-D sequence")
        if not np.isfinite(vals).all():
            raise ValueError("signal values must be finite")
        if self.spacing is not None and self.spacing <= 0:
            raise ValueError("spacing must be positive")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return int(self.values.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiscreteSignal):
            return NotImplemented
        return (
            np.array_equal(self.values, other.values)
            and self.spacing == other.spacing
            and self.origin == other.origin
        )

    def to_function(self) -> PiecewiseLinearFunction:
        """Continuous piecewise-linear interpolant through the samples."""
        if self.spacing is None or self.origin is None:
            raise ValueError("signal carries no spacing/origin metadata")
        if len(self) < 2:
            raise ValueError("need at least two samples to interpolate")
        xs = self.origin + self.spacing * np.arange(len(self))
        return PiecewiseLinearFunction(
            Domain(float(xs[0]), float(xs[-1])),
            xs,
            self.values,
            self.values[:-1],
            self.values[1:],
        )


def _slots(F: PiecewiseLinearFunction):
    """All stored (position, value) pairs of an aligned representation:
    point values plus both one-sided limits, sorted by position."""
    pts = F.xs
    pos = np.concatenate([pts, pts[:-1], pts[1:]])
    val = np.concatenate([F.values, F.seg_start, F.seg_end])
    order = np.argsort(pos, kind="stable")
    return pos[order], val[order]


def _jump_positions(F: PiecewiseLinearFunction, G: PiecewiseLinearFunction) -> np.ndarray:
    """Breakpoints where either aligned representation is discontinuous."""
    masks = []
    for H in (F, G):
        m = np.zeros(H.xs.size, dtype=bool)
        m[1:] |= H.values[1:] != H.seg_end
        m[:-1] |= H.values[:-1] != H.seg_start
        masks.append(m)
    return F.xs[masks[0] | masks[1]]


def violation_above(
    f: PiecewiseLinearFunction,
    g: PiecewiseLinearFunction,
    xtol: float = 0.0,
) -> float:
    """max(0, sup (f - g)), optionally tolerant to breakpoint misalignment.

    With ``xtol > 0``, slots of f that sit within ``xtol`` of a discontinuity
    of either function are compared against the best value g attains within
    ``xtol`` of that position instead of the exactly corresponding slot.  This
    excuses ulp-wide slivers caused by shifted jump coordinates that round to
    neighbouring floats, while remaining an exact slotwise comparison
    everywhere else.
    """
    F, G = f._aligned(g)
    base = max(
        (F.values - G.values).max(),
        (F.seg_start - G.seg_start).max(),
        (F.seg_end - G.seg_end).max(),
    )
    if xtol <= 0.0 or base <= 0.0:
        return max(0.0, float(base))
    jumps = _jump_positions(F, G)
    if jumps.size == 0:
        return max(0.0, float(base))
    fpos, fval = _slots(F)
    gpos, gval = _slots(G)
    # slotwise diff in the same interleaved order
    diff = fval - gval
    # which slots sit near a jump of either function
    j = np.searchsorted(jumps, fpos)
    left = np.abs(fpos - jumps[np.clip(j - 1, 0, jumps.size - 1)])
    right = np.abs(jumps[np.clip(j, 0, jumps.size - 1)] - fpos)
    near = np.minimum(left, right) <= xtol
    worst = float(diff[~near].max(initial=0.0))
    for idx in np.nonzero(near & (diff > worst))[0]:
        p = fpos[idx]
        a = np.searchsorted(gpos, p - xtol, side="left")
        b = np.searchsorted(gpos, p + xtol, side="right")
        bound = gval[a:b].max() if b > a else gval[min(a, gval.size - 1)]
        worst = max(worst, float(fval[idx] - bound))
    return max(0.0, worst)


def jump_tolerant_distance(
    f: PiecewiseLinearFunction, g: PiecewiseLinearFunction, xtol: float = 0.0
) -> float:
    """Symmetric sup-distance with :func:`violation_above`'s jump slack."""
    return max(violation_above(f, g, xtol), violation_above(g, f, xtol))


# ------------------------------------------------------------------ wrappers
# Free-function spellings of the operations above, matching the rest of the
# package's functional style.


def plf_evaluate(f: PiecewiseLinearFunction, x: float, side: str = "at") -> float:
    return f.evaluate(x, side)


def plf_normalize(f: PiecewiseLinearFunction) -> PiecewiseLinearFunction:
    return f.normalize()


def plf_sup_distance(f: PiecewiseLinearFunction, g: PiecewiseLinearFunction) -> float:
    return f.sup_distance(g)


def sample(f: PiecewiseLinearFunction, h: float, x0: float) -> DiscreteSignal:
    return f.sample(h, x0)


def plf_from_samples(s: DiscreteSignal) -> PiecewiseLinearFunction:
    return s.to_function()
