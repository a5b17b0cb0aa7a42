"""Windowed infimum/supremum envelopes, exact for piecewise-linear functions.

``lower_envelope(f, r)`` computes x -> inf {f(y) : y in [x-r, x+r] ∩ Ω}
exactly.  For the piecewise-linear-with-jumps class the infimum over a closed
window is the minimum of a finite candidate set: point values inside the
window, one-sided limits at breakpoints inside the window, and the function
values at the two window edges.  Between consecutive "events" (breakpoints and
their ±r shifts) the candidate set is fixed, so the envelope is the pointwise
minimum of one constant and at most two shifted segment lines, and the exact
output is assembled cell by cell.

Windows at the domain ends shrink: the window is intersected with Ω, never
padded or reflected.

The discrete counterparts ``windowed_min``/``windowed_max`` run a monotone
queue (each element enters and leaves the queue once, so O(n) total).  The
sweep is JIT-compiled with numba when available; a pure-Python fallback keeps
the package importable without it.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right

import numpy as np

from .core import DiscreteSignal, PiecewiseLinearFunction

__all__ = [
    "lower_envelope",
    "upper_envelope",
    "lsc_regularization",
    "usc_regularization",
    "windowed_min",
    "windowed_max",
]


class _RangeMin:
    """Sparse table for O(1) min over inclusive index ranges."""

    def __init__(self, arr: np.ndarray):
        rows = [np.asarray(arr, dtype=float)]
        j = 1
        while (1 << j) <= arr.size:
            prev = rows[-1]
            half = 1 << (j - 1)
            rows.append(np.minimum(prev[:-half], prev[half:]))
            j += 1
        self._rows = [r.tolist() for r in rows]

    def query(self, i: int, j: int) -> float:
        b = (j - i + 1).bit_length() - 1
        row = self._rows[b]
        x = row[i]
        y = row[j - (1 << b) + 1]
        return x if x < y else y


def _lower_pieces(lines, x1, x2, snap=None):
    """Pointwise minimum of up to three lines on [x1, x2] as (xa, xb, m, b) pieces."""
    uniq = []
    for ln in lines:
        if ln not in uniq:
            uniq.append(ln)
    pts = [x1, x2]
    n = len(uniq)
    for i in range(n):
        m1, b1 = uniq[i]
        for j in range(i + 1, n):
            m2, b2 = uniq[j]
            if m1 != m2:
                xc = (b2 - b1) / (m1 - m2)
                if snap is not None:
                    xc = snap(xc)
                if x1 < xc < x2:
                    pts.append(xc)
    pts.sort()
    pieces = []
    for a, b in zip(pts[:-1], pts[1:]):
        if b <= a:
            continue
        xm = 0.5 * (a + b)
        best = None
        best_val = None
        for m, c in uniq:
            v = m * xm + c
            if best_val is None or v < best_val:
                best_val = v
                best = (m, c)
        if pieces and pieces[-1][2] == best[0] and pieces[-1][3] == best[1]:
            pieces[-1] = (pieces[-1][0], b, best[0], best[1])
        else:
            pieces.append((a, b, best[0], best[1]))
    return pieces


def lower_envelope(
    f: PiecewiseLinearFunction, r: float, align: np.ndarray | None = None
) -> PiecewiseLinearFunction:
    """Exact windowed infimum of f over [x-r, x+r] ∩ Ω, as a function of x.

    ``align`` optionally supplies the breakpoint coordinates that derived
    coordinates are pinned to (see the comment inside); it defaults to the
    breakpoints of f itself.  Operator pipelines pass the breakpoints of the
    function the pipeline started from so that every pass stays aligned with
    the original jumps.
    """
    if r <= 0:
        raise ValueError("window radius must be positive")

    lo = f.domain.lo
    hi = f.domain.hi
    xs_a = f.xs
    xs = xs_a.tolist()
    vals = f.values.tolist()
    ss = f.seg_start.tolist()
    se = f.seg_end.tolist()
    k = len(xs) - 1

    # per-breakpoint lower candidate: min of point value and existing one-sided limits
    c = f.values.copy()
    np.minimum(c[:-1], f.seg_start, out=c[:-1])
    np.minimum(c[1:], f.seg_end, out=c[1:])
    rmin = _RangeMin(c)

    left_const = min(vals[0], ss[0])
    right_const = min(vals[k], se[k - 1])

    # boundary-trace lines, memoized so the cell sweep and the event-point
    # evaluation share bitwise-identical coefficients
    lines_l: dict[int, tuple[float, float]] = {}
    lines_r: dict[int, tuple[float, float]] = {}

    def line_l(j: int) -> tuple[float, float]:
        ln = lines_l.get(j)
        if ln is None:
            a, b = ss[j], se[j]
            m = 0.0 if a == b else (b - a) / (xs[j + 1] - xs[j])
            ln = (m, a - (r + xs[j]) * m) if m != 0.0 else (0.0, a)
            lines_l[j] = ln
        return ln

    def line_r(j: int) -> tuple[float, float]:
        ln = lines_r.get(j)
        if ln is None:
            a, b = ss[j], se[j]
            m = 0.0 if a == b else (b - a) / (xs[j + 1] - xs[j])
            ln = (m, a + (r - xs[j]) * m) if m != 0.0 else (0.0, a)
            lines_r[j] = ln
        return ln

    # Computed coordinates (shifted window edges and piece intersections)
    # that land within a few ulps of an anchor are pinned onto it.  Anchors
    # are the breakpoints of the function an operator pipeline started from:
    # composing envelope passes whose radii cancel sends a breakpoint y
    # through x -> fl(y + r) -> fl(fl(y + r) - r), which can miss y by an
    # ulp.  The later pass then reads the wrong side of the jump at y and
    # leaves an ulp-wide shard of the pre-jump level next to it, and a
    # difference against the original function acquires a spurious isolated
    # spike of twice the jump height.  Pinning every derived coordinate to
    # the well-separated anchor grid keeps jumps of the output bitwise
    # aligned with jumps of the anchor function through any number of passes.
    _eps = np.finfo(float).eps
    anchors = xs_a if align is None else np.ascontiguousarray(align, dtype=float)
    n_anchor = anchors.size

    # The pin carries a roundtrip guard: fl(src +- r) is pinned onto anchor a
    # only when the opposite shift maps a exactly back onto src.  Pinning to
    # the merely nearest anchor also captures unrelated coordinates an ulp
    # away (shards left by piece intersections) and wrongly exposes their
    # pre-jump values at the anchor itself.
    def _pin(x: float, back: float, src: float) -> float:
        i = bisect_left(anchors_l, x)
        best, bestd = x, 4.0 * _eps * (abs(x) + r)
        for t in (i - 1, i):
            if 0 <= t < n_anchor:
                a = anchors_l[t]
                d = abs(a - x)
                if d < bestd and a + back == src:
                    best, bestd = a, d
        return best

    def _pin_free(x: float) -> float:
        i = bisect_left(anchors_l, x)
        best, bestd = x, 4.0 * _eps * (abs(x) + r)
        for t in (i - 1, i):
            if 0 <= t < n_anchor:
                d = abs(anchors_l[t] - x)
                if d < bestd:
                    best, bestd = anchors_l[t], d
        return best

    def _pin_array(arr: np.ndarray, back: float, src: np.ndarray):
        idx = np.searchsorted(anchors, arr)
        al = anchors[np.clip(idx - 1, 0, n_anchor - 1)]
        ar = anchors[np.clip(idx, 0, n_anchor - 1)]
        dl = np.abs(arr - al)
        dr = np.abs(ar - arr)
        tol = 4.0 * _eps * (np.abs(arr) + r)
        ok_l = (dl <= tol) & (al + back == src)
        ok_r = (dr <= tol) & (ar + back == src)
        out = np.where(ok_r, ar, arr)
        return np.where(ok_l & (~ok_r | (dl <= dr)), al, out), ok_l | ok_r

    def _shift_residue(sign: float, shifted: np.ndarray) -> np.ndarray:
        # two-sum: the true x + sign*r equals shifted + residue exactly, so a
        # float tie in a window comparison resolves by the residue's sign
        bv = shifted - xs_a
        return (xs_a - (shifted - bv)) + (sign * r - bv)

    anchors_l = anchors.tolist()
    sm = xs_a - r
    sp = xs_a + r
    em_a = _shift_residue(-1.0, sm)
    ep_a = _shift_residue(1.0, sp)
    xs_minus_a, pinned_m = _pin_array(sm, r, xs_a)
    xs_plus_a, pinned_p = _pin_array(sp, -r, xs_a)
    # a pin asserts exact grazing at the anchor, so its residue is zero
    em_a = np.where(pinned_m, 0.0, em_a)
    ep_a = np.where(pinned_p, 0.0, ep_a)
    xs_minus = xs_minus_a.tolist()
    xs_plus = xs_plus_a.tolist()
    em = em_a.tolist()
    ep = ep_a.tolist()
    events = np.unique(
        np.clip(np.concatenate([xs_a, xs_minus_a, xs_plus_a]), lo, hi)
    ).tolist()
    thr_lo = lo + r
    thr_hi = hi - r

    def value_at(e: float) -> float:
        # Breakpoint coverage is decided with the same precomputed shifted
        # coordinates the cell sweep uses (x_j in the window iff
        # fl(x_j - r) <= e <= fl(x_j + r)), so an event's point value can never
        # contradict the segments on either side of it: recomputing fl(e +- r)
        # here instead can land half an ulp across a jump breakpoint and
        # produce an isolated point value an O(jump) distance from both
        # neighbouring segments.
        best = np.inf
        jl = bisect_left(xs_plus, e)
        jr = bisect_right(xs_minus, e) - 1
        il = bisect_right(xs_plus, e)
        ir = bisect_left(xs_minus, e) - 1
        if il <= ir:
            # strictly interior breakpoints: point value and both limits
            best = rmin.query(il, ir)
        for j in range(jl, jr + 1):
            if il <= j <= ir:
                continue
            # breakpoint at a window edge: the point value needs the
            # breakpoint inside the closed window, a one-sided limit needs
            # the window to extend strictly past it; float ties resolve by
            # the rounding residue of the shifted coordinate
            xm, xp = xs_minus[j], xs_plus[j]
            lo_le = xm < e or (xm == e and em[j] <= 0.0)
            lo_lt = xm < e or (xm == e and em[j] < 0.0)
            hi_ge = xp > e or (xp == e and ep[j] >= 0.0)
            hi_gt = xp > e or (xp == e and ep[j] > 0.0)
            v = np.inf
            if lo_le and hi_ge:
                v = vals[j]
            if j < k and lo_lt and hi_ge and ss[j] < v:
                v = ss[j]
            if j > 0 and hi_gt and lo_le and se[j - 1] < v:
                v = se[j - 1]
            if v < best:
                best = v
        if e >= thr_lo:
            a = _pin(e - r, r, e)
            j = bisect_right(xs, a) - 1
            m, cc = line_l(min(max(j, 0), k - 1))
            v = m * e + cc
            if v < best:
                best = v
        if e <= thr_hi:
            b = _pin(e + r, -r, e)
            j = bisect_left(xs, b) - 1
            m, cc = line_r(min(max(j, 0), k - 1))
            v = m * e + cc
            if v < best:
                best = v
        return best

    out_xs = [events[0]]
    out_vals = [value_at(events[0])]
    out_ss: list[float] = []
    out_se: list[float] = []

    for e1, e2 in zip(events[:-1], events[1:]):
        # Classify the open cell (e1, e2) by its endpoints.  Every transition
        # of the active candidate set happens at an event, so clipping state,
        # trace segments and interior breakpoints are constant across the cell
        # and decidable from e1 and e2 alone (no midpoint sampling, which
        # misclassifies ulp-wide cells).
        lines = []
        if e1 >= thr_lo:
            # left edge sweeps the open range (e1-r, e2-r); the segment
            # holding it is the one just right of e1-r, nudged past any
            # breakpoint that rounding pulled into the range
            a1 = e1 - r
            a2 = e2 - r
            j = bisect_right(xs, a1 + 0.5 * (a2 - a1)) - 1
            lines.append(line_l(min(max(j, 0), k - 1)))
        else:
            lines.append((0.0, left_const))
        if e2 <= thr_hi:
            b0 = e1 + r
            b1 = e2 + r
            j = bisect_left(xs, b0 + 0.5 * (b1 - b0)) - 1
            lines.append(line_r(min(max(j, 0), k - 1)))
        else:
            lines.append((0.0, right_const))
        # breakpoints covered by every window of the cell:
        # x_j - r <= e1 and x_j + r >= e2
        jl = bisect_left(xs_plus, e2)
        jr = bisect_right(xs_minus, e1) - 1
        if jl <= jr:
            lines.append((0.0, rmin.query(jl, jr)))

        pieces = _lower_pieces(lines, e1, e2, snap=_pin_free)
        for idx, (a, b, m, cc) in enumerate(pieces):
            if idx > 0:
                # interior junction of two active lines: continuity point
                prev = out_se[-1]
                v = m * a + cc
                if prev < v:
                    v = prev
                out_se[-1] = v
                out_xs.append(a)
                out_vals.append(v)
                out_ss.append(v)
            else:
                out_ss.append(m * a + cc)
            out_se.append(m * b + cc)
        out_xs.append(e2)
        out_vals.append(value_at(e2))

    result = PiecewiseLinearFunction(
        f.domain, out_xs, out_vals, out_ss, out_se, validate=False
    )
    return result.normalize()


def upper_envelope(
    f: PiecewiseLinearFunction, r: float, align: np.ndarray | None = None
) -> PiecewiseLinearFunction:
    """Exact windowed supremum; dual of :func:`lower_envelope` via negation."""
    return -lower_envelope(-f, r, align=align)


def lsc_regularization(f: PiecewiseLinearFunction) -> PiecewiseLinearFunction:
    """Lower semicontinuous regularization: each point value becomes the min of
    itself and the existing one-sided limits; segments are unchanged."""
    v = f.values.copy()
    np.minimum(v[:-1], f.seg_start, out=v[:-1])
    np.minimum(v[1:], f.seg_end, out=v[1:])
    return PiecewiseLinearFunction(
        f.domain, f.xs, v, f.seg_start, f.seg_end, validate=False
    )


def usc_regularization(f: PiecewiseLinearFunction) -> PiecewiseLinearFunction:
    """Upper semicontinuous regularization, the dual of :func:`lsc_regularization`."""
    v = f.values.copy()
    np.maximum(v[:-1], f.seg_start, out=v[:-1])
    np.maximum(v[1:], f.seg_end, out=v[1:])
    return PiecewiseLinearFunction(
        f.domain, f.xs, v, f.seg_start, f.seg_end, validate=False
    )


# ----------------------------------------------------------- discrete sweeps


def _sweep_min_py(v, back, fwd):
    from collections import deque

    n = v.size
    out = np.empty(n)
    q: "deque[int]" = deque()
    j = 0
    for i in range(n):
        top = i + fwd
        if top >= n:
            top = n - 1
        while j <= top:
            while q and v[q[-1]] >= v[j]:
                q.pop()
            q.append(j)
            j += 1
        while q[0] < i - back:
            q.popleft()
        out[i] = v[q[0]]
    return out


try:  # pragma: no cover - exercised indirectly
    from numba import njit

    @njit(cache=True)
    def _sweep_min_nb(v, back, fwd):  # pragma: no cover
        n = v.size
        out = np.empty(n)
        q = np.empty(n, np.int64)
        head = 0
        tail = 0
        j = 0
        for i in range(n):
            top = i + fwd
            if top >= n:
                top = n - 1
            while j <= top:
                while tail > head and v[q[tail - 1]] >= v[j]:
                    tail -= 1
                q[tail] = j
                tail += 1
                j += 1
            while q[head] < i - back:
                head += 1
            out[i] = v[q[head]]
        return out

    _sweep_min = _sweep_min_nb
except Exception:  # pragma: no cover
    _sweep_min = _sweep_min_py


def _check_window(s: DiscreteSignal, back: int, fwd: int) -> np.ndarray:
    if back < 0 or fwd < 0:
        raise ValueError("window extents must be nonnegative")
    if int(back) != back or int(fwd) != fwd:
        raise ValueError("window extents must be integers")
    return np.ascontiguousarray(s.values, dtype=float)


def windowed_min(s: DiscreteSignal, back: int, fwd: int) -> DiscreteSignal:
    """out[i] = min of s over indices [i-back, i+fwd], clipped to the valid range."""
    v = _check_window(s, back, fwd)
    out = _sweep_min(v, int(back), int(fwd))
    return DiscreteSignal(out, spacing=s.spacing, origin=s.origin)


def windowed_max(s: DiscreteSignal, back: int, fwd: int) -> DiscreteSignal:
    """out[i] = max of s over indices [i-back, i+fwd], clipped to the valid range."""
    v = _check_window(s, back, fwd)
    out = -_sweep_min(-v, int(back), int(fwd))
    return DiscreteSignal(out, spacing=s.spacing, origin=s.origin)
