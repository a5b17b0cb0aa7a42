"""Brute-force reference implementations used by tests to validate the exact
algorithms.  Deliberately simple and slow: dense grids and literal candidate
enumeration, capped at small sizes."""

from __future__ import annotations

import numpy as np

from .core import DiscreteSignal, PiecewiseLinearFunction

__all__ = [
    "grid_nodes",
    "grid_envelope",
    "grid_tv",
    "grid_local_monotone",
    "brute_windowed_min",
    "brute_windowed_max",
]

_MAX_NODES = 200_000


def grid_nodes(f: PiecewiseLinearFunction, step: float) -> np.ndarray:
    """Uniform grid at the given step, merged with all breakpoints."""
    if not step > 0:
        raise ValueError("step must be positive")
    lo, hi = f.domain.lo, f.domain.hi
    count = int(np.floor((hi - lo) / step)) + 1
    if count + f.xs.size > _MAX_NODES:
        raise ValueError("grid too fine for the oracle cap")
    uni = lo + step * np.arange(count)
    return np.unique(np.concatenate([uni, [hi], f.xs]))


def grid_envelope(
    f: PiecewiseLinearFunction, r: float, step: float, kind: str = "lower"
) -> DiscreteSignal:
    """Literal windowed inf/sup over [x-r, x+r] ∩ Ω at every grid node.

    Candidates: node values inside the window, breakpoint values and interior
    one-sided limits, and the values plus inward limits at the window edges.
    """
    if kind not in ("lower", "upper"):
        raise ValueError("kind must be 'lower' or 'upper'")
    if not r > 0:
        raise ValueError("r must be positive")
    nodes = grid_nodes(f, step)
    lo, hi = f.domain.lo, f.domain.hi
    node_vals = np.array([f.evaluate(float(x)) for x in nodes])
    pick = min if kind == "lower" else max
    out = np.empty(nodes.size)
    for i, x in enumerate(nodes):
        a, b = max(x - r, lo), min(x + r, hi)
        cands = []
        j0, j1 = np.searchsorted(nodes, a, "left"), np.searchsorted(nodes, b, "right")
        cands.extend(node_vals[j0:j1])
        cands.append(f.evaluate(float(a)))
        cands.append(f.evaluate(float(b)))
        if a < b:
            cands.append(f.evaluate(float(a), "right_limit"))
            cands.append(f.evaluate(float(b), "left_limit"))
        for m, xm in enumerate(f.xs):
            if a < xm < b:
                cands.append(f.values[m])
                if m > 0:
                    cands.append(f.seg_end[m - 1])
                if m < f.xs.size - 1:
                    cands.append(f.seg_start[m])
        out[i] = pick(cands)
    return DiscreteSignal(out)


def grid_tv(f: PiecewiseLinearFunction, extra_nodes=()) -> float:
    """Partition sum over breakpoints, segment midpoints and extra nodes,
    reading one-sided limits next to every node so jumps are captured."""
    mids = 0.5 * (f.xs[:-1] + f.xs[1:])
    nodes = np.unique(np.concatenate([f.xs, mids, np.asarray(extra_nodes, dtype=float)]))
    lo, hi = f.domain.lo, f.domain.hi
    seq = []
    for x in nodes:
        x = float(x)
        if not lo <= x <= hi:
            continue
        if x > lo:
            seq.append(f.evaluate(x, "left_limit"))
        seq.append(f.evaluate(x))
        if x < hi:
            seq.append(f.evaluate(x, "right_limit"))
    return float(np.abs(np.diff(seq)).sum())


def _nearest_below(vals: np.ndarray, eps: float) -> np.ndarray:
    """For each index i, the nearest j < i with vals[j] < vals[i] - eps,
    or -1.  Monotonic stack; the stack stores indices with strictly
    increasing values, so the qualifying entries form a prefix."""
    from bisect import bisect_left

    n = vals.size
    out = np.full(n, -1, dtype=np.int64)
    idx: list[int] = []
    vs: list[float] = []
    for i in range(n):
        v = float(vals[i])
        while vs and vs[-1] >= v:
            vs.pop()
            idx.pop()
        k = bisect_left(vs, v - eps)
        if k > 0:
            out[i] = idx[k - 1]
        idx.append(i)
        vs.append(v)
    return out


def grid_local_monotone(
    f: PiecewiseLinearFunction, delta: float, step: float, eps: float = 0.0
) -> bool:
    """Exhaustive scan for a non-monotone point triple inside some interval
    of length at most delta, over the uniform-plus-breakpoints grid.

    A triple x < z < y violates monotonicity only when f(z) differs from
    both f(x) and f(y) by more than eps in the same direction, so float
    noise below eps never counts as a genuine peak or pit.
    """
    if not delta > 0:
        raise ValueError("delta must be positive")
    nodes = grid_nodes(f, step)
    vals = np.array([f.evaluate(float(x)) for x in nodes])
    for v in (vals, -vals):
        left = _nearest_below(v, eps)
        right = _nearest_below(v[::-1], eps)
        right = np.where(right >= 0, v.size - 1 - right, -1)[::-1]
        ok = (left >= 0) & (right >= 0)
        zs = np.nonzero(ok)[0]
        if zs.size and (nodes[right[zs]] - nodes[left[zs]] <= delta).any():
            return False
    return True


def brute_windowed_min(s: DiscreteSignal, back: int, fwd: int) -> DiscreteSignal:
    v = s.values
    out = np.array(
        [v[max(0, i - back): i + fwd + 1].min() for i in range(v.size)]
    )
    return DiscreteSignal(out, spacing=s.spacing, origin=s.origin)


def brute_windowed_max(s: DiscreteSignal, back: int, fwd: int) -> DiscreteSignal:
    v = s.values
    out = np.array(
        [v[max(0, i - back): i + fwd + 1].max() for i in range(v.size)]
    )
    return DiscreteSignal(out, spacing=s.spacing, origin=s.origin)
