"""Direct SVG emitter for before/after smoothing figures.

No plotting dependency: a fixed viewBox with two polyline layers, the input
drawn dotted and the smoothed output solid, plus a CSV dump of both curves.
"""

from __future__ import annotations

import io as _io
import csv

import numpy as np

from .core import PiecewiseLinearFunction

__all__ = ["overlay_svg", "curves_csv", "sample_curve"]

_W, _H, _PAD = 800, 400, 40


def sample_curve(f: PiecewiseLinearFunction, samples: int = 1000) -> tuple[np.ndarray, np.ndarray]:
    """Sample positions and values, the positions merged with breakpoints so
    jumps stay visually sharp."""
    lo, hi = f.domain.lo, f.domain.hi
    xs = np.unique(np.concatenate([np.linspace(lo, hi, samples), f.xs]))
    ys = np.array([f.evaluate(float(x)) for x in xs])
    return xs, ys


def _polyline(xs, ys, x0, x1, y0, y1):
    sx = (_W - 2 * _PAD) / (x1 - x0)
    sy = (_H - 2 * _PAD) / (y1 - y0) if y1 > y0 else 1.0
    pts = " ".join(
        f"{_PAD + (x - x0) * sx:.2f},{_H - _PAD - (y - y0) * sy:.2f}"
        for x, y in zip(xs, ys)
    )
    return pts


def overlay_svg(
    f: PiecewiseLinearFunction, g: PiecewiseLinearFunction, samples: int = 1000
) -> str:
    xf, yf = sample_curve(f, samples)
    xg, yg = sample_curve(g, samples)
    x0, x1 = f.domain.lo, f.domain.hi
    y0 = float(min(yf.min(), yg.min()))
    y1 = float(max(yf.max(), yg.max()))
    if y1 == y0:
        y0, y1 = y0 - 1.0, y1 + 1.0
    p_in = _polyline(xf, yf, x0, x1, y0, y1)
    p_out = _polyline(xg, yg, x0, x1, y0, y1)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_W} {_H}">\n'
        f'  <rect width="{_W}" height="{_H}" fill="white"/>\n'
        f'  <polyline points="{p_in}" fill="none" stroke="#555" '
        f'stroke-width="1.5" stroke-dasharray="3 4"/>\n'
        f'  <polyline points="{p_out}" fill="none" stroke="#0a5" '
        f'stroke-width="2"/>\n'
        f"</svg>\n"
    )


def curves_csv(
    f: PiecewiseLinearFunction, g: PiecewiseLinearFunction, samples: int = 1000
) -> str:
    xs = np.linspace(f.domain.lo, f.domain.hi, samples)
    out = _io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["x", "input", "output"])
    for x in xs:
        w.writerow([repr(float(x)), repr(f.evaluate(float(x))), repr(g.evaluate(float(x)))])
    return out.getvalue()
