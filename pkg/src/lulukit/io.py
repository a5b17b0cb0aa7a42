"""Serialization of functions (JSON) and signals (CSV).

JSON function format::

    {"domain": [lo, hi],
     "breakpoints": [{"x": ..., "value": ..., "right_limit": ..., "left_limit": ...}, ...]}

right_limit is the limit entering the following segment; every non-first
breakpoint may carry left_limit.  Omitted limits default to the point value
(continuity).

CSV signal format: one value per row, optional header, optional second column
holding x positions (which must be uniformly spaced if present).
"""

from __future__ import annotations

import csv
import io as _io
import json

import numpy as np

from .core import DiscreteSignal, Domain, PiecewiseLinearFunction

__all__ = [
    "ParseError",
    "function_from_json",
    "function_to_json",
    "signal_from_csv",
    "signal_to_csv",
    "load_function",
    "dump_function",
    "load_signal",
    "dump_signal",
]


class ParseError(ValueError):
    """Raised for malformed input documents."""


def function_from_json(obj) -> PiecewiseLinearFunction:
    if isinstance(obj, (str, bytes)):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e}") from e
    if not isinstance(obj, dict):
        raise ParseError("function document must be a JSON object")
    try:
        lo, hi = (float(v) for v in obj["domain"])
        bps = obj["breakpoints"]
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"missing or malformed field: {e}") from e
    if not isinstance(bps, list) or len(bps) < 2:
        raise ParseError("breakpoints must be a list with at least two entries")
    def limit(b, key):
        v = b.get(key)
        return b["value"] if v is None else v

    try:
        xs = [float(b["x"]) for b in bps]
        vals = [float(b["value"]) for b in bps]
        ss = [float(limit(b, "right_limit")) for b in bps[:-1]]
        se = [float(limit(b, "left_limit")) for b in bps[1:]]
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed breakpoint: {e}") from e
    try:
        return PiecewiseLinearFunction(Domain(lo, hi), xs, vals, ss, se)
    except ValueError as e:
        raise ParseError(str(e)) from e


def function_to_json(f: PiecewiseLinearFunction) -> dict:
    bps = []
    n = f.xs.size
    for i in range(n):
        b = {"x": float(f.xs[i]), "value": float(f.values[i])}
        if i < n - 1 and f.seg_start[i] != f.values[i]:
            b["right_limit"] = float(f.seg_start[i])
        if i > 0 and f.seg_end[i - 1] != f.values[i]:
            b["left_limit"] = float(f.seg_end[i - 1])
        bps.append(b)
    return {"domain": [f.domain.lo, f.domain.hi], "breakpoints": bps}


def _parse_float(tok: str):
    try:
        return float(tok)
    except ValueError:
        return None


def signal_from_csv(text: str) -> DiscreteSignal:
    rows = [r for r in csv.reader(_io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise ParseError("empty signal file")
    start = 0
    if _parse_float(rows[0][0].strip()) is None:
        start = 1  # header row
    if start >= len(rows):
        raise ParseError("signal file has a header but no data")
    vals = []
    xs = []
    ncol = None
    for r in rows[start:]:
        cells = [c.strip() for c in r if c.strip()]
        if ncol is None:
            ncol = len(cells)
            if ncol not in (1, 2):
                raise ParseError("signal rows must have one or two columns")
        if len(cells) != ncol:
            raise ParseError("inconsistent column count in signal file")
        v = _parse_float(cells[0])
        if v is None:
            raise ParseError(f"not a number: {cells[0]!r}")
        vals.append(v)
        if ncol == 2:
            x = _parse_float(cells[1])
            if x is None:
                raise ParseError(f"not a number: {cells[1]!r}")
            xs.append(x)
    spacing = origin = None
    if xs:
        if len(xs) >= 2:
            d = np.diff(xs)
            if d.min() <= 0 or (np.abs(d - d[0]) > 1e-9 * max(1.0, abs(d[0]))).any():
                raise ParseError("x column must be strictly increasing and uniform")
            spacing = float(d[0])
        origin = float(xs[0])
    try:
        return DiscreteSignal(np.array(vals), spacing=spacing, origin=origin)
    except ValueError as e:
        raise ParseError(str(e)) from e


def signal_to_csv(s: DiscreteSignal) -> str:
    out = _io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    if s.spacing is not None and s.origin is not None:
        w.writerow(["value", "x"])
        for i, v in enumerate(s.values):
            w.writerow([repr(float(v)), repr(float(s.origin + i * s.spacing))])
    else:
        w.writerow(["value"])
        for v in s.values:
            w.writerow([repr(float(v))])
    return out.getvalue()


def load_function(path: str) -> PiecewiseLinearFunction:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return function_from_json(fh.read())
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e


def dump_function(f: PiecewiseLinearFunction, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(function_to_json(f), fh, indent=2)
        fh.write("\n")


def load_signal(path: str) -> DiscreteSignal:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return signal_from_csv(fh.read())
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e


def dump_signal(s: DiscreteSignal, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(signal_to_csv(s))
