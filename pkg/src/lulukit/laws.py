"""Executable statements of the smoother algebra, run against a concrete
function.

Each law produces named checks with a violation magnitude; a check passes
when its violation is at most eps.  Equalities and inequalities between
functions are compared with a small horizontal slack (xtol) so that jump
breakpoints whose shifted coordinates round to neighbouring floats are not
reported as order-one failures; see :func:`lulukit.core.violation_above`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    PiecewiseLinearFunction,
    Tolerance,
    jump_tolerant_distance,
    violation_above,
)
from .envelopes import lower_envelope, upper_envelope
from .semigroup import OperatorExpr, apply_L, apply_U
from .variation import (
    check_trend_preservation,
    is_locally_delta_monotone,
    monotone_runs,
    tv_decomposition,
)

__all__ = ["LawReport", "LAW_NAMES", "run_laws"]

LAW_NAMES = (
    "bounding",
    "delta_monotonicity",
    "absorption",
    "idempotence",
    "envelope_algebra",
    "ordering",
    "regularity",
    "trend",
    "tv",
)

DEFAULT_XTOL = 1e-12


@dataclass
class LawReport:
    name: str
    ok: bool
    worst: float
    checks: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "worst": self.worst,
            "checks": [{"check": c, "violation": v} for c, v in self.checks],
        }


class _Ctx:
    """Caches operator applications for one (f, delta) pair."""

    def __init__(self, f: PiecewiseLinearFunction, delta: float, xtol: float):
        self.f = f
        self.delta = delta
        self.xtol = xtol
        self._cache: dict = {}

    def op(self, word: str, delta: float | None = None):
        d = self.delta if delta is None else delta
        key = (word, d)
        if key not in self._cache:
            out = self.f
            for letter in reversed(word):
                out = apply_L(out, d) if letter == "L" else apply_U(out, d)
            self._cache[key] = out
        return self._cache[key]

    def leq(self, a, b):
        return violation_above(a, b, self.xtol)

    def eq(self, a, b):
        return jump_tolerant_distance(a, b, self.xtol)


def _law_bounding(ctx: _Ctx):
    f = ctx.f
    return [
        ("L(f) <= f", ctx.leq(ctx.op("L"), f)),
        ("f <= U(f)", ctx.leq(f, ctx.op("U"))),
    ]


def _law_delta_monotonicity(ctx: _Ctx, aux_delta: float):
    d1, d2 = sorted((ctx.delta, aux_delta))
    return [
        ("L shrinks with delta", ctx.leq(ctx.op("L", d2), ctx.op("L", d1))),
        ("U grows with delta", ctx.leq(ctx.op("U", d1), ctx.op("U", d2))),
    ]


def _law_absorption(ctx: _Ctx, aux_delta: float):
    f = ctx.f
    d1, d2 = ctx.delta, aux_delta
    dmax = max(d1, d2)
    checks = []
    checks.append(
        ("L_d1 L_d2 = L_max", ctx.eq(apply_L(apply_L(f, d2), d1), ctx.op("L", dmax)))
    )
    checks.append(
        ("L_d2 L_d1 = L_max", ctx.eq(apply_L(apply_L(f, d1), d2), ctx.op("L", dmax)))
    )
    checks.append(
        ("U_d1 U_d2 = U_max", ctx.eq(apply_U(apply_U(f, d2), d1), ctx.op("U", dmax)))
    )
    return checks


def _law_idempotence(ctx: _Ctx):
    f = ctx.f
    zero = PiecewiseLinearFunction.constant(f.domain, 0.0)
    Lf, Uf = ctx.op("L"), ctx.op("U")
    checks = [
        ("L L = L", ctx.eq(apply_L(Lf, ctx.delta), Lf)),
        ("U U = U", ctx.eq(apply_U(Uf, ctx.delta), Uf)),
        ("L (id - L) = 0", ctx.eq(apply_L(f - Lf, ctx.delta), zero)),
        ("U (id - U) = 0", ctx.eq(apply_U(f - Uf, ctx.delta), zero)),
        ("(LU)(LU) = LU", ctx.eq(ctx.op("LULU"), ctx.op("LU"))),
        ("(UL)(UL) = UL", ctx.eq(ctx.op("ULUL"), ctx.op("UL"))),
    ]
    return checks


def _law_envelope_algebra(ctx: _Ctx, aux_delta: float):
    f = ctx.f
    r = 0.5 * ctx.delta
    r2 = 0.5 * aux_delta
    I = lower_envelope(f, r)
    S = upper_envelope(f, r)
    return [
        ("I S I = I", ctx.eq(lower_envelope(upper_envelope(I, r), r), I)),
        ("S I S = S", ctx.eq(upper_envelope(lower_envelope(S, r), r), S)),
        (
            "I_r1 I_r2 = I_(r1+r2)",
            ctx.eq(lower_envelope(lower_envelope(f, r2), r), lower_envelope(f, r + r2)),
        ),
        (
            "S_r1 S_r2 = S_(r1+r2)",
            ctx.eq(upper_envelope(upper_envelope(f, r2), r), upper_envelope(f, r + r2)),
        ),
    ]


def _law_ordering(ctx: _Ctx):
    return [
        ("L <= UL", ctx.leq(ctx.op("L"), ctx.op("UL"))),
        ("UL <= LU", ctx.leq(ctx.op("UL"), ctx.op("LU"))),
        ("LU <= U", ctx.leq(ctx.op("LU"), ctx.op("U"))),
        ("ULU = LU", ctx.eq(ctx.op("ULU"), ctx.op("LU"))),
        ("LUL = UL", ctx.eq(ctx.op("LUL"), ctx.op("UL"))),
    ]


def _law_regularity(ctx: _Ctx):
    checks = []
    for word in ("LU", "UL"):
        ok, _ = is_locally_delta_monotone(ctx.op(word), ctx.delta, eps=ctx.xtol)
        checks.append((f"{word}(f) locally delta-monotone", 0.0 if ok else 1.0))
    return checks


def _law_trend(ctx: _Ctx, max_runs: int = 4):
    f = ctx.f
    runs = [(a, b, d) for a, b, d in monotone_runs(f) if b > a]
    runs.sort(key=lambda t: t[0] - t[1])
    checks = []
    for a, b, _ in runs[:max_runs]:
        for word in ("L", "U", "UL", "LU"):
            ok, _ = check_trend_preservation(
                f, OperatorExpr(word, ctx.delta), (a, b), eps=ctx.xtol
            )
            checks.append((f"{word} trend on [{a:.4g}, {b:.4g}]", 0.0 if ok else 1.0))
    return checks


def _law_tv(ctx: _Ctx):
    checks = []
    for word in ("L", "U", "UL", "LU"):
        rep = tv_decomposition(ctx.f, OperatorExpr(word, ctx.delta))
        checks.append((f"TV preservation of {word}", abs(rep.defect)))
    return checks


def run_laws(
    f: PiecewiseLinearFunction,
    delta: float,
    laws=None,
    eps: float = Tolerance().eps,
    xtol: float = DEFAULT_XTOL,
    aux_delta: float | None = None,
) -> tuple[bool, list[LawReport]]:
    """Run the selected law checks on f at smoothing width delta.

    aux_delta is the second width used by the two-parameter laws; it defaults
    to half of delta.  Returns overall success plus one report per law.
    """
    if laws is None:
        laws = LAW_NAMES
    unknown = set(laws) - set(LAW_NAMES)
    if unknown:
        raise ValueError(f"unknown laws: {sorted(unknown)}")
    if aux_delta is None:
        aux_delta = 0.5 * delta
    ctx = _Ctx(f, delta, xtol)
    table = {
        "bounding": lambda: _law_bounding(ctx),
        "delta_monotonicity": lambda: _law_delta_monotonicity(ctx, aux_delta),
        "absorption": lambda: _law_absorption(ctx, aux_delta),
        "idempotence": lambda: _law_idempotence(ctx),
        "envelope_algebra": lambda: _law_envelope_algebra(ctx, aux_delta),
        "ordering": lambda: _law_ordering(ctx),
        "regularity": lambda: _law_regularity(ctx),
        "trend": lambda: _law_trend(ctx),
        "tv": lambda: _law_tv(ctx),
    }
    reports = []
    all_ok = True
    for name in LAW_NAMES:
        if name not in laws:
            continue
        checks = table[name]()
        worst = max((v for _, v in checks), default=0.0)
        ok = worst <= eps
        all_ok = all_ok and ok
        reports.append(LawReport(name, ok, worst, checks))
    return all_ok, reports
