"""The smoothing operators L and U, their compositions, and the 4-element
semigroup they generate.

L removes upward peaks narrower than the smoothing width, U removes downward
pits.  Every finite composition of L and U at a fixed width collapses to one
of the four operators {L, U, UL, LU}; ``canonicalize`` performs that collapse
symbolically while ``apply_pipeline`` applies the letters numerically, so the
agreement of the two is a testable theorem rather than an implementation
shortcut.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import DiscreteSignal, PiecewiseLinearFunction
from .envelopes import lower_envelope, upper_envelope, windowed_max, windowed_min

__all__ = [
    "OperatorExpr",
    "CanonicalOperator",
    "apply_L",
    "apply_U",
    "apply_L_discrete",
    "apply_U_discrete",
    "apply_pipeline",
    "apply_canonical",
    "canonicalize",
    "semigroup_compare",
    "CANONICAL_WORDS",
]

CANONICAL_WORDS = ("L", "UL", "LU", "U")

# position in the pointwise order: L <= UL <= LU <= U
_ORDER = {"L": 0, "UL": 1, "LU": 2, "U": 3}

# result of composing row after column (row ∘ col)
_COMPOSE = {
    ("L", "L"): "L",
    ("L", "U"): "LU",
    ("L", "UL"): "UL",
    ("L", "LU"): "LU",
    ("U", "L"): "UL",
    ("U", "U"): "U",
    ("U", "UL"): "UL",
    ("U", "LU"): "LU",
    ("UL", "L"): "UL",
    ("UL", "U"): "LU",
    ("UL", "UL"): "UL",
    ("UL", "LU"): "LU",
    ("LU", "L"): "UL",
    ("LU", "U"): "LU",
    ("LU", "UL"): "UL",
    ("LU", "LU"): "LU",
}


@dataclass(frozen=True)
class OperatorExpr:
    """A composition word over {L, U}, read left-to-right as outermost-first
    (so "LU" means L ∘ U), applied at a single smoothing width delta."""

    word: str
    delta: float

    def __post_init__(self) -> None:
        if not self.word:
            raise ValueError("operator word must be nonempty")
        bad = set(self.word) - {"L", "U"}
        if bad:
            raise ValueError(f"operator word may only contain L and U, got {sorted(bad)}")
        if not self.delta > 0:
            raise ValueError("delta must be positive")


@dataclass(frozen=True)
class CanonicalOperator:
    """One of the four semigroup elements {L, U, UL, LU} at a fixed delta."""

    kind: str
    delta: float

    def __post_init__(self) -> None:
        if self.kind not in CANONICAL_WORDS:
            raise ValueError(f"kind must be one of {CANONICAL_WORDS}")
        if not self.delta > 0:
            raise ValueError("delta must be positive")


def _check_delta(delta: float) -> None:
    if not delta > 0:
        raise ValueError("delta must be positive")


def apply_L(
    f: PiecewiseLinearFunction, delta: float, align=None
) -> PiecewiseLinearFunction:
    """Peak remover: windowed infimum at radius delta/2 followed by the
    windowed supremum at the same radius.  Result <= f pointwise.

    Both envelope passes pin derived breakpoints to ``align`` (defaulting to
    the breakpoints of f) so the output's jumps stay bitwise aligned with the
    input's; see :func:`lulukit.envelopes.lower_envelope`.
    """
    _check_delta(delta)
    r = 0.5 * delta
    if align is None:
        align = f.xs
    return upper_envelope(lower_envelope(f, r, align=align), r, align=align)


def apply_U(
    f: PiecewiseLinearFunction, delta: float, align=None
) -> PiecewiseLinearFunction:
    """Pit remover, the dual of :func:`apply_L`.  Result >= f pointwise."""
    _check_delta(delta)
    r = 0.5 * delta
    if align is None:
        align = f.xs
    return lower_envelope(upper_envelope(f, r, align=align), r, align=align)


def apply_L_discrete(s: DiscreteSignal, n: int) -> DiscreteSignal:
    """Discrete peak remover: running min over [i, i+n], then running max
    over [i-n, i], windows clipped at the ends."""
    if n < 1 or int(n) != n:
        raise ValueError("n must be a positive integer")
    return windowed_max(windowed_min(s, 0, n), n, 0)


def apply_U_discrete(s: DiscreteSignal, n: int) -> DiscreteSignal:
    """Discrete pit remover, dual of :func:`apply_L_discrete`."""
    if n < 1 or int(n) != n:
        raise ValueError("n must be a positive integer")
    return windowed_min(windowed_max(s, 0, n), n, 0)


def apply_pipeline(e: OperatorExpr, f: PiecewiseLinearFunction) -> PiecewiseLinearFunction:
    """Apply the word letter by letter, innermost (rightmost) first.

    All letters share the original function's breakpoints as the alignment
    grid, keeping the jumps of every intermediate pinned to the jumps of f.
    """
    out = f
    for letter in reversed(e.word):
        if letter == "L":
            out = apply_L(out, e.delta, align=f.xs)
        else:
            out = apply_U(out, e.delta, align=f.xs)
    return out


def apply_canonical(op: CanonicalOperator, f: PiecewiseLinearFunction) -> PiecewiseLinearFunction:
    return apply_pipeline(OperatorExpr(op.kind, op.delta), f)


def canonicalize(e: OperatorExpr) -> CanonicalOperator:
    """Collapse the word to one of {L, U, UL, LU} by the composition table."""
    letters = list(e.word)
    acc = letters.pop()
    while letters:
        acc = _COMPOSE[(letters.pop(), acc)]
    return CanonicalOperator(acc, e.delta)


def semigroup_compare(a: CanonicalOperator, b: CanonicalOperator) -> int:
    """-1, 0 or 1 per the pointwise order L <= UL <= LU <= U.

    Requires equal deltas; the chain is only valid at a fixed width.
    """
    if a.delta != b.delta:
        raise ValueError("operators must share the same delta")
    pa, pb = _ORDER[a.kind], _ORDER[b.kind]
    return (pa > pb) - (pa < pb)
