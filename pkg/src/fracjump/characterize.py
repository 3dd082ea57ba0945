"""Locate kinks of a piecewise function and measure them.

A kink (a continuous but non-differentiable point) is quantified by the
left and right Jumarie derivatives evaluated there; their difference
``left - right`` is the indicator. It vanishes at points where the function
is differentiable and grows with the size of the kink.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from . import numeric
from .closedform import eval_expression, jumarie_left_closed, jumarie_right_closed
from .piecewise import PiecewiseFunction, SampleSeries, derivative_jump, from_samples

DEFAULT_ALPHA = 0.5
DEFAULT_SLOPE_TOLERANCE = 1e-9
#: Offset, as a fraction of the domain length, of the first sample used by
#: the numeric engines when extrapolating a one-sided limit at a knot.
EXTRAPOLATION_OFFSET = 0.02

CONVENTION = "indicator = left - right"


@dataclass(frozen=True)
class KnotFinding:
    x: float
    slope_jump: float
    left_value: float
    right_value: float
    indicator: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "indicator", self.left_value - self.right_value)

    @property
    def magnitude(self) -> float:
        return abs(self.indicator)

    def scaled(self, c: float) -> KnotFinding:
        return KnotFinding(self.x, c * self.slope_jump, c * self.left_value,
                           c * self.right_value)


@dataclass(frozen=True)
class TransitionReport:
    alpha: float
    source: str
    findings: tuple[KnotFinding, ...]
    engine: str = "closed-form"

    def __post_init__(self) -> None:
        xs = [f.x for f in self.findings]
        if any(x1 >= x2 for x1, x2 in zip(xs, xs[1:])):
            raise ValueError("findings must be strictly ordered by x")

    def to_json(self) -> dict[str, Any]:
        return {
            "alpha": fmt_number(self.alpha),
            "source": self.source,
            "engine": self.engine,
            "convention": CONVENTION,
            "findings": [
                {
                    "x": fmt_number(f.x),
                    "slope_jump": fmt_number(f.slope_jump),
                    "left": fmt_number(f.left_value),
                    "right": fmt_number(f.right_value),
                    "indicator": fmt_number(f.indicator),
                    "magnitude": fmt_number(f.magnitude),
                }
                for f in self.findings
            ],
        }


def fmt_number(v: float) -> float:
    """Round to 10 significant digits; normalises ``-0.0`` to ``0.0``."""
    r = float(f"{v:.10g}")
    return 0.0 if r == 0 else r


def default_threshold(f: PiecewiseFunction) -> float:
    slopes = [
        abs(f.derivative(x, 1, side=side))
        for x in f.breakpoints
        for side in ("left", "right")
    ]
    return 1e-6 * max(slopes)


def detect_knots(f: PiecewiseFunction, threshold: float | None = None) -> list[float]:
    """Knots where the first derivative jumps by more than ``threshold``."""
    if threshold is None:
        threshold = default_threshold(f)
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    return [
        k for i, k in enumerate(f.knots) if abs(derivative_jump(f, i, 1)) > threshold
    ]


def _knot_index(f: PiecewiseFunction, x: float) -> int:
    tol = 1e-12 * (f.b - f.a)
    for i, k in enumerate(f.knots):
        if abs(k - x) <= tol:
            return i
    raise ValueError(f"{x} is not a knot of the function")


def phase_indicator(f: PiecewiseFunction, alpha: float, x: float) -> KnotFinding:
    """Closed-form left/right Jumarie derivatives at the knot ``x``."""
    i = _knot_index(f, x)
    k = f.knots[i]
    left = eval_expression(jumarie_left_closed(f, alpha), k)
    right = eval_expression(jumarie_right_closed(f, alpha), k)
    return KnotFinding(k, derivative_jump(f, i, 1), left, right)


def _one_sided_limit(engine, k: float, step: float, lo: float, hi: float) -> float:
    x1, x2 = k + step, k + 2 * step
    if not (lo < min(x1, x2) and max(x1, x2) < hi):
        raise ValueError("extrapolation points leave the smooth region at the knot")
    v1, v2 = engine(x1), engine(x2)
    return 2.0 * v1 - v2


def numeric_knot_values(
    f: PiecewiseFunction,
    alpha: float,
    x: float,
    *,
    method: str = "quad",
    spec: numeric.QuadSpec = numeric.DEFAULT_QUAD,
    h: float = 1e-4,
) -> tuple[float, float]:
    """Left and right derivative at a knot from a numeric engine.

    The engines cannot be evaluated straight at a knot, so each one-sided
    value is linearly extrapolated from points at ``k -/+ d`` and
    ``k -/+ 2d`` with ``d = EXTRAPOLATION_OFFSET * (b - a)``.
    ``method`` is ``"quad"`` or ``"gl"``.
    """
    i = _knot_index(f, x)
    k = f.knots[i]
    bps = f.breakpoints
    d = EXTRAPOLATION_OFFSET * (f.b - f.a)

    if method == "quad":
        def left(t):
            return numeric.jumarie_left_numeric(f, alpha, t, spec=spec)

        def right(t):
            return numeric.jumarie_right_numeric(f, alpha, t, spec=spec)
    elif method == "gl":
        def left(t):
            return numeric.gl_derivative(f, alpha, f.a, t, h)

        def right(t):
            return numeric.gl_right_derivative(f, alpha, t, f.b, h)
    else:
        raise ValueError(f"unknown numeric method {method!r}")

    lv = _one_sided_limit(left, k, -d, bps[i], bps[i + 1])
    rv = _one_sided_limit(right, k, d, bps[i + 1], bps[i + 2])
    return lv, rv


def characterize_function(
    f: PiecewiseFunction,
    alpha: float = DEFAULT_ALPHA,
    threshold: float | None = None,
    *,
    source: str = "piecewise function",
    engine: str = "closed-form",
    spec: numeric.QuadSpec = numeric.DEFAULT_QUAD,
) -> TransitionReport:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    findings = []
    for k in detect_knots(f, threshold):
        if engine == "closed-form":
            findings.append(phase_indicator(f, alpha, k))
        elif engine == "numeric":
            lv, rv = numeric_knot_values(f, alpha, k, spec=spec)
            jump = derivative_jump(f, _knot_index(f, k), 1)
            findings.append(KnotFinding(k, jump, lv, rv))
        else:
            raise ValueError(f"unknown engine {engine!r}")
    return TransitionReport(alpha, source, tuple(findings), engine)


def characterize_signal(
    s: SampleSeries,
    alpha: float = DEFAULT_ALPHA,
    threshold: float | None = None,
    slope_tolerance: float = DEFAULT_SLOPE_TOLERANCE,
    *,
    source: str | None = None,
) -> TransitionReport:
    """Fit ``s`` piecewise-linearly and report every detected kink."""
    f = from_samples(s, slope_tolerance)
    if source is None:
        source = f"signal with {len(s)} samples on [{s.x[0]:g}, {s.x[-1]:g}]"
    return characterize_function(f, alpha, threshold, source=source)


__all__ = [
    "KnotFinding",
    "TransitionReport",
    "characterize_function",
    "characterize_signal",
    "detect_knots",
    "numeric_knot_values",
    "phase_indicator",
]
