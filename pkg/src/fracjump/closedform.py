r"""Closed-form Jumarie derivatives of piecewise polynomials.

The left derivative of a continuous piecewise polynomial with first segment
:math:`p_0` and knot jumps :math:`\Delta_k^{(j)}` is, for :math:`x` past the
knots :math:`k \le x`,

.. math::

    f_L^{(\alpha)}(x) = \sum_{j \ge 1} \frac{p_0^{(j)}(a)}{\Gamma(j + 1 - \alpha)}
        (x - a)^{j - \alpha}
      + \sum_{k \le x} \sum_{j \ge 1}
        \frac{\Delta_k^{(j)}}{\Gamma(j + 1 - \alpha)} (x - k)^{j - \alpha},

which follows from the Taylor expansion of :math:`f(\xi) - f(a)` around
:math:`a` and each knot, together with the power rule. The right derivative
is the mirror image anchored at :math:`b`, with the sign convention under
which a function with positive slope has a positive right derivative.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any

from .piecewise import MAX_DEGREE, PiecewiseFunction, derivative_jump
from .specialfn import gamma


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class Role(enum.Enum):
    DERIVATIVE = "derivative"
    INTEGRAL = "integral"


@dataclass(frozen=True)
class FractionalOrder:
    """Order ``alpha`` tagged with its role.

    Derivatives need ``0 < alpha < 1``; integrals use the negative-order
    convention and need ``alpha < 0``.
    """

    alpha: float
    role: Role = Role.DERIVATIVE

    def __post_init__(self) -> None:
        a = self.alpha
        if self.role is Role.DERIVATIVE and not 0.0 < a < 1.0:
            raise ValueError(f"derivative order must lie in (0, 1), got {a!r}")
        if self.role is Role.INTEGRAL and not a < 0.0:
            raise ValueError(f"integral order must be negative, got {a!r}")


def _as_order(order: FractionalOrder | float) -> FractionalOrder:
    if isinstance(order, FractionalOrder):
        if order.role is not Role.DERIVATIVE:
            raise ValueError("closed forms need a derivative order")
        return order
    return FractionalOrder(float(order))


@dataclass(frozen=True)
class Term:
    coefficient: float
    center: float
    exponent: float


@dataclass(frozen=True)
class Region:
    start: float
    stop: float
    terms: tuple[Term, ...]


@dataclass(frozen=True)
class FracExpression:
    """Piecewise sum of power terms, one region per inter-knot interval.

    For ``side == LEFT`` a term contributes ``c * (x - center)**p`` with
    ``center <= x``; for ``RIGHT`` it contributes ``c * (center - x)**p``
    with ``center >= x``.
    """

    side: Side
    alpha: float
    regions: tuple[Region, ...]

    @property
    def domain(self) -> tuple[float, float]:
        return self.regions[0].start, self.regions[-1].stop

    def region_index(self, x: float) -> int:
        for i, r in enumerate(self.regions):
            if x <= r.stop:
                return i
        return len(self.regions) - 1

    def __call__(self, x: float) -> float:
        return eval_expression(self, x)

    def to_json(self) -> dict[str, Any]:
        return {
            "side": self.side.value,
            "alpha": self.alpha,
            "regions": [
                {
                    "from": r.start,
                    "to": r.stop,
                    "terms": [
                        {"c": t.coefficient, "center": t.center, "exp": t.exponent}
                        for t in r.terms
                        if t.coefficient != 0.0
                    ],
                }
                for r in self.regions
            ],
        }


def power_rule(gamma_exp: float, alpha: float, a: float, t: float) -> float:
    r""":math:`\Gamma(\gamma+1)/\Gamma(\gamma+1-\alpha)\,(t-a)^{\gamma-\alpha}`.

    Positive ``alpha`` differentiates, negative ``alpha`` integrates.
    """
    if not gamma_exp > -1.0:
        raise ValueError(f"exponent must exceed -1, got {gamma_exp!r}")
    if not gamma_exp + 1.0 - alpha > 0.0:
        raise ValueError("gamma_exp + 1 - alpha must be positive")
    if not t > a:
        raise ValueError("t must exceed a")
    return gamma(gamma_exp + 1.0) / gamma(gamma_exp + 1.0 - alpha) * (t - a) ** (
        gamma_exp - alpha
    )


def _jump_terms(f: PiecewiseFunction, knot_index: int, alpha: float, sign_by_j):
    k = f.knots[knot_index]
    return [
        Term(
            sign_by_j(j) * derivative_jump(f, knot_index, j) / gamma(j + 1 - alpha),
            k,
            j - alpha,
        )
        for j in range(1, MAX_DEGREE + 1)
    ]


def jumarie_left_closed(
    f: PiecewiseFunction, order: FractionalOrder | float
) -> FracExpression:
    """Left Jumarie derivative of ``f`` by knot-jump expansion."""
    alpha = _as_order(order).alpha
    a = f.a
    anchor = [
        Term(f.derivative(a, j, side="right") / gamma(j + 1 - alpha), a, j - alpha)
        for j in range(1, MAX_DEGREE + 1)
    ]

    bps = f.breakpoints
    regions = []
    terms = list(anchor)
    for i in range(len(f.segments)):
        if i > 0:
            terms += _jump_terms(f, i - 1, alpha, lambda j: 1.0)
        regions.append(Region(bps[i], bps[i + 1], tuple(terms)))
    return FracExpression(Side.LEFT, alpha, tuple(regions))


def jumarie_right_closed(
    f: PiecewiseFunction, order: FractionalOrder | float
) -> FracExpression:
    """Right Jumarie derivative of ``f``, mirrored from the right endpoint.

    A last segment ``q`` contributes ``(-1)**(j+1) q^(j)(b) / Gamma(j+1-alpha)``
    on ``(b - x)**(j - alpha)``; a knot ``k`` to the right of ``x`` contributes
    ``(-1)**j * jump_j / Gamma(j+1-alpha)`` on ``(k - x)**(j - alpha)``.
    """
    alpha = _as_order(order).alpha
    b = f.b
    anchor = [
        Term(
            (-1.0) ** (j + 1) * f.derivative(b, j, side="left") / gamma(j + 1 - alpha),
            b,
            j - alpha,
        )
        for j in range(1, MAX_DEGREE + 1)
    ]

    bps = f.breakpoints
    n = len(f.segments)
    regions = [None] * n
    terms = list(anchor)
    for i in reversed(range(n)):
        if i < n - 1:
            terms += _jump_terms(f, i, alpha, lambda j: (-1.0) ** j)
        regions[i] = Region(bps[i], bps[i + 1], tuple(terms))
    return FracExpression(Side.RIGHT, alpha, tuple(regions))


def canonical_terms(region: Region, tol: float = 0.0) -> list[Term]:
    """Terms of ``region`` with like terms merged and zeros dropped.

    Terms sharing a center and exponent are summed; the result is sorted by
    ``(center, exponent)`` so two regions can be compared term for term.
    """
    merged: dict[tuple[float, float], float] = {}
    for t in region.terms:
        key = (t.center, t.exponent)
        merged[key] = merged.get(key, 0.0) + t.coefficient
    return [
        Term(c, center, p)
        for (center, p), c in sorted(merged.items())
        if abs(c) > tol
    ]


def eval_expression(e: FracExpression, x: float) -> float:
    """Evaluate the region of ``e`` containing ``x``."""
    lo, hi = e.domain
    if not lo <= x <= hi:
        raise ValueError(f"x={x} outside expression domain [{lo}, {hi}]")
    region = e.regions[e.region_index(x)]
    total = 0.0
    if e.side is Side.LEFT:
        for t in region.terms:
            if t.coefficient:
                total += t.coefficient * max(x - t.center, 0.0) ** t.exponent
    else:
        for t in region.terms:
            if t.coefficient:
                total += t.coefficient * max(t.center - x, 0.0) ** t.exponent
    return total


def jumarie_closed(
    f: PiecewiseFunction, order: FractionalOrder | float, side: Side | str
) -> FracExpression:
    side = Side(side)
    if side is Side.LEFT:
        return jumarie_left_closed(f, order)
    return jumarie_right_closed(f, order)


__all__ = [
    "FracExpression",
    "FractionalOrder",
    "canonical_terms",
    "Region",
    "Role",
    "Side",
    "Term",
    "eval_expression",
    "jumarie_closed",
    "jumarie_left_closed",
    "jumarie_right_closed",
    "power_rule",
]
