"""Numerical fractional derivative and integral engines.

These are deliberately independent of :mod:`fracjump.closedform` and are
used as oracles for it, as well as for arbitrary callables.

Weakly singular integrals ``int (x - xi)**(p - 1) g(xi) dxi`` with ``p > 0``
are computed after the substitution ``u = (x - xi)**p``, which turns the
kernel into the constant ``1/p``. The transformed integrand is integrated by
composite Gauss-Legendre, split at the function's breakpoints.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .piecewise import PiecewiseFunction
from .specialfn import gamma, gl_weights

Evaluatable = Callable[[np.ndarray], np.ndarray]

_GAUSS_ORDER = 8
_GL_MIN_STEPS = 32
_MAX_GRID_POINTS = 10**7


@dataclass(frozen=True)
class QuadSpec:
    """Quadrature settings.

    ``panels`` is the number of Gauss-Legendre panels per smooth region;
    ``diff_step`` is the central-difference step as a fraction of the
    domain length.
    """

    panels: int = 256
    diff_step: float = 1e-4

    def __post_init__(self) -> None:
        if self.panels < 16:
            raise ValueError(f"panels must be >= 16, got {self.panels}")
        if not 1e-8 <= self.diff_step <= 1e-2:
            raise ValueError(f"diff_step must lie in [1e-8, 1e-2], got {self.diff_step}")


DEFAULT_QUAD = QuadSpec()


@dataclass(frozen=True)
class GridSpec:
    """Grid ``start, start + step, ...`` not exceeding ``stop``."""

    start: float
    stop: float
    step: float

    def __post_init__(self) -> None:
        if not self.start < self.stop:
            raise ValueError("grid start must be below stop")
        if not self.step > 0:
            raise ValueError("grid step must be positive")
        if (self.stop - self.start) / self.step > _MAX_GRID_POINTS:
            raise ValueError("grid too large")

    @classmethod
    def parse(cls, text: str) -> GridSpec:
        """Parse ``"start:stop:step"``."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must look like start:stop:step, got {text!r}")
        try:
            start, stop, step = (float(p) for p in parts)
        except ValueError:
            raise ValueError(f"non-numeric grid {text!r}") from None
        return cls(start, stop, step)

    def points(self) -> np.ndarray:
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9))
        return self.start + self.step * np.arange(n + 1)


def _vectorized(f) -> Evaluatable:
    if isinstance(f, PiecewiseFunction):
        return f

    def call(x):
        x = np.asarray(x, dtype=float)
        try:
            out = np.asarray(f(x), dtype=float)
            if out.shape == x.shape:
                return out
        except (TypeError, ValueError):
            pass
        return np.array([float(f(v)) for v in x.ravel()]).reshape(x.shape)

    return call


def _knots_of(f) -> tuple[float, ...]:
    return f.knots if isinstance(f, PiecewiseFunction) else ()


@dataclass(frozen=True)
class _GaussPanels:
    nodes: np.ndarray
    weights: np.ndarray

    @classmethod
    def build(cls, order: int = _GAUSS_ORDER) -> _GaussPanels:
        x, w = np.polynomial.legendre.leggauss(order)
        return cls((x + 1.0) / 2.0, w / 2.0)


_GAUSS = _GaussPanels.build()


def _composite(breaks: np.ndarray, panels: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of composite Gauss on every ``[breaks[i], breaks[i+1]]``."""
    nodes, weights = [], []
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        if hi <= lo:
            continue
        edges = np.linspace(lo, hi, panels + 1)
        width = np.diff(edges)[:, None]
        nodes.append((edges[:-1, None] + width * _GAUSS.nodes).ravel())
        weights.append((width * _GAUSS.weights).ravel())
    if not nodes:
        return np.empty(0), np.empty(0)
    return np.concatenate(nodes), np.concatenate(weights)


def kernel_integral(
    g: Evaluatable,
    x: float,
    lo: float,
    hi: float,
    power: float,
    *,
    side: str = "left",
    breakpoints: Iterable[float] = (),
    panels: int = DEFAULT_QUAD.panels,
) -> float:
    """Integral with the weakly singular kernel ``|x - xi|**(power - 1)``.

    ``side="left"`` integrates over ``[lo, x]``, ``side="right"`` over
    ``[x, hi]``. ``power`` must be positive.
    """
    if not power > 0:
        raise ValueError("kernel power must be positive")
    if side == "left":
        length = x - lo
    else:
        length = hi - x
    if length <= 0:
        return 0.0

    inv = 1.0 / power
    # breakpoints inside the integration range, mapped to the u variable
    if side == "left":
        dist = [abs(x - k) for k in breakpoints if lo < k < x]
    else:
        dist = [abs(k - x) for k in breakpoints if x < k < hi]
    ubreaks = np.array(sorted({0.0, length**power, *(d**power for d in dist)}))
    u, w = _composite(ubreaks, panels)
    r = u**inv
    xi = x - r if side == "left" else x + r
    return float(np.dot(w, g(xi))) * inv


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")


def gl_derivative(f, alpha: float, a: float, t: float, h: float) -> float:
    r"""Grünwald-Letnikov approximation of the left Jumarie derivative.

    Returns :math:`h^{-\alpha}\sum_{r=0}^{n} w_r [f(t - rh) - f(a)]` with the
    step shrunk slightly so that ``n`` steps land exactly on ``a``.
    """
    _check_alpha(alpha)
    if not (t > a and h > 0):
        raise ValueError("need t > a and h > 0")
    n = int(round((t - a) / h))
    if n < _GL_MIN_STEPS:
        raise ValueError(f"(t - a)/h gives {n} steps, need at least {_GL_MIN_STEPS}")
    h = (t - a) / n
    fv = _vectorized(f)
    samples = fv(t - h * np.arange(n + 1)) - float(fv(np.array([a]))[0])
    w = gl_weights(alpha, n)
    return float(np.dot(w, samples)) * h ** (-alpha)


def gl_right_derivative(f, alpha: float, x: float, b: float, h: float) -> float:
    """Right Jumarie derivative by Grünwald-Letnikov on the reflected function.

    With ``g(y) = f(-y)`` the right derivative of ``f`` at ``x`` equals minus
    the left derivative of ``g`` at ``-x`` anchored at ``-b``.
    """
    fv = _vectorized(f)
    return -gl_derivative(lambda y: fv(-np.asarray(y)), alpha, -b, -x, h)


_STENCILS = {
    # offsets (in steps) and weights of second-order first-derivative rules
    "central": ((-1, 1), (-0.5, 0.5)),
    "forward": ((0, 1, 2), (-1.5, 2.0, -0.5)),
    "backward": ((-2, -1, 0), (0.5, -2.0, 1.5)),
}


def _stencil_reach(stencil: str, delta: float) -> tuple[float, float]:
    try:
        offsets = _STENCILS[stencil][0]
    except KeyError:
        raise ValueError(f"unknown stencil {stencil!r}") from None
    return min(offsets) * delta, max(offsets) * delta


def _auto_stencil(x: float, delta: float, avoid: Iterable[float], fallback: str) -> str:
    # the integral has a (x - k)**(2 - alpha) term at every knot k, so a
    # central difference across a knot loses accuracy
    return fallback if any(abs(x - p) < delta for p in avoid) else "central"


def _difference(F, x: float, delta: float, stencil: str) -> float:
    offsets, weights = _STENCILS[stencil]
    return sum(w * F(x + o * delta) for o, w in zip(offsets, weights)) / delta


def _resolve_b(f, b: float | None) -> float:
    if b is not None:
        return float(b)
    if isinstance(f, PiecewiseFunction):
        return f.b
    raise ValueError("b is required for callables without a domain")


def _resolve_a(f, a: float | None) -> float:
    if a is not None:
        return float(a)
    if isinstance(f, PiecewiseFunction):
        return f.a
    raise ValueError("a is required for callables without a domain")


def jumarie_left_numeric(
    f,
    alpha: float,
    x: float,
    a: float | None = None,
    spec: QuadSpec = DEFAULT_QUAD,
    *,
    b: float | None = None,
    breakpoints: Sequence[float] | None = None,
    stencil: str = "auto",
) -> float:
    """Left Jumarie derivative by quadrature and a finite difference.

    ``stencil`` is ``"central"``, ``"backward"`` or ``"forward"``
    (second-order rules). ``"auto"`` picks the central rule unless it would
    straddle a knot or step past ``b``, and the backward rule then.
    """
    _check_alpha(alpha)
    a = _resolve_a(f, a)
    b = _resolve_b(f, b)
    delta = spec.diff_step * (b - a)
    bps = _knots_of(f) if breakpoints is None else tuple(breakpoints)
    if stencil == "auto":
        stencil = _auto_stencil(x, delta, (b, *bps), "backward")
    reach = _stencil_reach(stencil, delta)
    if x + reach[0] <= a or x + reach[1] > b:
        raise ValueError(f"x={x} too close to the domain edge for diff step {delta}")

    fv = _vectorized(f)
    fa = float(fv(np.array([a]))[0])

    def offset(xi):
        return fv(xi) - fa

    def integral(y):
        return kernel_integral(
            offset, y, a, b, 1.0 - alpha, side="left",
            breakpoints=bps, panels=spec.panels,
        )

    return _difference(integral, x, delta, stencil) / gamma(1.0 - alpha)


def jumarie_right_numeric(
    f,
    alpha: float,
    x: float,
    b: float | None = None,
    spec: QuadSpec = DEFAULT_QUAD,
    *,
    a: float | None = None,
    breakpoints: Sequence[float] | None = None,
    stencil: str = "auto",
) -> float:
    """Right Jumarie derivative ``-(d/dx) I[f(b) - f](x) / Gamma(1 - alpha)``.

    ``stencil`` as for :func:`jumarie_left_numeric`; ``"auto"`` falls back
    to the forward rule near a knot or ``a``.
    """
    _check_alpha(alpha)
    a = _resolve_a(f, a)
    b = _resolve_b(f, b)
    delta = spec.diff_step * (b - a)
    bps = _knots_of(f) if breakpoints is None else tuple(breakpoints)
    if stencil == "auto":
        stencil = _auto_stencil(x, delta, (a, *bps), "forward")
    reach = _stencil_reach(stencil, delta)
    if x + reach[0] < a or x + reach[1] >= b:
        raise ValueError(f"x={x} too close to the domain edge for diff step {delta}")

    fv = _vectorized(f)
    fb = float(fv(np.array([b]))[0])

    def offset(xi):
        return fb - fv(xi)

    def integral(y):
        return kernel_integral(
            offset, y, a, b, 1.0 - alpha, side="right",
            breakpoints=bps, panels=spec.panels,
        )

    return -_difference(integral, x, delta, stencil) / gamma(1.0 - alpha)


def rl_integral(
    f,
    alpha: float,
    a: float,
    t: float,
    spec: QuadSpec = DEFAULT_QUAD,
    *,
    breakpoints: Sequence[float] | None = None,
) -> float:
    """Left Riemann-Liouville integral of order ``alpha > 0`` over ``[a, t]``."""
    if not alpha > 0:
        raise ValueError(f"integration order must be positive, got {alpha!r}")
    if not t > a:
        raise ValueError("need t > a")
    bps = _knots_of(f) if breakpoints is None else tuple(breakpoints)
    val = kernel_integral(_vectorized(f), t, a, t, alpha, side="left",
                          breakpoints=bps, panels=spec.panels)
    return val / gamma(alpha)


def rl_right_integral(
    f,
    alpha: float,
    x: float,
    b: float,
    spec: QuadSpec = DEFAULT_QUAD,
    *,
    breakpoints: Sequence[float] | None = None,
) -> float:
    """Right Riemann-Liouville integral of order ``alpha > 0`` over ``[x, b]``."""
    if not alpha > 0:
        raise ValueError(f"integration order must be positive, got {alpha!r}")
    if not b > x:
        raise ValueError("need b > x")
    bps = _knots_of(f) if breakpoints is None else tuple(breakpoints)
    val = kernel_integral(_vectorized(f), x, x, b, alpha, side="right",
                          breakpoints=bps, panels=spec.panels)
    return val / gamma(alpha)


def rl_left_derivative(
    f,
    alpha: float,
    a: float | None = None,
    x: float | None = None,
    spec: QuadSpec = DEFAULT_QUAD,
    **kwargs,
) -> float:
    """Left Riemann-Liouville derivative via the Jumarie offset relation.

    ``D f(x) = J f(x) + f(a) (x - a)**(-alpha) / Gamma(1 - alpha)``.
    A callable without a domain is only sampled on ``[a, x]``.
    """
    a = _resolve_a(f, a)
    b = kwargs.pop("b", None)
    if b is None:
        b = f.b if isinstance(f, PiecewiseFunction) else x
    fa = float(_vectorized(f)(np.array([a]))[0])
    jl = jumarie_left_numeric(f, alpha, x, a, spec, b=b, **kwargs)
    return jl + fa * (x - a) ** (-alpha) / gamma(1.0 - alpha)


def rl_right_derivative(
    f,
    alpha: float,
    x: float,
    b: float | None = None,
    spec: QuadSpec = DEFAULT_QUAD,
    **kwargs,
) -> float:
    """Right Riemann-Liouville derivative ``(-d/dx) I_right^{1-alpha} f``.

    The right Jumarie derivative is that operator applied to ``f(b) - f``,
    hence ``D f(x) = f(b) (b - x)**(-alpha) / Gamma(1 - alpha) - J f(x)``.
    A callable without a domain is only sampled on ``[x, b]``.
    """
    b = _resolve_b(f, b)
    a = kwargs.pop("a", None)
    if a is None:
        a = f.a if isinstance(f, PiecewiseFunction) else x
    fb = float(_vectorized(f)(np.array([b]))[0])
    jr = jumarie_right_numeric(f, alpha, x, b, spec, a=a, **kwargs)
    return fb * (b - x) ** (-alpha) / gamma(1.0 - alpha) - jr


def caputo_derivative(
    f_prime,
    alpha: float,
    a: float,
    t: float,
    spec: QuadSpec = DEFAULT_QUAD,
    *,
    breakpoints: Sequence[float] = (),
) -> float:
    """Caputo derivative from a caller-supplied first derivative."""
    _check_alpha(alpha)
    if not t > a:
        raise ValueError("need t > a")
    fp = _vectorized(f_prime)
    val = kernel_integral(fp, t, a, t, 1.0 - alpha, side="left",
                          breakpoints=breakpoints, panels=spec.panels)
    return val / gamma(1.0 - alpha)


def sample_grid(
    fn: Callable[[float], float], grid: GridSpec, *, workers: int | None = None
) -> list[tuple[float, float]]:
    """Evaluate ``fn`` on every grid point, in ascending ``x`` order."""
    xs = [float(x) for x in grid.points()]
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(fn, xs))
    else:
        values = [fn(x) for x in xs]
    return [(x, float(v)) for x, v in zip(xs, values)]
