"""Gamma, beta and Grünwald-Letnikov weights on the positive real axis."""

from __future__ import annotations

import math

import numpy as np

# Lanczos approximation, g = 7, n = 9 (Godfrey's coefficients).
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def gamma(x: float) -> float:
    """Gamma function for ``x > 0``.

    Arguments below 0.5 are shifted up with the recurrence
    :math:`\\Gamma(x) = \\Gamma(x + 1) / x` so the Lanczos sum is only ever
    evaluated where it is accurate; no reflection formula is needed.
    """
    x = float(x)
    if not x > 0.0:
        raise ValueError(f"gamma is only defined here for x > 0, got {x!r}")

    if x < 0.5:
        return gamma(x + 1.0) / x

    z = x - 1.0
    s = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        s += _LANCZOS_COEF[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return _SQRT_2PI * t ** (z + 0.5) * math.exp(-t) * s


def beta(p: float, q: float) -> float:
    """Beta function :math:`B(p, q) = \\Gamma(p)\\Gamma(q)/\\Gamma(p + q)`."""
    if not (p > 0.0 and q > 0.0):
        raise ValueError(f"beta requires p > 0 and q > 0, got ({p!r}, {q!r})")
    # multiplication is commutative, so B(p, q) == B(q, p) bit for bit
    return gamma(p) * gamma(q) / gamma(p + q)


def gl_weights(alpha: float, n: int) -> np.ndarray:
    r"""Signed Grünwald-Letnikov weights :math:`w_r = (-1)^r \binom{\alpha}{r}`.

    Computed by the recurrence :math:`w_0 = 1`,
    :math:`w_r = w_{r-1} (r - 1 - \alpha) / r`, so no gamma function at a
    negative argument is ever needed. Returns ``n + 1`` weights.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n!r}")

    w = np.empty(n + 1)
    w[0] = 1.0
    if n > 0:
        r = np.arange(1, n + 1, dtype=float)
        w[1:] = np.cumprod((r - 1.0 - alpha) / r)
    return w
