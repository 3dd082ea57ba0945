"""Shared test helpers: random continuous piecewise polynomials."""

import math

import numpy as np
from hypothesis import strategies as st

from fracjump.piecewise import PiecewiseFunction


def piecewise_from_jumps(first, knots, jumps, domain=(0.0, 1.0)):
    """Continuous piecewise polynomial: ``first`` segment, then at each knot
    add ``sum_j d_j (x - k)**j / j!`` so the value never jumps."""
    segments = [list(first) + [0.0] * (4 - len(first))]
    for k, d in zip(knots, jumps):
        seg = list(segments[-1])
        for j, dj in enumerate(d, start=1):
            c = dj / math.factorial(j)
            for i in range(j + 1):
                seg[i] += c * math.comb(j, i) * (-k) ** (j - i)
        segments.append(seg)
    return PiecewiseFunction(domain, knots, segments)


coef = st.floats(-5, 5, allow_nan=False, allow_infinity=False)


@st.composite
def random_piecewise(draw, max_segments=3, max_degree=3):
    nseg = draw(st.integers(1, max_segments))
    knots = sorted(draw(st.lists(st.floats(0.1, 0.9), min_size=nseg - 1,
                                 max_size=nseg - 1, unique=True)))
    if any(k2 - k1 < 0.05 for k1, k2 in zip(knots, knots[1:])):
        knots = knots[:1]
    deg = draw(st.integers(1, max_degree))
    first = draw(st.lists(coef, min_size=deg + 1, max_size=deg + 1))
    jumps = [draw(st.lists(coef, min_size=deg, max_size=deg)) for _ in knots]
    return piecewise_from_jumps(first, knots, jumps)


def random_piecewise_rng(rng: np.random.Generator, max_segments=3, max_degree=3):
    """Seeded counterpart of :func:`random_piecewise` for fixed-size sweeps."""
    nseg = int(rng.integers(1, max_segments + 1))
    while True:
        knots = sorted(rng.uniform(0.1, 0.9, nseg - 1))
        if all(k2 - k1 >= 0.05 for k1, k2 in zip(knots, knots[1:])):
            break
    deg = int(rng.integers(1, max_degree + 1))
    first = rng.uniform(-5, 5, deg + 1)
    jumps = [rng.uniform(-5, 5, deg) for _ in knots]
    return piecewise_from_jumps(first, knots, jumps)
