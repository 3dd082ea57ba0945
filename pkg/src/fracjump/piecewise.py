"""Continuous piecewise polynomials on a closed interval."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np

MAX_DEGREE = 3
CONTINUITY_RTOL = 1e-9


class InputError(ValueError):
    """Raised for malformed function or signal input."""


def _poly_eval(coeffs: Sequence[float], x):
    # Horner in the global monomial basis
    acc = 0.0 * np.asarray(x, dtype=float) if np.ndim(x) else 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_deriv_at(coeffs: Sequence[float], x: float, order: int) -> float:
    total = 0.0
    for j in range(order, len(coeffs)):
        total += coeffs[j] * math.perm(j, order) * x ** (j - order)
    return total


@dataclass(frozen=True)
class PiecewiseFunction:
    """Continuous piecewise polynomial on ``[a, b]``.

    ``segments[i]`` holds the coefficients ``c_0, ..., c_d`` of segment ``i``
    in the global basis, i.e. the segment value is ``sum(c_j * x**j)``.
    Segment ``i`` is active on ``[knots[i - 1], knots[i]]`` with the domain
    endpoints standing in at both ends.
    """

    domain: tuple[float, float]
    knots: tuple[float, ...]
    segments: tuple[tuple[float, ...], ...]

    def __init__(
        self,
        domain: Sequence[float],
        knots: Iterable[float],
        segments: Iterable[Sequence[float]],
    ) -> None:
        a, b = (float(v) for v in domain)
        knots = tuple(float(k) for k in knots)
        segments = tuple(tuple(float(c) for c in seg) for seg in segments)

        if not all(math.isfinite(v) for v in (a, b, *knots)):
            raise InputError("domain and knots must be finite")
        if not a < b:
            raise InputError(f"domain must satisfy a < b, got [{a}, {b}]")
        if any(k1 >= k2 for k1, k2 in zip(knots, knots[1:])):
            raise InputError("knots must be strictly increasing")
        if knots and not (a < knots[0] and knots[-1] < b):
            raise InputError("knots must lie strictly inside the domain")
        if len(segments) != len(knots) + 1:
            raise InputError(
                f"expected {len(knots) + 1} segments for {len(knots)} knots, "
                f"got {len(segments)}"
            )
        for seg in segments:
            if not seg:
                raise InputError("empty coefficient list")
            if len(seg) - 1 > MAX_DEGREE:
                raise InputError(f"segment degree exceeds {MAX_DEGREE}")
            if not all(math.isfinite(c) for c in seg):
                raise InputError("coefficients must be finite")

        for i, k in enumerate(knots):
            left = _poly_eval(segments[i], k)
            right = _poly_eval(segments[i + 1], k)
            if abs(left - right) > CONTINUITY_RTOL * (1.0 + abs(left)):
                raise InputError(
                    f"discontinuity at knot {k}: {left!r} != {right!r}"
                )

        object.__setattr__(self, "domain", (a, b))
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "segments", segments)

    @property
    def a(self) -> float:
        return self.domain[0]

    @property
    def b(self) -> float:
        return self.domain[1]

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Domain endpoints and knots, ascending."""
        return (self.a, *self.knots, self.b)

    def segment_index(self, x: float) -> int:
        """Index of the segment used at ``x`` (left segment at a knot)."""
        return int(np.searchsorted(self.knots, x, side="left"))

    def __call__(self, x):
        """Vectorised evaluation; no domain check (see :func:`evaluate`)."""
        if np.ndim(x) == 0:
            return _poly_eval(self.segments[self.segment_index(float(x))], float(x))
        x = np.asarray(x, dtype=float)
        idx = np.searchsorted(self.knots, x, side="left")
        out = np.empty_like(x)
        for i, seg in enumerate(self.segments):
            mask = idx == i
            if np.any(mask):
                out[mask] = _poly_eval(seg, x[mask])
        return out

    def derivative(self, x: float, order: int = 1, *, side: str = "left") -> float:
        """Classical ``order``-th derivative of the segment on ``side`` of ``x``."""
        if side == "left":
            i = self.segment_index(x)
        else:
            i = int(np.searchsorted(self.knots, x, side="right"))
        return _poly_deriv_at(self.segments[i], x, order)

    def derivative_callable(self, order: int = 1):
        """Vectorised piecewise ``order``-th derivative (left segment at knots)."""
        dsegs = []
        for seg in self.segments:
            d = [seg[j] * math.perm(j, order) for j in range(order, len(seg))]
            dsegs.append(tuple(d) or (0.0,))

        def fprime(x):
            if np.ndim(x) == 0:
                return _poly_eval(dsegs[self.segment_index(float(x))], float(x))
            x = np.asarray(x, dtype=float)
            idx = np.searchsorted(self.knots, x, side="left")
            out = np.empty_like(x)
            for i, seg in enumerate(dsegs):
                mask = idx == i
                if np.any(mask):
                    out[mask] = _poly_eval(seg, x[mask])
            return out

        return fprime

    def scaled(self, c: float) -> PiecewiseFunction:
        return PiecewiseFunction(
            self.domain, self.knots, [[c * v for v in seg] for seg in self.segments]
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "domain": list(self.domain),
            "knots": list(self.knots),
            "segments": [list(seg) for seg in self.segments],
        }

    @classmethod
    def from_json(cls, obj: Any) -> PiecewiseFunction:
        if not isinstance(obj, dict):
            raise InputError("function JSON must be an object")
        try:
            domain = obj["domain"]
            knots = obj.get("knots", [])
            segments = obj["segments"]
        except KeyError as exc:
            raise InputError(f"missing key {exc.args[0]!r}") from None
        if not (isinstance(domain, list) and len(domain) == 2):
            raise InputError("'domain' must be a two-element list")
        if not isinstance(knots, list) or not isinstance(segments, list):
            raise InputError("'knots' and 'segments' must be lists")
        if not all(isinstance(s, list) for s in segments):
            raise InputError("each segment must be a list of coefficients")
        values = [*domain, *knots, *(c for s in segments for c in s)]
        if not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in values
        ):
            raise InputError("all function JSON entries must be numbers")
        return cls(domain, knots, segments)

    @classmethod
    def loads(cls, text: str) -> PiecewiseFunction:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from None
        return cls.from_json(obj)


@dataclass(frozen=True)
class SampleSeries:
    """Samples ``(x, y)`` with strictly increasing ``x``."""

    x: tuple[float, ...]
    y: tuple[float, ...]

    def __init__(self, points: Iterable[Sequence[float]]) -> None:
        pts = [(float(px), float(py)) for px, py in points]
        if len(pts) < 2:
            raise InputError("a sample series needs at least 2 points")
        if not all(math.isfinite(v) for p in pts for v in p):
            raise InputError("samples must be finite")
        xs, ys = zip(*pts)
        if any(x1 >= x2 for x1, x2 in zip(xs, xs[1:])):
            raise InputError("sample x values must be strictly increasing")
        object.__setattr__(self, "x", xs)
        object.__setattr__(self, "y", ys)

    def __len__(self) -> int:
        return len(self.x)

    @classmethod
    def read_csv(cls, text: str) -> SampleSeries:
        """Parse the ``x,y`` CSV format (header line required)."""
        rows = list(csv.reader(io.StringIO(text)))
        rows = [r for r in rows if r and any(c.strip() for c in r)]
        if not rows or [c.strip() for c in rows[0]] != ["x", "y"]:
            raise InputError("signal CSV must start with the header 'x,y'")
        points = []
        for lineno, row in enumerate(rows[1:], start=2):
            if len(row) != 2:
                raise InputError(f"line {lineno}: expected 2 columns")
            try:
                points.append((float(row[0]), float(row[1])))
            except ValueError:
                raise InputError(f"line {lineno}: non-numeric value") from None
        return cls(points)


def evaluate(f: PiecewiseFunction, x: float) -> float:
    """Value of ``f`` at ``x``; the left segment is used at a knot."""
    if not f.a <= x <= f.b:
        raise ValueError(f"x={x} outside domain [{f.a}, {f.b}]")
    return float(f(float(x)))


def derivative_jump(f: PiecewiseFunction, knot_index: int, order: int) -> float:
    """Jump ``p_right^(order)(k) - p_left^(order)(k)`` across knot ``k``."""
    if not 1 <= order <= MAX_DEGREE:
        raise ValueError(f"order must be in 1..{MAX_DEGREE}, got {order}")
    if not 0 <= knot_index < len(f.knots):
        raise IndexError(f"knot index {knot_index} out of range")
    k = f.knots[knot_index]
    left = _poly_deriv_at(f.segments[knot_index], k, order)
    right = _poly_deriv_at(f.segments[knot_index + 1], k, order)
    return right - left


def translate(f: PiecewiseFunction, shift: float) -> PiecewiseFunction:
    """Return ``g`` with ``g(x) = f(x + shift)`` on ``[a - shift, b - shift]``."""
    segments = []
    for seg in f.segments:
        # c_j (x + s)^j = sum_i c_j C(j, i) s^(j - i) x^i
        new = [0.0] * len(seg)
        for j, c in enumerate(seg):
            for i in range(j + 1):
                new[i] += c * math.comb(j, i) * shift ** (j - i)
        segments.append(new)
    return PiecewiseFunction(
        (f.a - shift, f.b - shift), [k - shift for k in f.knots], segments
    )


def from_samples(s: SampleSeries, slope_tolerance: float = 0.0) -> PiecewiseFunction:
    """Piecewise-linear interpolant through ``s``, merging collinear runs.

    A run is extended while the next chord slope differs from the run's
    first slope by at most ``slope_tolerance``.
    """
    if slope_tolerance < 0:
        raise ValueError("slope_tolerance must be non-negative")
    if len(s) < 2:
        raise InputError("a sample series needs at least 2 points")

    xs, ys = s.x, s.y
    slopes = [(ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]) for i in range(len(xs) - 1)]

    knot_idx: list[int] = []
    run_slope = slopes[0]
    for i in range(1, len(slopes)):
        if abs(slopes[i] - run_slope) > slope_tolerance:
            knot_idx.append(i)
            run_slope = slopes[i]

    bounds = [0, *knot_idx, len(xs) - 1]
    segments = []
    for lo, hi in zip(bounds, bounds[1:]):
        m = (ys[hi] - ys[lo]) / (xs[hi] - xs[lo])
        segments.append((ys[lo] - m * xs[lo], m))
    return PiecewiseFunction((xs[0], xs[-1]), [xs[i] for i in knot_idx], segments)
