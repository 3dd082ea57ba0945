import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracjump.worked import example2_raw, example_function
from fracjump.piecewise import (
    InputError,
    PiecewiseFunction,
    SampleSeries,
    derivative_jump,
    evaluate,
    from_samples,
    translate,
)

from helpers import random_piecewise


def test_evaluate_examples(ex1, ex2, ex5):
    assert evaluate(ex1, 0.25) == 0.25
    assert evaluate(ex2, 0.0) == 4.0
    assert evaluate(ex5, 0.5) == pytest.approx(4.0, abs=1e-15)


def test_evaluate_uses_left_segment_at_knot():
    f = PiecewiseFunction([0, 1], [0.5], [[0, 1], [0.5 + 1e-12, 0]])
    assert evaluate(f, 0.5) == 0.5


@pytest.mark.parametrize("x", [-0.01, 1.01])
def test_evaluate_outside_domain(ex1, x):
    with pytest.raises(ValueError):
        evaluate(ex1, x)


def test_vectorised_call_agrees_with_scalar(ex4):
    xs = np.linspace(0, 1, 41)
    np.testing.assert_array_equal(ex4(xs), [ex4(float(x)) for x in xs])


@pytest.mark.parametrize("n, order, expected", [
    (1, 1, 2.0),
    (2, 1, -26.0),
    (5, 2, -16.0),
    (5, 1, -8.0),
    (4, 2, -8.0),
])
def test_derivative_jump(n, order, expected):
    assert derivative_jump(example_function(n), 0, order) == pytest.approx(expected)


def test_derivative_jump_errors(ex1):
    with pytest.raises(IndexError):
        derivative_jump(ex1, 1, 1)
    with pytest.raises(ValueError):
        derivative_jump(ex1, 0, 4)
    with pytest.raises(ValueError):
        derivative_jump(ex1, 0, 0)


@pytest.mark.parametrize("kwargs, match", [
    (dict(domain=[1, 0], knots=[], segments=[[0]]), "a < b"),
    (dict(domain=[0, 1], knots=[0.6, 0.4], segments=[[0], [0], [0]]), "increasing"),
    (dict(domain=[0, 1], knots=[1.0], segments=[[0], [0]]), "inside"),
    (dict(domain=[0, 1], knots=[0.5], segments=[[0]]), "segments"),
    (dict(domain=[0, 1], knots=[], segments=[[0, 0, 0, 0, 1]]), "degree"),
    (dict(domain=[0, 1], knots=[0.5], segments=[[0, 1], [1, 1]]), "discontinuity"),
])
def test_construction_rejects_invalid(kwargs, match):
    with pytest.raises(InputError, match=match):
        PiecewiseFunction(**kwargs)


def test_json_roundtrip(ex4):
    g = PiecewiseFunction.loads(json.dumps(ex4.to_json()))
    assert g == ex4


@pytest.mark.parametrize("text", [
    "not json",
    "[]",
    '{"domain": [0, 1]}',
    '{"domain": [0], "knots": [], "segments": [[1]]}',
    '{"domain": [0, 1], "knots": [], "segments": [["a"]]}',
    '{"domain": [0, 1], "knots": [], "segments": [[true]]}',
])
def test_json_rejects_malformed(text):
    with pytest.raises(InputError):
        PiecewiseFunction.loads(text)


def test_translate_example2():
    g = translate(example2_raw(), 2.0)
    assert g.domain == (0.0, 1.0)
    assert g.knots == (0.5,)
    assert evaluate(g, 0.0) == pytest.approx(4.0)
    assert evaluate(g, 1.0) == pytest.approx(1.0)
    for x in np.linspace(0, 1, 11):
        assert evaluate(g, x) == pytest.approx(evaluate(example_function(2), x))


def test_translate_identity_and_shift(ex5):
    assert translate(ex5, 0.0) == ex5
    sq = PiecewiseFunction([0, 1], [], [[0, 0, 1]])
    g = translate(sq, -1.0)
    assert g.domain == (1.0, 2.0)
    assert evaluate(g, 1.5) == pytest.approx(0.25)


@given(random_piecewise(), st.floats(-3, 3), st.floats(0, 1))
def test_translate_pointwise(f, shift, t):
    g = translate(f, shift)
    x = f.a + t * (f.b - f.a)
    scale = 1 + sum(abs(c) for seg in f.segments for c in seg) * (1 + abs(shift)) ** 3
    assert evaluate(g, x - shift) == pytest.approx(evaluate(f, x), abs=1e-12 * scale)


@given(random_piecewise(), st.floats(-3, 3))
def test_jumps_invariant_under_translate(f, shift):
    g = translate(f, shift)
    for i in range(len(f.knots)):
        for order in (1, 2, 3):
            assert derivative_jump(g, i, order) == pytest.approx(
                derivative_jump(f, i, order), abs=1e-9)


def test_from_samples_two_points():
    f = from_samples(SampleSeries([(0, 0), (1, 1)]), 0.0)
    assert f.knots == ()
    assert f.segments == ((0.0, 1.0),)


def test_from_samples_triangle():
    xs = [0, 0.25, 0.5, 0.75, 1]
    f = from_samples(SampleSeries([(x, abs(x - 0.5)) for x in xs]), 1e-9)
    assert f.knots == (0.5,)
    assert f.derivative(0.25) == pytest.approx(-1)
    assert f.derivative(0.75) == pytest.approx(1)


def test_from_samples_example2_raw():
    f = from_samples(SampleSeries([(2, 4), (2.5, 9), (3, 1)]), 1e-9)
    assert f.knots == (2.5,)
    assert f.derivative(2.2) == pytest.approx(10)
    assert f.derivative(2.8) == pytest.approx(-16)


@given(st.lists(st.floats(-10, 10), min_size=1, max_size=4),
       st.integers(2, 6))
def test_from_samples_reconstructs_piecewise_linear(slopes, per_segment):
    nseg = len(slopes)
    # force distinct consecutive slopes
    slopes = [s + 25 * (i % 2) for i, s in enumerate(slopes)]
    knots = [(i + 1) / nseg for i in range(nseg - 1)]
    segs, y0 = [], 1.0
    for i, m in enumerate(slopes):
        x0 = i / nseg
        segs.append([y0 - m * x0, m])
        y0 = y0 + m / nseg
    f = PiecewiseFunction([0, 1], knots, segs)
    xs = np.unique(np.concatenate(
        [np.linspace(i / nseg, (i + 1) / nseg, per_segment) for i in range(nseg)]))
    g = from_samples(SampleSeries([(x, f(x)) for x in xs]), 1e-9)
    np.testing.assert_allclose(g.knots, knots, atol=1e-9)
    for seg_f, seg_g in zip(f.segments, g.segments):
        assert seg_g[1] == pytest.approx(seg_f[1], abs=1e-9)


def test_sample_series_validation():
    with pytest.raises(InputError):
        SampleSeries([(0, 1)])
    with pytest.raises(InputError):
        SampleSeries([(0, 1), (0, 2)])


def test_read_csv():
    s = SampleSeries.read_csv("x,y\n0,1\n0.5,2\n1,0\n")
    assert s.x == (0.0, 0.5, 1.0)
    for bad in ("a,b\n0,1\n1,2\n", "x,y\n0,1\n", "x,y\n0,one\n1,2\n", "x,y\n0,1,2\n1,2\n"):
        with pytest.raises(InputError):
            SampleSeries.read_csv(bad)
