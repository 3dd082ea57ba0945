import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracjump.specialfn import beta, gamma, gl_weights


@pytest.mark.parametrize("x, expected", [
    (1.0, 1.0),
    (1.5, math.sqrt(math.pi) / 2),
    (2.5, 1.5 * math.sqrt(math.pi) / 2),
])
def test_gamma_values(x, expected):
    assert gamma(x) == pytest.approx(expected, rel=1e-12)


def test_gamma_matches_stdlib_on_grid():
    xs = np.linspace(1e-3, 10.0, 5001)
    err = max(abs(gamma(x) / math.gamma(x) - 1.0) for x in xs)
    assert err <= 1e-12


def test_gamma_recurrence_random():
    rng = np.random.default_rng(7)
    for x in rng.uniform(0.1, 9.0, 100):
        assert gamma(x + 1) == pytest.approx(x * gamma(x), rel=1e-12)


@pytest.mark.parametrize("x", [0.0, -0.5, -3.0])
def test_gamma_rejects_nonpositive(x):
    with pytest.raises(ValueError):
        gamma(x)


def test_beta_values():
    assert beta(1, 1) == pytest.approx(1.0, rel=1e-12)
    assert beta(0.5, 0.5) == pytest.approx(math.pi, rel=1e-12)


def test_beta_against_brute_force_integral():
    # int_0^1 u^{-1/2} (1 - u) du with u = s^2: 2 int_0^1 (1 - s^2) ds
    s = (np.arange(200000) + 0.5) / 200000
    brute = 2.0 * np.mean(1.0 - s**2)
    assert beta(0.5, 2) == pytest.approx(brute, rel=1e-9)
    assert beta(0.5, 2) == pytest.approx(4.0 / 3.0, rel=1e-12)


@given(st.floats(0.05, 8), st.floats(0.05, 8))
def test_beta_symmetric(p, q):
    assert beta(p, q) == beta(q, p)


@pytest.mark.parametrize("p, q", [(0, 1), (1, -1)])
def test_beta_domain(p, q):
    with pytest.raises(ValueError):
        beta(p, q)


def test_gl_weights_examples():
    assert gl_weights(0.5, 0).tolist() == [1.0]
    np.testing.assert_allclose(gl_weights(0.5, 2), [1.0, -0.5, -0.125], rtol=1e-15)
    np.testing.assert_allclose(gl_weights(0.5, 3), [1.0, -0.5, -0.125, -0.0625],
                               rtol=1e-15)


def test_gl_weights_are_signed_binomials():
    # brute-force (-1)^r C(alpha, r) from the falling factorial
    alpha = 0.3
    w = gl_weights(alpha, 10)
    for r in range(11):
        falling = math.prod(alpha - k for k in range(r))
        assert w[r] == pytest.approx((-1) ** r * falling / math.factorial(r), rel=1e-13)


@pytest.mark.parametrize("alpha", [0.1, 0.5, 0.9])
def test_gl_partial_sums(alpha):
    partial = np.cumsum(gl_weights(alpha, 2000))
    assert np.all(partial > 0)
    assert np.all(np.diff(partial) < 0)
    assert np.all(partial <= 1.0)


@given(st.floats(0.01, 0.99), st.integers(1, 200))
def test_gl_weight_ratio(alpha, n):
    w = gl_weights(alpha, n)
    r = np.arange(1, n + 1)
    np.testing.assert_allclose(w[1:] / w[:-1], (r - 1 - alpha) / r, rtol=1e-12)


@pytest.mark.parametrize("alpha", [0.0, 1.0, -0.2, 1.5])
def test_gl_weights_domain(alpha):
    with pytest.raises(ValueError):
        gl_weights(alpha, 3)
