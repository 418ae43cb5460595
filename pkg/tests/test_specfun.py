from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kgbound.errors import ParameterError, PoleError
from kgbound.specfun import (JacobiParams, binomial_real, gamma_real, hyp2f1_terminating, jacobi_poly,
                             jacobi_poly_series)

params = st.floats(-0.9, 5.0, allow_nan=False)
unit = st.floats(0.0, 1.0, allow_nan=False)
degree = st.integers(0, 10)


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


@pytest.mark.parametrize("x, want", [(1.0, 1.0), (5.0, 24.0), (0.5, math.sqrt(math.pi))])
def test_gamma_examples(x, want):
    assert gamma_real(x) == pytest.approx(want, rel=1e-13)


@pytest.mark.parametrize("x", [0.0, -1.0, -7.0, -3.0 + 1e-15])
def test_gamma_poles(x):
    with pytest.raises(PoleError):
        gamma_real(x)


@pytest.mark.parametrize("x", [-0.5, -1.5, -2.25, 0.3, 7.7, 30.0])
def test_gamma_matches_stdlib(x):
    assert rel(gamma_real(x), math.gamma(x)) < 1e-13


@settings(max_examples=300, deadline=None)
@given(st.floats(0.1, 20.0))
def test_gamma_recurrence(x):
    assert rel(gamma_real(x + 1.0), x * gamma_real(x)) < 1e-12


@pytest.mark.parametrize(
    "n, a, b, x, want",
    [(0, 2.7, -0.3, 0.9, 1.0), (1, 2.0, 3.0, 0.5, 1.25), (2, 0.0, 0.0, 0.6, 0.04)],
)
def test_jacobi_examples(n, a, b, x, want):
    assert jacobi_poly(JacobiParams(n, a, b), x) == pytest.approx(want, abs=1e-14)


def test_jacobi_value_at_one():
    for n in range(8):
        p = JacobiParams(n, 1.3, -0.4)
        assert rel(jacobi_poly(p, 1.0), binomial_real(n + 1.3, n)) < 1e-13


def test_jacobi_nonclassical_parameters_fall_back_to_series():
    # alpha + beta close to -k makes the recurrence cancel
    p = JacobiParams(5, -2.49, -0.5)
    assert not p.classical_range
    xs = np.linspace(-1.0, 1.0, 9)
    assert np.allclose(jacobi_poly(p, xs), jacobi_poly_series(p, xs), rtol=1e-10, atol=1e-12)


def test_jacobi_array_shape():
    xs = np.linspace(-1.0, 1.0, 12).reshape(3, 4)
    assert jacobi_poly(JacobiParams(3, 0.5, 0.5), xs).shape == (3, 4)


def test_jacobi_rejects_bad_degree():
    with pytest.raises(ValueError):
        JacobiParams(-1, 0.0, 0.0)
    with pytest.raises(ValueError):
        JacobiParams(1.5, 0.0, 0.0)


@settings(max_examples=300, deadline=None)
@given(degree, params, params, unit)
def test_jacobi_hypergeometric_identity(n, a, b, x):
    lhs = jacobi_poly(JacobiParams(n, a, b), 1.0 - 2.0 * x)
    rhs = binomial_real(n + a, n) * hyp2f1_terminating(n, n + a + b + 1.0, a + 1.0, x)
    assert rel(lhs, rhs) < 1e-10


@settings(max_examples=300, deadline=None)
@given(degree, params, params, st.floats(-1.0, 1.0))
def test_jacobi_symmetry(n, a, b, x):
    lhs = jacobi_poly(JacobiParams(n, a, b), -x)
    rhs = (-1) ** n * jacobi_poly(JacobiParams(n, b, a), x)
    scale = max(1.0, abs(binomial_real(n + a, n)), abs(binomial_real(n + b, n)))
    assert abs(lhs - rhs) <= 1e-12 * scale


@pytest.mark.parametrize(
    "n, b, c, x, want",
    [(3, 1.1, 2.2, 0.0, 1.0), (0, 4.0, 1.5, 0.7, 1.0), (2, 3.0, 2.0, 0.5, 0.0)],
)
def test_hyp2f1_examples(n, b, c, x, want):
    assert hyp2f1_terminating(n, b, c, x) == want


@settings(max_examples=200, deadline=None)
@given(degree, st.floats(-5, 5), st.floats(0.1, 6))
def test_hyp2f1_at_zero_is_exactly_one(n, b, c):
    assert hyp2f1_terminating(n, b, c, 0.0) == 1.0


def test_hyp2f1_pochhammer_pole():
    with pytest.raises(ParameterError):
        hyp2f1_terminating(3, 1.0, -1.0, 0.5)


def test_hyp2f1_pole_beyond_truncation_is_fine():
    # (c)_k with k < n never reaches zero here
    assert math.isfinite(hyp2f1_terminating(2, 1.0, -2.0, 0.5))


def test_hyp2f1_cancelling_sum_is_accurate():
    # terms of size ~1e3 cancel to a value near a polynomial zero
    n, a, b = 10, 0.3, 2.1
    p = JacobiParams(n, a, b)
    x0 = 0.5 * (1.0 - 0.1834)
    got = binomial_real(n + a, n) * hyp2f1_terminating(n, n + a + b + 1.0, a + 1.0, x0)
    assert rel(got, jacobi_poly(p, 1.0 - 2.0 * x0)) < 1e-12


def test_binomial_real():
    assert binomial_real(5.0, 2) == 10.0
    assert binomial_real(-0.5, 0) == 1.0
    assert binomial_real(-0.5, 2) == pytest.approx(0.375)
    for top in (2.5, 6.25):
        g = gamma_real(top + 1) / (gamma_real(3) * gamma_real(top - 1))
        assert rel(binomial_real(top, 2), g) < 1e-13
