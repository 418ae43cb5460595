from __future__ import annotations

import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from kgbound.errors import ComplexBranchError
from kgbound.nu import (HypergeometricCoefficients, derive_parameters, quantization_residual,
                        solution_exponents, tau_prime)

TRIVIAL = HypergeometricCoefficients(1.0, 1.0, 1.0, 0.0, 0.0, 0.0)
# eps = 1, q = 1, beta = 2, gamma = lam = 0.5 on the Eckart-like mapping
ECKART = HypergeometricCoefficients(1.0, 1.0, 1.0, 1.5, 0.0, 0.5)

coef = st.floats(-5.0, 5.0, allow_nan=False)
nonzero = st.floats(-5.0, 5.0).filter(lambda v: abs(v) > 1e-3)


def test_trivial_example():
    d = derive_parameters(TRIVIAL)
    assert (d.c4, d.c5, d.c6, d.c7, d.c8, d.c9) == (0.0, -0.5, 0.25, 0.0, 0.0, 0.25)
    assert (d.c12, d.c13) == (0.0, 1.0)
    assert tau_prime(d) == -3.0
    assert solution_exponents(d)[1] == (0.0, 1.0)


def test_eckart_example():
    d = derive_parameters(ECKART)
    assert (d.c4, d.c5, d.c6, d.c7) == (0.0, -0.5, 1.75, 0.0)
    assert d.c8 == 0.5
    assert d.c9 == 2.25
    assert d.c10 == pytest.approx(2 * math.sqrt(0.5), abs=1e-15)
    assert d.c11 == pytest.approx(3.0, abs=1e-15)
    assert d.c12 == pytest.approx(math.sqrt(0.5), abs=1e-15)
    assert d.c13 == pytest.approx(2.0, abs=1e-15)
    assert d.c9 == d.c3 * (d.c7 + d.c3 * d.c8) + d.c6
    assert tau_prime(d) == pytest.approx(-2 - 2 * (1.5 + math.sqrt(0.5)), abs=1e-14)
    assert tau_prime(d) == pytest.approx(-6.4142, abs=1e-4)


def test_exponent_relations_for_eckart_mapping():
    (c10, c11), (c12, c13) = solution_exponents(derive_parameters(ECKART))
    assert c10 == pytest.approx(2 * c12, abs=1e-15)
    assert c11 == pytest.approx(2 * c13 - 1, abs=1e-15)


def test_quantization_residual_trivial():
    assert quantization_residual(TRIVIAL, 0) == 1.0


def test_complex_branch():
    with pytest.raises(ComplexBranchError):
        derive_parameters(HypergeometricCoefficients(1.0, 1.0, 1.0, 0.0, 0.0, -1.0))


def test_c3_zero_rejected():
    with pytest.raises(ValueError):
        HypergeometricCoefficients(1.0, 1.0, 0.0, 0.0, 0.0, 0.0)


def test_residual_monotone_in_sqrt_c8():
    # C raises c8 while A is lowered to hold c9 fixed
    base = dict(c1=1.0, c2=1.0, c3=1.0, B=0.0)
    prev = None
    for C in [0.0, 0.1, 0.4, 0.9, 1.6, 2.5]:
        h = HypergeometricCoefficients(A=1.0 - C, C=C, **base)
        assert derive_parameters(h).c9 == pytest.approx(1.25)
        r = quantization_residual(h, 2)
        if prev is not None:
            assert r > prev
        prev = r


def _ulps_ok(got, parts, k=4):
    scale = max(abs(p) for p in parts)
    return abs(got - sum(parts)) <= k * math.ulp(scale) if scale else got == 0.0


@settings(max_examples=500, deadline=None)
@given(coef, coef, nonzero, coef, coef, coef)
def test_identities(c1, c2, c3, A, B, C):
    h = HypergeometricCoefficients(c1, c2, c3, A, B, C)
    try:
        d = derive_parameters(h)
    except ComplexBranchError:
        assume(False)
    r8, r9 = math.sqrt(d.c8), math.sqrt(d.c9)
    assert _ulps_ok(d.c6, [d.c5**2, A])
    assert _ulps_ok(d.c7, [2 * d.c4 * d.c5, -B])
    assert _ulps_ok(d.c8, [d.c4**2, C])
    assert _ulps_ok(d.c9, [c3 * d.c7, c3 * c3 * d.c8, d.c6])
    assert _ulps_ok(d.k_minus, [-d.c7, -2 * c3 * d.c8, -2 * math.sqrt(d.c8 * d.c9)])
    assert _ulps_ok(d.c10, [c1, 2 * d.c4, 2 * r8, -1.0])
    assert _ulps_ok(d.c11, [1.0, -c1, -2 * d.c4, 2 * r9 / c3])
    assert _ulps_ok(d.c12, [d.c4, r8])
    assert _ulps_ok(d.c13, [-d.c4, (r9 - d.c5) / c3])
    if c3 > 0:
        assert tau_prime(d) < 0


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 5.0), st.floats(0.0, 5.0), st.floats(0.0, 5.0))
def test_c10_is_twice_c12_when_c1_is_one(q, e2, lam):
    h = HypergeometricCoefficients(1.0, q, q, q * q * (e2 + lam), 0.3, e2)
    try:
        d = derive_parameters(h)
    except ComplexBranchError:
        assume(False)
    assert d.c10 == pytest.approx(2 * d.c12, rel=1e-14, abs=1e-15)
