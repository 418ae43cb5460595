"""Real-argument special functions: gamma, Jacobi polynomials, terminating 2F1.

Everything here works in 64-bit floats. Jacobi parameters may be any finite
reals, including values below -1 where the polynomials are no longer
orthogonal on [-1, 1] but remain perfectly well defined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParameterError, PoleError

__all__ = [
    "JacobiParams",
    "gamma_real",
    "binomial_real",
    "jacobi_poly",
    "jacobi_poly_series",
    "hyp2f1_terminating",
]

# Lanczos coefficients for g = 7, nine terms.
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
# relative size below which a recurrence factor counts as degenerate
_NEAR = 0.05
# |sum| / sum|terms| below which the series is re-summed exactly
_CANCEL = 1e-4


@dataclass(frozen=True)
class JacobiParams:
    """Degree and parameters of a Jacobi polynomial P_n^(alpha, beta)."""

    n: int
    alpha: float
    beta: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"degree must be a non-negative integer, got {self.n!r}")
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise ValueError("Jacobi parameters must be finite")

    @property
    def classical_range(self) -> bool:
        """True when both parameters exceed -1 (orthogonality on [-1, 1])."""
        return self.alpha > -1.0 and self.beta > -1.0


def gamma_real(x: float) -> float:
    """Gamma function for real arguments.

    Uses a Lanczos approximation for ``x >= 0.5`` and the reflection formula
    below that.

    Raises
    ------
    PoleError
        If ``x`` is within 1e-14 of a non-positive integer.
    """
    x = float(x)
    if x <= 0.0 and abs(x - round(x)) < 1e-14:
        raise PoleError(f"gamma has a pole at {x!r}")
    if x < 0.5:
        # reduce before sin so accuracy survives next to the poles
        k = round(x)
        s = math.sin(math.pi * (x - k)) * (-1.0 if k % 2 else 1.0)
        return math.pi / (s * gamma_real(1.0 - x))
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[k] / (x + k)
    t = x + _LANCZOS_G + 0.5
    # split the power to delay overflow for large x
    half = t ** (0.5 * (x + 0.5))
    return _SQRT_2PI * half * half * math.exp(-t) * acc


def binomial_real(top: float, k: int) -> float:
    """Generalized binomial coefficient C(top, k) for integer ``k >= 0``.

    Computed as a finite product, so it stays finite where the gamma-ratio
    form would need cancelling poles.
    """
    out = 1.0
    for j in range(1, k + 1):
        out *= (top - k + j) / j
    return out


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def jacobi_poly_series(p: JacobiParams, x):
    """P_n^(alpha, beta)(x) from the explicit finite sum.

    ``sum_k C(n+a, n-k) C(n+b, k) ((x-1)/2)^k ((x+1)/2)^(n-k)``. Valid for all
    real parameters; used as the fallback when the recurrence degenerates.
    """
    arr, scalar = _as_array(x)
    n, a, b = p.n, p.alpha, p.beta
    xm = 0.5 * (arr - 1.0)
    xp = 0.5 * (arr + 1.0)
    terms = [
        binomial_real(n + a, n - k) * binomial_real(n + b, k) * xm**k * xp ** (n - k)
        for k in range(n + 1)
    ]
    out = np.sum(np.stack(terms), axis=0) if terms else np.ones_like(arr)
    return float(out) if scalar else out


def jacobi_poly(p: JacobiParams, x):
    """Jacobi polynomial P_n^(alpha, beta)(x) by three-term recurrence.

    Parameters
    ----------
    p : JacobiParams
        Degree and (arbitrary real) parameters.
    x : float or array_like
        Evaluation point(s); any real value.

    Returns
    -------
    float or ndarray
        Same shape as ``x``. Normalized so that P_n(1) = C(n+alpha, n).

    Notes
    -----
    Degrees 0 and 1 use the explicit formulas. Higher degrees run the
    standard recurrence. If one of its leading factors ``k + alpha + beta``
    or ``2k + alpha + beta - 2`` is small relative to its terms (which
    happens for negative parameter sums near an integer) the recurrence
    loses digits to cancellation and the explicit sum is used instead.
    """
    arr, scalar = _as_array(x)
    n, a, b = p.n, p.alpha, p.beta
    if n == 0:
        out = np.ones_like(arr)
        return 1.0 if scalar else out
    p0 = np.ones_like(arr)
    p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * arr
    if n == 1:
        return float(p1) if scalar else p1
    ab = a + b
    for k in range(2, n + 1):
        s = 2.0 * k + ab
        lead = 2.0 * k * (k + ab) * (s - 2.0)
        # near-vanishing leading factors cancel catastrophically
        if abs(k + ab) < _NEAR * (k + abs(ab)) or abs(s - 2.0) < _NEAR * (abs(s) + 2.0):
            return jacobi_poly_series(p, x)
        c1 = (s - 1.0) * (s * (s - 2.0) * arr + a * a - b * b)
        c2 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s
        p0, p1 = p1, (c1 * p1 - c2 * p0) / lead
    return float(p1) if scalar else p1


def _hyp_scalar(n: int, b: float, c: float, x: float) -> float:
    terms = [1.0]
    t = 1.0
    for k in range(n):
        den = c + k
        if den == 0.0:
            raise ParameterError(f"(c)_k vanishes: c={c!r} is a non-positive integer > -{n}")
        t *= (k - n) * (b + k) / den * x / (k + 1)
        terms.append(t)
    s = math.fsum(terms)
    if abs(s) < _CANCEL * math.fsum(abs(v) for v in terms):
        return _hyp_exact(n, b, c, x)
    return s


def _hyp_exact(n: int, b: float, c: float, x: float) -> float:
    # rounding in the individual terms would dominate a cancelling sum
    fb, fc, fx = Fraction(b), Fraction(c), Fraction(x)
    t = total = Fraction(1)
    for k in range(n):
        t *= (k - n) * (fb + k) / (fc + k) * fx / (k + 1)
        total += t
    return float(total)


def hyp2f1_terminating(n: int, b: float, c: float, x):
    """Terminating Gauss series 2F1(-n, b; c; x).

    Evaluates ``sum_{k=0}^{n} (-n)_k (b)_k / (c)_k * x^k / k!`` as a finite
    sum with compensated (``math.fsum``) accumulation. When the terms cancel
    to below 1e-4 of their absolute sum, the series is redone in exact
    rational arithmetic on the float inputs.

    Raises
    ------
    ParameterError
        If a retained Pochhammer denominator ``(c)_k``, ``k < n``, vanishes.
    """
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    n = int(n)
    arr, scalar = _as_array(x)
    if scalar:
        return _hyp_scalar(n, float(b), float(c), float(arr))
    flat = [_hyp_scalar(n, float(b), float(c), float(v)) for v in arr.ravel()]
    return np.asarray(flat).reshape(arr.shape)
