"""Parametric Nikiforov-Uvarov engine.

The canonical equation is

    u'' + (c1 - c2 z) / (z (1 - c3 z)) u'
        + (-A z^2 + B z - C) / (z (1 - c3 z))^2 u = 0,

and everything below is the closed-form recipe that turns the six
coefficients (c1, c2, c3, A, B, C) into the quantization condition and the
factored solution u = z^c12 (1 - c3 z)^c13 P_n^(c10, c11)(1 - 2 c3 z).
Only the k_minus branch is implemented.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ComplexBranchError

__all__ = [
    "HypergeometricCoefficients",
    "NUDerived",
    "K_PLUS_SIGN",
    "derive_parameters",
    "quantization_residual",
    "tau_prime",
    "solution_exponents",
]

# Sign in front of 2 sqrt(c8 c9) for the unused k_plus root; kept for reference.
K_PLUS_SIGN = +1


@dataclass(frozen=True)
class HypergeometricCoefficients:
    """The six inputs of the canonical hypergeometric-type equation."""

    c1: float
    c2: float
    c3: float
    A: float
    B: float
    C: float

    def __post_init__(self):
        if self.c3 == 0:
            raise ValueError("c3 must be non-zero")


@dataclass(frozen=True)
class NUDerived:
    """Derived parameters c4..c13 and the selected root k_minus."""

    c4: float
    c5: float
    c6: float
    c7: float
    c8: float
    c9: float
    c10: float
    c11: float
    c12: float
    c13: float
    k_minus: float
    c3: float


def derive_parameters(h: HypergeometricCoefficients) -> NUDerived:
    """Compute every derived parameter of the recipe.

    Raises
    ------
    ComplexBranchError
        When ``c8 < 0`` or ``c9 < 0``; the square roots would be complex.
    """
    c4 = 0.5 * (1.0 - h.c1)
    c5 = 0.5 * (h.c2 - 2.0 * h.c3)
    c6 = c5 * c5 + h.A
    c7 = 2.0 * c4 * c5 - h.B
    c8 = c4 * c4 + h.C
    c9 = h.c3 * (c7 + h.c3 * c8) + c6
    if c8 < 0.0 or c9 < 0.0:
        raise ComplexBranchError(f"complex branch: c8={c8!r}, c9={c9!r}")
    r8 = math.sqrt(c8)
    r9 = math.sqrt(c9)
    k_minus = -(c7 + 2.0 * h.c3 * c8) - 2.0 * math.sqrt(c8 * c9)
    c10 = h.c1 + 2.0 * c4 + 2.0 * r8 - 1.0
    c11 = 1.0 - h.c1 - 2.0 * c4 + (2.0 / h.c3) * r9
    c12 = c4 + r8
    c13 = -c4 + (r9 - c5) / h.c3
    return NUDerived(c4, c5, c6, c7, c8, c9, c10, c11, c12, c13, k_minus, h.c3)


def quantization_residual(h: HypergeometricCoefficients, n: int) -> float:
    """Left-hand side of the quantization condition; zero on an eigenvalue.

    ``(c2-c3) n + c3 n^2 - (2n+1) c5 + (2n+1)(sqrt(c9) + c3 sqrt(c8))
    + c7 + 2 c3 c8 + 2 sqrt(c8 c9)``
    """
    d = derive_parameters(h)
    r8 = math.sqrt(d.c8)
    r9 = math.sqrt(d.c9)
    m = 2 * n + 1
    return (
        (h.c2 - h.c3) * n
        + h.c3 * n * n
        - m * d.c5
        + m * (r9 + h.c3 * r8)
        + d.c7
        + 2.0 * h.c3 * d.c8
        + 2.0 * math.sqrt(d.c8 * d.c9)
    )


def tau_prime(d: NUDerived) -> float:
    """Derivative of tau(z); negative values mark an admissible branch."""
    return -2.0 * d.c3 - 2.0 * (math.sqrt(d.c9) + d.c3 * math.sqrt(d.c8))


def solution_exponents(d: NUDerived) -> tuple[tuple[float, float], tuple[float, float]]:
    """Return ``((c10, c11), (c12, c13))``.

    The first pair are the weight-function exponents, which double as the
    Jacobi parameters; the second pair are the exponents of phi(z).
    """
    return (d.c10, d.c11), (d.c12, d.c13)
