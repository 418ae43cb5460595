"""Potential catalog, centrifugal approximation and coupling maps.

Every exponential model is routed through one of two hypergeometric
families, written in the variable z = exp(-2 a r):

* Eckart-like:      4 V1 z/(1-qz)^2 - V2/(1-qz) - V3 qz/(1-qz)
* Rosen-Morse-like: 4 V1 z/(1+qz)^2 - V2/(1+qz) + V3 qz/(1+qz)

Named special cases (Hulthen, Woods-Saxon, standard Eckart, Rosen-Morse
well) are thin views that map their own parameters onto a family. The
trigonometric Rosen-Morse potential lives on the finite interval
(0, pi/alpha) and only supports evaluation and its energy equation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, SingularPointError, SWaveOnlyError, UnsupportedModelError, WindowError
from .nu import HypergeometricCoefficients

__all__ = [
    "EckartType",
    "RosenMorseType",
    "Hulthen",
    "WoodsSaxon",
    "StandardEckart",
    "RosenMorseWell",
    "TrigRosenMorse",
    "PotentialModel",
    "FamilyParams",
    "CouplingSet",
    "DimensionalNumbers",
    "ECKART_LIKE",
    "ROSEN_MORSE_LIKE",
    "family_of",
    "evaluate_potential",
    "centrifugal_approximation",
    "centrifugal_exact",
    "dimensional_numbers",
    "couplings",
    "nonrelativistic_couplings",
    "to_hypergeometric",
    "trm_small_x_expansion",
    "trm_linear_correction",
    "radial_q",
]

ECKART_LIKE = "eckart-like"
ROSEN_MORSE_LIKE = "rosen-morse-like"


def _check_alpha_q(alpha, q=1.0):
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    if not q > 0:
        raise ValueError(f"q must be positive, got {q!r}")


@dataclass(frozen=True)
class EckartType:
    """Deformed Eckart-type potential in its three-coupling form."""

    V1: float
    V2: float
    V3: float
    q: float = 1.0
    alpha: float = 1.0

    def __post_init__(self):
        _check_alpha_q(self.alpha, self.q)


@dataclass(frozen=True)
class RosenMorseType:
    """Deformed Rosen-Morse-type potential in its three-coupling form."""

    V1: float
    V2: float
    V3: float
    q: float = 1.0
    alpha: float = 1.0

    def __post_init__(self):
        _check_alpha_q(self.alpha, self.q)


@dataclass(frozen=True)
class Hulthen:
    """Hulthen potential ``-V0 e^{-alpha r} / (1 - e^{-alpha r})``."""

    V0: float
    alpha: float = 1.0

    def __post_init__(self):
        _check_alpha_q(self.alpha)


@dataclass(frozen=True)
class WoodsSaxon:
    """Woods-Saxon-shaped potential ``-V0 e^{-alpha r} / (1 + e^{-alpha r})``."""

    V0: float
    alpha: float = 1.0

    def __post_init__(self):
        _check_alpha_q(self.alpha)


@dataclass(frozen=True)
class StandardEckart:
    """Standard Eckart potential ``V1 csch^2(alpha r) - V2 coth(alpha r)``."""

    V1: float
    V2: float
    alpha: float = 1.0

    def __post_init__(self):
        _check_alpha_q(self.alpha)


@dataclass(frozen=True)
class RosenMorseWell:
    """Rosen-Morse well ``-V1 sech_q^2(alpha r) + V2 tanh_q(alpha r)``.

    For q = 1 this is the textbook well. It is the Rosen-Morse-type model
    with V1 -> -V1 and V2 = V3 -> -V2.
    """

    V1: float
    V2: float
    q: float = 1.0
    alpha: float = 1.0

    def __post_init__(self):
        _check_alpha_q(self.alpha, self.q)


@dataclass(frozen=True)
class TrigRosenMorse:
    """Trigonometric Rosen-Morse potential ``V1 csc^2(alpha x) - V2 cot(alpha x)``.

    ``V1 = a(a+1)`` and ``V2 = 2b``; defined on ``0 < x < pi/alpha``.
    """

    a: float
    b: float
    alpha: float = 1.0

    def __post_init__(self):
        _check_alpha_q(self.alpha)

    @property
    def V1(self) -> float:
        return self.a * (self.a + 1.0)

    @property
    def V2(self) -> float:
        return 2.0 * self.b


PotentialModel = Union[
    EckartType, RosenMorseType, Hulthen, WoodsSaxon, StandardEckart, RosenMorseWell, TrigRosenMorse
]


@dataclass(frozen=True)
class FamilyParams:
    """A model expressed in one of the two exponential families.

    ``alpha`` is the effective screening that multiplies r in z = e^{-2 alpha r}.
    """

    kind: str
    V1: float
    V2: float
    V3: float
    q: float
    alpha: float

    @property
    def upper(self) -> float:
        """+1 for the Eckart-like family, -1 for the Rosen-Morse-like family."""
        return 1.0 if self.kind == ECKART_LIKE else -1.0


def family_of(m: PotentialModel) -> FamilyParams:
    """Map a model onto its exponential family.

    Raises
    ------
    UnsupportedModelError
        For the trigonometric model, which has no real family image.
    """
    if isinstance(m, EckartType):
        return FamilyParams(ECKART_LIKE, m.V1, m.V2, m.V3, m.q, m.alpha)
    if isinstance(m, RosenMorseType):
        return FamilyParams(ROSEN_MORSE_LIKE, m.V1, m.V2, m.V3, m.q, m.alpha)
    if isinstance(m, Hulthen):
        return FamilyParams(ECKART_LIKE, 0.0, 0.0, m.V0, 1.0, 0.5 * m.alpha)
    if isinstance(m, WoodsSaxon):
        return FamilyParams(ROSEN_MORSE_LIKE, 0.0, 0.0, -m.V0, 1.0, 0.5 * m.alpha)
    if isinstance(m, StandardEckart):
        return FamilyParams(ECKART_LIKE, m.V1, m.V2, m.V2, 1.0, m.alpha)
    if isinstance(m, RosenMorseWell):
        return FamilyParams(ROSEN_MORSE_LIKE, -m.V1, -m.V2, -m.V2, m.q, m.alpha)
    if isinstance(m, TrigRosenMorse):
        raise UnsupportedModelError("the trigonometric Rosen-Morse model has no real exponential family")
    raise TypeError(f"not a potential model: {m!r}")


def _family_value(f: FamilyParams, r):
    if f.kind == ECKART_LIKE:
        z = np.exp(-2.0 * f.alpha * r)
        d = 1.0 - f.q * z
        if np.any(np.abs(d) < 1e-15):
            raise DomainError("Eckart-like potential is singular where q e^{-2 alpha r} = 1")
        return 4.0 * f.V1 * z / d**2 - f.V2 / d - f.V3 * f.q * z / d
    # with L = ln(qz): 1/(1+qz) and qz/(1+qz) as tanh halves, overflow-free for r -> -inf
    half = 0.5 * (math.log(f.q) - 2.0 * f.alpha * np.asarray(r, dtype=float))
    th = np.tanh(half)
    e = np.exp(-2.0 * np.abs(half))
    bump = 4.0 * e / (f.q * (1.0 + e) ** 2)  # = 4 z/(1+qz)^2
    return f.V1 * bump - f.V2 * 0.5 * (1.0 - th) + f.V3 * 0.5 * (1.0 + th)


def evaluate_potential(m: PotentialModel, r, *, full_line: bool = False):
    """Potential V(r) of model ``m``.

    Parameters
    ----------
    m : PotentialModel
    r : float or array_like
        Radial coordinate (x for the trigonometric model).
    full_line : bool
        Permit r <= 0 for Rosen-Morse-like models, which are regular on the
        whole real line.

    Raises
    ------
    DomainError
        For r <= 0 (unless allowed), outside (0, pi/alpha) for the
        trigonometric model, or on the Eckart singularity when q > 1.
    """
    arr = np.asarray(r, dtype=float)
    scalar = arr.ndim == 0
    if isinstance(m, TrigRosenMorse):
        ax = m.alpha * arr
        if np.any(ax <= 0.0) or np.any(ax >= math.pi):
            raise DomainError("trigonometric Rosen-Morse is defined on 0 < x < pi/alpha only")
        out = m.V1 / np.sin(ax) ** 2 - m.V2 / np.tan(ax)
    else:
        f = family_of(m)
        if np.any(arr <= 0.0) and not (full_line and f.kind == ROSEN_MORSE_LIKE):
            raise DomainError("potential is defined for r > 0")
        out = _family_value(f, arr)
    return float(out) if scalar else out


@dataclass(frozen=True)
class DimensionalNumbers:
    """Dimension-dependent bookkeeping: l' = (D + 2l - 3)/2 and D + 2l."""

    D: int
    l: int
    l_prime: float
    script_M: int

    @property
    def ll1(self) -> float:
        """l'(l'+1), computed exactly as ((D+2l-2)^2 - 1)/4."""
        return ((self.script_M - 2) ** 2 - 1) / 4.0

    @property
    def is_s_wave_3d(self) -> bool:
        return self.D == 3 and self.l == 0


def dimensional_numbers(D: int, l: int) -> DimensionalNumbers:
    """Build the effective angular momentum for dimension ``D`` and orbital ``l``."""
    if int(D) != D or D < 1:
        raise ValueError(f"D must be an integer >= 1, got {D!r}")
    if int(l) != l or l < 0:
        raise ValueError(f"l must be an integer >= 0, got {l!r}")
    sm = int(D) + 2 * int(l)
    return DimensionalNumbers(int(D), int(l), (sm - 3) / 2.0, sm)


def centrifugal_approximation(dn: DimensionalNumbers, q: float, alpha: float, r):
    """Exponential stand-in for l'(l'+1)/r^2: ``4 a^2 l'(l'+1) z / (1 - q z)^2``."""
    arr = np.asarray(r, dtype=float)
    if np.any(arr <= 0.0):
        raise DomainError("centrifugal term requires r > 0")
    z = np.exp(-2.0 * alpha * arr)
    d = 1.0 - q * z
    if np.any(np.abs(d) < 1e-15):
        raise SingularPointError("q e^{-2 alpha r} = 1")
    out = 4.0 * alpha * alpha * dn.ll1 * z / d**2
    return float(out) if arr.ndim == 0 else out


def centrifugal_exact(dn: DimensionalNumbers, r):
    """The exact term l'(l'+1)/r^2."""
    arr = np.asarray(r, dtype=float)
    if np.any(arr <= 0.0):
        raise DomainError("centrifugal term requires r > 0")
    out = dn.ll1 / arr**2
    return float(out) if arr.ndim == 0 else out


@dataclass(frozen=True)
class CouplingSet:
    """Dimensionless couplings of one trial energy.

    ``epsilon = sqrt(M^2 - E^2)/Q``, ``beta``, ``gamma``, ``lam`` and the scale
    ``Q = 2 hbar_c alpha``.
    """

    epsilon: float
    beta: float
    gamma: float
    lam: float
    Q: float


def _require_family_wave(f: FamilyParams, dn: DimensionalNumbers):
    if f.kind == ROSEN_MORSE_LIKE and not dn.is_s_wave_3d:
        raise SWaveOnlyError("Rosen-Morse-like models are solved for l = 0, D = 3 only")


def couplings(
    m: PotentialModel,
    E: float,
    sign: int,
    M: float,
    dn: DimensionalNumbers,
    hbar_c: float = 1.0,
) -> CouplingSet:
    """Relativistic couplings at trial energy ``E`` for S = sign * V.

    Raises
    ------
    WindowError
        If ``|E| > M``.
    SWaveOnlyError
        Rosen-Morse-like model with l > 0 or D != 3.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if abs(E) > M:
        raise WindowError(f"|E| = {abs(E)!r} exceeds M = {M!r}")
    f = family_of(m)
    _require_family_wave(f, dn)
    Q = 2.0 * hbar_c * f.alpha
    X = E + sign * M
    eps = math.sqrt(M * M - E * E) / Q
    beta = 8.0 * X * f.V1 / Q**2
    if f.kind == ECKART_LIKE:
        beta += dn.ll1
    return CouplingSet(eps, beta, 2.0 * X * f.V2 / Q**2, 2.0 * X * f.V3 / Q**2, Q)


def nonrelativistic_couplings(
    m: PotentialModel,
    E: float,
    M: float,
    dn: DimensionalNumbers,
    hbar_c: float = 1.0,
    factor: float = 1.0,
) -> CouplingSet:
    """Schrodinger couplings for the potential ``factor * V`` (E <= 0).

    Same fields as the relativistic set with ``T = 2 hbar_c alpha`` in place
    of Q and ``2 M (...)`` in place of ``2 (E +- M)(...)``.
    """
    if E > 0:
        raise ValueError("non-relativistic couplings need E <= 0")
    f = family_of(m)
    _require_family_wave(f, dn)
    T = 2.0 * hbar_c * f.alpha
    g = factor * M
    beta = 8.0 * g * f.V1 / T**2
    if f.kind == ECKART_LIKE:
        beta += dn.ll1
    return CouplingSet(
        math.sqrt(-2.0 * M * E) / T, beta, 2.0 * g * f.V2 / T**2, 2.0 * g * f.V3 / T**2, T
    )


def to_hypergeometric(m: PotentialModel, cs: CouplingSet, family: str | None = None) -> HypergeometricCoefficients:
    """Coefficients (c1, c2, c3, A, B, C) of the canonical equation.

    ``family`` defaults to the model's own family.
    """
    f = family_of(m)
    kind = family or f.kind
    q = f.q
    e2 = cs.epsilon**2
    if kind == ECKART_LIKE:
        return HypergeometricCoefficients(
            1.0, q, q, q * q * (e2 + cs.lam), q * (2.0 * e2 + cs.lam - cs.gamma) - cs.beta, e2 - cs.gamma
        )
    if kind == ROSEN_MORSE_LIKE:
        return HypergeometricCoefficients(
            1.0, -q, -q, q * q * (e2 + cs.lam), -q * (2.0 * e2 + cs.lam - cs.gamma) - cs.beta, e2 - cs.gamma
        )
    raise ValueError(f"unknown family {kind!r}")


def trm_linear_correction(m: TrigRosenMorse, x):
    """Next Taylor terms ``V1/3 + V2 a x/3`` of the trigonometric model."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0):
        raise DomainError("correction requires x >= 0")
    out = m.V1 / 3.0 + m.V2 * m.alpha * arr / 3.0
    return float(out) if arr.ndim == 0 else out


def trm_small_x_expansion(m: TrigRosenMorse, x, correction: bool = False):
    """Small-x form ``-V2/(a x) + V1/(a x)^2`` of the trigonometric model.

    With ``correction`` the linear piece from :func:`trm_linear_correction`
    is added.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0):
        raise DomainError("expansion requires x > 0")
    ax = m.alpha * arr
    out = -m.V2 / ax + m.V1 / ax**2
    if correction:
        out = out + trm_linear_correction(m, arr)
    return float(out) if arr.ndim == 0 else out


def radial_q(
    m: PotentialModel,
    sign: int,
    dn: DimensionalNumbers,
    M: float,
    E: float,
    r,
    *,
    centrifugal: str = "approx",
    hbar_c: float = 1.0,
    full_line: bool = False,
):
    """Coefficient Q(r; E) of ``u'' + Q u = 0`` for S = sign * V.

    ``Q = (E^2 - M^2 - 2 (E + sign M) V(r)) / hbar_c^2 - L(r)`` where L is the
    exponential approximation (``centrifugal="approx"``), the exact
    ``l'(l'+1)/r^2`` (``"exact"``) or nothing (``"none"``).
    """
    arr = np.asarray(r, dtype=float)
    X = E + sign * M
    v = evaluate_potential(m, arr, full_line=full_line)
    out = (E * E - M * M - 2.0 * X * v) / hbar_c**2
    if dn.ll1 != 0.0 and centrifugal != "none":
        if centrifugal == "approx":
            f = family_of(m)
            out = out - centrifugal_approximation(dn, f.q, f.alpha, arr)
        elif centrifugal == "exact":
            out = out - centrifugal_exact(dn, arr)
        else:
            raise ValueError(f"unknown centrifugal mode {centrifugal!r}")
    return out
