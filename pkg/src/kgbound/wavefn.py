"""Closed-form radial wavefunctions, normalization, nodes and ODE residuals.

A located state is ``u(r) = z^p (1 -+ qz)^w P_n^(2p, 2w-1)(1 -+ 2qz)`` with
``z = exp(-2 a r)``; the upper signs belong to the Eckart-like family and
the lower ones to the Rosen-Morse-like family. Rosen-Morse-like states can
also be sampled on the whole real line, where the coordinate is x and R is
reported equal to u.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonNormalizableError, UnsupportedModelError
from .potentials import (ECKART_LIKE, ROSEN_MORSE_LIKE, PotentialModel, TrigRosenMorse, WoodsSaxon,
                         dimensional_numbers, family_of, radial_q)
from .specfun import JacobiParams, binomial_real, hyp2f1_terminating, jacobi_poly
from .spectrum import BoundState

__all__ = [
    "GridConfig",
    "RadialSample",
    "radial_u",
    "radial_u_hypergeometric",
    "radial_R",
    "normalize",
    "count_nodes",
    "ode_residual",
    "HALF_LINE",
    "FULL_LINE",
]

HALF_LINE = "half"
FULL_LINE = "full"


def _family(m: PotentialModel):
    if isinstance(m, TrigRosenMorse):
        raise UnsupportedModelError("trigonometric Rosen-Morse states are complex-valued")
    return family_of(m)


def _coords(m, r, full_line):
    f = _family(m)
    arr = np.asarray(r, dtype=float)
    if np.any(arr <= 0.0) and not (full_line and f.kind == ROSEN_MORSE_LIKE):
        raise DomainError("radial functions need r > 0")
    return f, arr


def _envelope_log(b: BoundState, f, arr):
    """log of z^p (1 -+ qz)^w, or raise where the base is not positive."""
    z2 = -2.0 * f.alpha * arr
    base = -f.upper * f.q * np.exp(z2)
    if np.any(base <= -1.0):
        raise DomainError("1 - q z must stay positive on the Eckart-like branch")
    return b.exponents.p * z2 + b.exponents.w * np.log1p(base)


def radial_u(b: BoundState, m: PotentialModel, r, *, full_line: bool = False):
    """Unnormalized closed-form u at ``r`` (array or scalar).

    Raises
    ------
    DomainError
        For r <= 0 unless ``full_line`` is set on a Rosen-Morse-like model.
    UnsupportedModelError
        For the trigonometric model.
    """
    f, arr = _coords(m, r, full_line)
    z = np.exp(-2.0 * f.alpha * arr)
    jp = JacobiParams(b.n, b.exponents.jacobi_alpha, b.exponents.jacobi_beta)
    out = np.exp(_envelope_log(b, f, arr)) * jacobi_poly(jp, 1.0 - 2.0 * f.upper * f.q * z)
    return float(out) if arr.ndim == 0 else out


def radial_u_hypergeometric(b: BoundState, m: PotentialModel, r, *, full_line: bool = False):
    """Same function as :func:`radial_u` through the terminating 2F1.

    ``C(n+2p, n) 2F1(-n, n + 2p + 2w; 2p + 1; +-qz)`` replaces the Jacobi
    polynomial.
    """
    f, arr = _coords(m, r, full_line)
    z = np.exp(-2.0 * f.alpha * arr)
    p, w, n = b.exponents.p, b.exponents.w, b.n
    series = hyp2f1_terminating(n, n + 2.0 * p + 2.0 * w, 2.0 * p + 1.0, f.upper * f.q * z)
    out = np.exp(_envelope_log(b, f, arr)) * binomial_real(n + 2.0 * p, n) * series
    return float(out) if arr.ndim == 0 else out


def radial_R(b: BoundState, m: PotentialModel, r, D: int | None = None, norm: float = 1.0):
    """``R = norm * r^{-(D-1)/2} u(r)``; ``D`` defaults to the state's dimension."""
    D = b.D if D is None else D
    arr = np.asarray(r, dtype=float)
    out = norm * arr ** (-(D - 1) / 2.0) * radial_u(b, m, arr)
    return float(out) if arr.ndim == 0 else out


@dataclass(frozen=True)
class GridConfig:
    """Composite Gauss-Legendre layout for normalization.

    Attributes
    ----------
    panels : int
        Number of equal panels on the integration interval.
    order : int
        Gauss-Legendre nodes per panel.
    r_min_factor : float
        Inner cut r_min = r_min_factor / alpha (half-line only).
    tail_tol : float
        Bound on the omitted tail relative to the integral.
    residual_points : int
        Uniform points used for the stored ODE residual.
    """

    panels: int = 200
    order: int = 16
    r_min_factor: float = 1e-6
    tail_tol: float = 1e-12
    residual_points: int = 4001

    def doubled(self) -> "GridConfig":
        return GridConfig(2 * self.panels, self.order, self.r_min_factor, self.tail_tol, self.residual_points)


@dataclass(frozen=True)
class RadialSample:
    """Normalized samples of one state.

    ``grid`` holds the quadrature nodes (strictly increasing), ``weights``
    their Gauss-Legendre weights, so ``sum(weights * u_values**2) == 1``.
    """

    grid: np.ndarray
    u_values: np.ndarray
    R_values: np.ndarray
    weights: np.ndarray
    normalization_constant: float
    node_count: int
    max_ode_residual: float
    domain: str = HALF_LINE

    def norm(self) -> float:
        return float(np.sum(self.weights * self.u_values**2))

    def to_csv(self) -> str:
        """CSV with header ``r,u,R`` and 12 significant digits per value."""
        buf = io.StringIO()
        buf.write("r,u,R\n")
        for r, u, R in zip(self.grid, self.u_values, self.R_values):
            buf.write(f"{r:.11e},{u:.11e},{R:.11e}\n")
        return buf.getvalue()


def _gl_grid(lo: float, hi: float, panels: int, order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _default_domain(m: PotentialModel) -> str:
    # Woods-Saxon is radial: w = 0 rules out decay toward x -> -infinity
    if isinstance(m, WoodsSaxon) or _family(m).kind != ROSEN_MORSE_LIKE:
        return HALF_LINE
    return FULL_LINE


def _check_decay(b: BoundState, kind: str, domain: str):
    ex = b.exponents
    if not ex.p > 0:
        raise NonNormalizableError(f"z-exponent p = {ex.p:.6g} is not positive; u grows at large r")
    if domain == HALF_LINE and kind == ECKART_LIKE and not ex.w > 0:
        raise NonNormalizableError(f"w = {ex.w:.6g} is not positive; u is singular at the origin")
    if domain == FULL_LINE:
        if kind != ROSEN_MORSE_LIKE:
            raise NonNormalizableError("only Rosen-Morse-like states live on the full line")
        if not ex.p + ex.w + b.n < 0:
            raise NonNormalizableError("p + w + n is not negative; u grows as x -> -infinity")


def normalize(b: BoundState, m: PotentialModel, grid_config: GridConfig | None = None,
              domain: str | None = None) -> RadialSample:
    """Numerically normalize a state and sample it on the quadrature nodes.

    The outer end (and, on the full line, the inner end) is pushed out until
    the analytically known exponential tail is below ``tail_tol`` of the
    integral.

    Raises
    ------
    NonNormalizableError
        When the closed form does not decay where it must.
    """
    cfg = grid_config or GridConfig()
    f = _family(m)
    domain = domain or _default_domain(m)
    if domain not in (HALF_LINE, FULL_LINE):
        raise ValueError(f"unknown domain {domain!r}")
    _check_decay(b, f.kind, domain)
    full = domain == FULL_LINE
    ex = b.exponents
    a = f.alpha
    k_right = 4.0 * a * ex.p
    k_left = 4.0 * a * -(ex.p + ex.w + b.n) if full else None
    span = -math.log(cfg.tail_tol) + 10.0
    hi = span / k_right + (b.n + 2.0) / a
    lo = -(span / k_left + (b.n + 2.0) / a) if full else cfg.r_min_factor / a
    for _ in range(60):
        nodes, weights = _gl_grid(lo, hi, cfg.panels, cfg.order)
        u = radial_u(b, m, nodes, full_line=full)
        total = float(np.sum(weights * u**2))
        if not (math.isfinite(total) and total > 0):
            raise NonNormalizableError("quadrature of u^2 is not a positive finite number")
        ue = radial_u(b, m, np.array([lo, hi]), full_line=full)
        tail = ue[1] ** 2 / k_right
        if full:
            tail += ue[0] ** 2 / k_left
        if tail <= cfg.tail_tol * total:
            break
        width = hi - lo
        hi += 0.5 * width
        if full:
            lo -= 0.5 * width
    c = 1.0 / math.sqrt(total)
    u = c * u
    R = u if full else c * radial_R(b, m, nodes)
    res_grid = np.linspace(nodes[0], nodes[-1], cfg.residual_points)
    res = ode_residual(b, m, res_grid, full_line=full)
    return RadialSample(nodes, u, R, weights, c, count_nodes_values(u), res, domain)


def count_nodes_values(u, deadband: float = 1e-12) -> int:
    """Strict sign changes of ``u``, ignoring values within the dead-band."""
    u = np.asarray(u, dtype=float)
    if u.size == 0:
        return 0
    thr = deadband * float(np.max(np.abs(u)))
    signs = np.sign(u[np.abs(u) > thr])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def count_nodes(s: RadialSample) -> int:
    """Number of sign changes of u on the sample's grid."""
    return count_nodes_values(s.u_values)


def ode_residual(b: BoundState, m: PotentialModel, grid, *, richardson: bool = True,
                 floor_fraction: float = 1e-3, full_line: bool = False) -> float:
    """Max relative residual of ``u'' + Q u`` on a uniform grid.

    ``u''`` comes from centred second differences at spacings h, 2h and 3h,
    combined by Richardson extrapolation (weights 3/2, -3/5, 1/10) so the
    h^2 and h^4 error terms cancel. With ``richardson`` off only the
    spacing-h difference is used. Each interior point contributes
    ``|u'' + Q u| / (|Q u| + |u''| + floor)`` where
    ``floor = floor_fraction * max(|Q u| + |u''|)`` keeps isolated zeros of
    u and Q from dominating. Q uses the approximated centrifugal term.
    """
    x = np.asarray(grid, dtype=float)
    if x.ndim != 1 or x.size < 7:
        raise ValueError("grid must be 1-D with at least 7 points")
    h = (x[-1] - x[0]) / (x.size - 1)
    if not np.allclose(np.diff(x), h, rtol=1e-9, atol=0):
        raise ValueError("ode_residual needs a uniform grid")
    u = radial_u(b, m, x, full_line=full_line)
    c = u[3:-3]

    def second(k):
        return (u[3 + k : u.size - 3 + k] - 2.0 * c + u[3 - k : u.size - 3 - k]) / (k * h) ** 2

    upp = 1.5 * second(1) - 0.6 * second(2) + 0.1 * second(3) if richardson else second(1)
    q = radial_q(m, b.sign_branch, _dn(b), b.M, b.E, x[3:-3], hbar_c=b.hbar_c, full_line=full_line)
    qu = q * c
    scale = np.abs(qu) + np.abs(upp)
    floor = floor_fraction * float(np.max(scale))
    return float(np.max(np.abs(upp + qu) / (scale + floor + 1e-300)))


def _dn(b: BoundState):
    return dimensional_numbers(b.D, b.l)
