"""Bound-state energies: transcendental residuals, root scanning, NR limits.

For the exponential families the energy equation reads

    M^2 - E^2 = (hc a)^2 k^2 + X^2 (V2+V3)^2 / ((2 hc a)^2 k^2) + X (V2 - V3)

with ``X = E + sign*M`` and ``k = n + w(E)``, where

    w = (1 + sqrt(1 + 4 l'(l'+1)/q + 8 X V1 / (q (hc a)^2))) / 2   (Eckart-like)
    w = (1 - sqrt(1 - 8 X V1 / (q (hc a)^2))) / 2                  (Rosen-Morse-like)

The z-exponent of the matching solution is the *signed* quantity
``p = ((gamma + lam)/k - k)/2``. Its magnitude equals ``sqrt(eps^2 - gamma)``
at every root, but only its sign tells whether the closed form decays as
r -> infinity, so it is kept signed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ComplexBranchError, SWaveOnlyError, UnsupportedModelError, WindowError
from .nu import derive_parameters, tau_prime
from .potentials import (
    ECKART_LIKE,
    ROSEN_MORSE_LIKE,
    DimensionalNumbers,
    EckartType,
    Hulthen,
    PotentialModel,
    RosenMorseWell,
    StandardEckart,
    TrigRosenMorse,
    WoodsSaxon,
    couplings,
    family_of,
    to_hypergeometric,
)

__all__ = [
    "COMPLEX_WINDOW",
    "ScanConfig",
    "WaveExponents",
    "Admissibility",
    "BoundState",
    "energy_residual",
    "family_residual",
    "state_exponents",
    "find_bound_states",
    "nonrelativistic_energy",
    "nonrelativistic_exponents",
    "classify_branch",
    "is_free",
]

SCHRODINGER_V = "schrodinger-V"
KG_LIMIT_2V = "kg-limit-2V"


class _ComplexWindow:
    """Marker returned where the energy equation has no real value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "COMPLEX_WINDOW"

    def __reduce__(self):
        return (_ComplexWindow, ())


COMPLEX_WINDOW = _ComplexWindow()


@dataclass(frozen=True)
class ScanConfig:
    """Root-scan settings.

    Attributes
    ----------
    grid_points : int
        Uniform samples over the open window (-M(1-eta), M(1-eta)).
    eta : float
        Relative shrink of the window edges.
    tol_root : float or None
        Absolute energy tolerance; ``None`` means ``1e-10 * M``.
    hbar_c : float
        Unit scale; 1 in natural units.
    """

    grid_points: int = 2048
    eta: float = 1e-9
    tol_root: float | None = None
    hbar_c: float = 1.0

    def __post_init__(self):
        if self.grid_points < 64:
            raise ValueError("grid_points must be >= 64")
        if self.tol_root is not None and not self.tol_root > 0:
            raise ValueError("tol_root must be positive")
        if not 0 <= self.eta < 1:
            raise ValueError("eta must lie in [0, 1)")

    def tolerance(self, M: float) -> float:
        return self.tol_root if self.tol_root is not None else 1e-10 * M


@dataclass(frozen=True)
class WaveExponents:
    """Exponents of u = z^p (1 -+ qz)^w P_n^(2p, 2w-1)(1 -+ 2qz)."""

    p: float
    w: float
    jacobi_alpha: float
    jacobi_beta: float


@dataclass(frozen=True)
class Admissibility:
    """Diagnostic flags attached to a root; never used to filter."""

    p_positive: bool
    w_positive: bool
    tau_prime_negative: bool
    classical_jacobi_range: bool
    full_line_decay: bool

    def names(self) -> list[str]:
        """Names of the flags that hold, in declaration order."""
        return [k for k in self.__dataclass_fields__ if getattr(self, k)]


@dataclass(frozen=True)
class BoundState:
    """A located root of the energy equation with its exponents and flags."""

    n: int
    l: int
    D: int
    sign_branch: int
    E: float
    exponents: WaveExponents
    admissible: Admissibility
    M: float = field(default=1.0)
    residual: float = field(default=0.0)
    hbar_c: float = field(default=1.0)


def _check_wave(m: PotentialModel, dn: DimensionalNumbers):
    if isinstance(m, TrigRosenMorse):
        return
    if family_of(m).kind == ROSEN_MORSE_LIKE and not dn.is_s_wave_3d:
        raise SWaveOnlyError("Rosen-Morse-like models are solved for l = 0, D = 3 only")


def _family_w(f, X: float, dn: DimensionalNumbers, hbar_c: float):
    """w(E) for the family, or None when its square root is complex."""
    hca2 = (hbar_c * f.alpha) ** 2
    if f.kind == ECKART_LIKE:
        rad = 1.0 + 4.0 * dn.ll1 / f.q + 8.0 * X * f.V1 / (f.q * hca2)
        return None if rad < 0 else 0.5 * (1.0 + math.sqrt(rad))
    rad = 1.0 - 8.0 * X * f.V1 / (f.q * hca2)
    return None if rad < 0 else 0.5 * (1.0 - math.sqrt(rad))


def family_residual(m: PotentialModel, n: int, dn: DimensionalNumbers, sign: int, M: float, E: float,
                    hbar_c: float = 1.0):
    """Squared-form energy equation of the model's exponential family.

    Returns ``LHS - RHS`` or :data:`COMPLEX_WINDOW`.
    """
    f = family_of(m)
    X = E + sign * M
    w = _family_w(f, X, dn, hbar_c)
    if w is None:
        return COMPLEX_WINDOW
    k = n + w
    if k == 0.0:
        return COMPLEX_WINDOW
    hca = hbar_c * f.alpha
    rhs = hca**2 * k**2 + X**2 * (f.V2 + f.V3) ** 2 / ((2.0 * hca) ** 2 * k**2) + X * (f.V2 - f.V3)
    return M * M - E * E - rhs


def _trm_w(m: TrigRosenMorse, X: float, dn: DimensionalNumbers, hbar_c: float):
    rad = (1.0 + 2.0 * dn.l_prime) ** 2 + 8.0 * X * m.V1 / (hbar_c * m.alpha) ** 2
    return None if rad < 0 else 0.5 * (1.0 + math.sqrt(rad))


def energy_residual(m: PotentialModel, n: int, dn: DimensionalNumbers, sign: int, M: float, E: float,
                    hbar_c: float = 1.0):
    """LHS - RHS of the model's energy equation at trial energy ``E``.

    Eckart-like and Rosen-Morse-like models use the squared family equation.
    The Hulthen and Woods-Saxon models use their own unsquared forms,
    ``sqrt(M^2-E^2) - hc a (n+nu)/2 + X V0/(hc a (n+nu))`` and
    ``sqrt(M^2-E^2) - hc a (n/2 + X V0/((hc a)^2 n))``. The trigonometric
    model uses ``M^2 - E^2 - X^2 V2^2/((hc a)^2 k^2) + (hc a)^2 k^2``.

    Returns
    -------
    float or COMPLEX_WINDOW
        The sentinel marks energies where w(E) is complex or k = 0.

    Raises
    ------
    WindowError
        If ``|E| >= M``.
    SWaveOnlyError
        Rosen-Morse-like model with l > 0 or D != 3.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    if not abs(E) < M:
        raise WindowError(f"|E| = {abs(E)!r} is not inside (-{M!r}, {M!r})")
    _check_wave(m, dn)
    X = E + sign * M
    if isinstance(m, Hulthen):
        hca = hbar_c * m.alpha
        nu = (dn.script_M - 1) / 2.0
        return math.sqrt(M * M - E * E) - (hca * (n + nu) / 2.0 - X * m.V0 / (hca * (n + nu)))
    if isinstance(m, WoodsSaxon):
        if n == 0:
            raise ValueError("the Woods-Saxon energy equation needs n >= 1")
        hca = hbar_c * m.alpha
        return math.sqrt(M * M - E * E) - hca * (n / 2.0 + X * m.V0 / (hca**2 * n))
    if isinstance(m, TrigRosenMorse):
        w = _trm_w(m, X, dn, hbar_c)
        if w is None or n + w == 0.0:
            return COMPLEX_WINDOW
        hca = hbar_c * m.alpha
        k = n + w
        return M * M - E * E - X**2 * m.V2**2 / (hca**2 * k**2) + hca**2 * k**2
    return family_residual(m, n, dn, sign, M, E, hbar_c)


def state_exponents(m: PotentialModel, n: int, dn: DimensionalNumbers, sign: int, M: float, E: float,
                    hbar_c: float = 1.0) -> tuple[WaveExponents, Admissibility]:
    """Signed exponents and admissibility flags at energy ``E``.

    For the trigonometric model the z-exponent is complex; ``p`` then holds
    its real part ``(n + w)/2``.

    Raises
    ------
    ComplexBranchError
        If w(E) is complex at this energy.
    """
    X = E + sign * M
    if isinstance(m, TrigRosenMorse):
        w = _trm_w(m, X, dn, hbar_c)
        if w is None:
            raise ComplexBranchError("w is complex at this energy")
        p = 0.5 * (n + w)
        ex = WaveExponents(p, w, 2.0 * p, 2.0 * w - 1.0)
        return ex, Admissibility(p > 0, w > 0, False, 2.0 * p > -1.0 and w > 0, False)
    f = family_of(m)
    w = _family_w(f, X, dn, hbar_c)
    if w is None:
        raise ComplexBranchError("w is complex at this energy")
    k = n + w
    cs = couplings(m, E, sign, M, dn, hbar_c)
    p = 0.5 * ((cs.gamma + cs.lam) / k - k)
    try:
        tpn = tau_prime(derive_parameters(to_hypergeometric(m, cs))) < 0
    except ComplexBranchError:
        tpn = False
    full = f.kind == ROSEN_MORSE_LIKE and p > 0 and p + w + n < 0
    ex = WaveExponents(p, w, 2.0 * p, 2.0 * w - 1.0)
    return ex, Admissibility(p > 0, w > 0, tpn, 2.0 * p > -1.0 and w > 0, full)


def is_free(m: PotentialModel) -> bool:
    """True when every coupling of the model vanishes."""
    if isinstance(m, TrigRosenMorse):
        return m.V1 == 0 and m.V2 == 0
    f = family_of(m)
    return f.V1 == 0 and f.V2 == 0 and f.V3 == 0


def _is_num(v) -> bool:
    return v is not COMPLEX_WINDOW and math.isfinite(v)


def _bisect(fun, lo: float, hi: float, flo: float):
    """Bisect to float exhaustion; returns None if the bracket breaks."""
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = fun(mid)
        if not _is_num(fm):
            return None
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo if abs(flo) <= abs(fun(hi)) else hi


def find_bound_states(
    m: PotentialModel,
    n: int,
    dn: DimensionalNumbers,
    branches=(1, -1),
    M: float = 1.0,
    scan: ScanConfig | None = None,
) -> list[BoundState]:
    """Every real root of the energy equation inside (-M, M).

    The residual is sampled on a uniform grid, sign changes between finite
    neighbours are bisected to float resolution and roots whose residual is
    not below ``10 * tol_root`` (pole crossings) are dropped. Segments
    touching the complex window are skipped. A model whose couplings all
    vanish has no bound states and returns an empty list.

    Returns
    -------
    list of BoundState
        Sorted by descending energy.
    """
    scan = scan or ScanConfig()
    _check_wave(m, dn)
    if is_free(m):
        return []
    tol = scan.tolerance(M)
    hc = scan.hbar_c
    edge = M * (1.0 - scan.eta)
    grid = np.linspace(-edge, edge, scan.grid_points)
    out: list[BoundState] = []
    for sign in sorted(set(branches), reverse=True):
        def fun(E, sign=sign):
            return energy_residual(m, n, dn, sign, M, E, hc)

        vals = [fun(float(E)) for E in grid]
        roots = []
        for i, v in enumerate(vals):
            if _is_num(v) and v == 0.0:
                roots.append(float(grid[i]))
        for i in range(len(grid) - 1):
            a, b = vals[i], vals[i + 1]
            if not (_is_num(a) and _is_num(b)) or a == 0.0 or b == 0.0:
                continue
            if (a < 0) != (b < 0):
                r = _bisect(fun, float(grid[i]), float(grid[i + 1]), a)
                if r is not None:
                    roots.append(r)
        for E in roots:
            res = fun(E)
            if not (_is_num(res) and abs(res) < 10.0 * tol):
                continue
            try:
                ex, adm = state_exponents(m, n, dn, sign, M, E, hc)
            except ComplexBranchError:
                continue
            out.append(BoundState(n, dn.l, dn.D, sign, E, ex, adm, M, res, hc))
    out.sort(key=lambda b: (-b.E, -b.sign_branch))
    return out


def classify_branch(b: BoundState) -> str:
    """``"particle"`` for E >= 0, ``"antiparticle"`` otherwise."""
    return "particle" if b.E >= 0 else "antiparticle"


def _nr_factor(mode: str) -> float:
    if mode == SCHRODINGER_V:
        return 1.0
    if mode == KG_LIMIT_2V:
        return 2.0
    raise ValueError(f"unknown mode {mode!r}; expected {SCHRODINGER_V!r} or {KG_LIMIT_2V!r}")


def _nr_k(m: PotentialModel, n: int, dn: DimensionalNumbers, M: float, g: float, hbar_c: float):
    """(k = n + w, hc*alpha, V2-like coupling) of the closed NR forms."""
    if isinstance(m, (EckartType, StandardEckart)):
        f = family_of(m)
        if f.V2 != f.V3:
            raise UnsupportedModelError("the closed NR Eckart form needs V2 = V3")
        hca = hbar_c * f.alpha
        rad = 1.0 + 4.0 * dn.ll1 / f.q + 8.0 * g * M * f.V1 / (f.q * hca**2)
        if rad < 0:
            raise ComplexBranchError("w1 is complex")
        return n + 0.5 * (1.0 + math.sqrt(rad)), hca, f.V2, 0.5 * (1.0 + math.sqrt(rad))
    if isinstance(m, RosenMorseWell):
        _check_wave(m, dn)
        hca = hbar_c * m.alpha
        rad = 1.0 + 8.0 * g * M * m.V1 / (m.q * hca**2)
        if rad < 0:
            raise ComplexBranchError("delta is complex")
        d = 0.5 * (1.0 - math.sqrt(rad))
        return n + d, hca, m.V2, d
    raise UnsupportedModelError(f"no closed non-relativistic form for {type(m).__name__}")


def nonrelativistic_energy(m: PotentialModel, n: int, dn: DimensionalNumbers, M: float,
                           mode: str = SCHRODINGER_V, hbar_c: float = 1.0) -> float:
    """Closed-form Schrodinger eigenvalue for the potential V or 2V.

    ``mode="schrodinger-V"`` solves with V itself, ``mode="kg-limit-2V"``
    with the sum potential 2V reached from the relativistic equation by
    E + M -> 2M. With g = 1 or 2 for the two modes:

    * Eckart-like with V2 = V3 (EckartType, StandardEckart):
      ``E = -[(hc a)^2 k^2 + g^2 M^2 V2^2/((hc a)^2 k^2)] / (2M)``,
      ``k = n + (1 + sqrt(1 + 4l'(l'+1)/q + 8 g M V1/(q (hc a)^2)))/2``.
    * RosenMorseWell (s-wave): same bracket with
      ``k = n + (1 - sqrt(1 + 8 g M V1/(q (hc a)^2)))/2``.
    * WoodsSaxon (n >= 1): ``E = -[n hc a/2 + g M V0/(hc a n)]^2 / (2M)``.

    Raises
    ------
    UnsupportedModelError
        For any other model, or an EckartType with V2 != V3.
    """
    g = _nr_factor(mode)
    if isinstance(m, WoodsSaxon):
        if n < 1:
            raise ValueError("the Woods-Saxon closed form needs n >= 1")
        _check_wave(m, dn)
        hca = hbar_c * m.alpha
        return -((n * hca / 2.0 + g * M * m.V0 / (hca * n)) ** 2) / (2.0 * M)
    k, hca, v2, _ = _nr_k(m, n, dn, M, g, hbar_c)
    return -(hca**2 * k**2 + g**2 * M**2 * v2**2 / (hca**2 * k**2)) / (2.0 * M)


def nonrelativistic_exponents(m: PotentialModel, n: int, dn: DimensionalNumbers, M: float,
                              mode: str = SCHRODINGER_V, hbar_c: float = 1.0) -> WaveExponents:
    """Signed exponents of the closed NR state, same convention as :class:`WaveExponents`.

    A negative ``p`` means the closed form grows at large r and is not a
    normalizable eigenfunction.
    """
    g = _nr_factor(mode)
    if isinstance(m, WoodsSaxon):
        if n < 1:
            raise ValueError("the Woods-Saxon closed form needs n >= 1")
        hca = hbar_c * m.alpha
        p = -(n / 2.0 + g * M * m.V0 / (hca**2 * n))
        return WaveExponents(p, 0.0, 2.0 * p, -1.0)
    k, hca, v2, w = _nr_k(m, n, dn, M, g, hbar_c)
    f = family_of(m)
    # gamma + lam = 2 * 2 g M V2 / T^2 with T = 2 hc a, written with the family's own V2
    gl = 4.0 * g * M * f.V2 / (4.0 * (hbar_c * f.alpha) ** 2)
    p = 0.5 * (gl / k - k)
    return WaveExponents(p, w, 2.0 * p, 2.0 * w - 1.0)
