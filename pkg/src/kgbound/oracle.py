"""Shooting-method eigenvalue oracle for ``u'' + Q(r; E) u = 0``.

This module shares nothing with the closed-form solver except the
potential definitions. Half-line problems are integrated with Numerov's
scheme on a logarithmic grid r = e^t, where ``u = e^{t/2} v`` turns the
equation into ``v'' + (r^2 Q - 1/4) v = 0`` and the r -> 0 behaviour
becomes a plain exponential. Full-line problems use a uniform grid.

Two trial solutions are grown from the two boundaries toward a matching
point. Their Numerov Casoratian ``y_L[m] y_R[m+1] - y_L[m+1] y_R[m]``
(with ``y = (1 + h^2 g/12) v``) is exactly conserved along the grid, so
its sign does not depend on the matching index and its zeros are the
discrete eigenvalues. Divided by the local magnitudes of both solutions
it is scale-free and has no poles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import NoSignChangeError, UnsupportedModelError
from .potentials import (
    ROSEN_MORSE_LIKE,
    DimensionalNumbers,
    PotentialModel,
    TrigRosenMorse,
    WoodsSaxon,
    centrifugal_approximation,
    centrifugal_exact,
    evaluate_potential,
    family_of,
    radial_q,
)

__all__ = [
    "RELATIVISTIC_APPROX",
    "RELATIVISTIC_EXACT",
    "NONREL_V",
    "NONREL_2V",
    "HALF_LINE",
    "FULL_LINE",
    "EffectiveEquation",
    "IntegratorConfig",
    "build_effective",
    "default_domain",
    "mismatch",
    "shoot_eigenvalue",
    "shoot_state",
    "locate_eigenvalue",
    "scan_eigenvalues",
    "approximation_error",
    "approximation_error_csv",
]

RELATIVISTIC_APPROX = "relativistic-approx"
RELATIVISTIC_EXACT = "relativistic-exact-centrifugal"
NONREL_V = "nonrel-V"
NONREL_2V = "nonrel-2V"
MODES = (RELATIVISTIC_APPROX, RELATIVISTIC_EXACT, NONREL_V, NONREL_2V)

HALF_LINE = "half"
FULL_LINE = "full"

_BIG = 1e150


@dataclass(frozen=True)
class EffectiveEquation:
    """The radial ODE ``u'' + Q(r; E) u = 0`` plus its domain.

    Attributes
    ----------
    q : callable
        ``q(r, E)`` evaluated on arrays of r.
    domain : str
        ``"half"`` (0 < r < inf, u(0) = 0) or ``"full"`` (-inf < x < inf,
        decay at both ends).
    alpha : float
        Screening of the potential; sets the length scale.
    M : float
        Mass scale, used for tolerances.
    mode : str
        The mode the equation was built for.
    """

    q: Callable[[np.ndarray, float], np.ndarray]
    domain: str
    alpha: float
    M: float
    mode: str

    def Q(self, r, E: float):
        return self.q(np.asarray(r, dtype=float), E)

    def q_limits(self, E: float) -> tuple[float, float]:
        """Q far to the left (full line only, else nan) and far to the right."""
        far = 1e4 / self.alpha
        right = float(self.q(np.array([far]), E)[0])
        # exp(2 alpha x) must not overflow on the left
        left = float(self.q(np.array([-150.0 / self.alpha]), E)[0]) if self.domain == FULL_LINE else math.nan
        return left, right


@dataclass(frozen=True)
class IntegratorConfig:
    """Numerov integration settings.

    Attributes
    ----------
    phase_step : float
        Upper bound on ``h * sqrt(|g|)`` per step (local phase or decay).
    max_step : float
        Largest step: in t = ln r on the half line, in alpha * x on the full line.
    r_min_factor : float
        Inner cut r_min = r_min_factor / alpha.
    decay_efolds : float
        How many e-folds of decay past the last turning point are kept.
    tol_factor : float
        Bisection stops when the bracket is below ``tol_factor * M``.
    max_points : int
        Guard on grid size.
    """

    phase_step: float = 0.04
    max_step: float = 0.02
    r_min_factor: float = 1e-6
    decay_efolds: float = 40.0
    tol_factor: float = 1e-9
    max_points: int = 2_000_000

    def halved(self) -> "IntegratorConfig":
        return replace(self, phase_step=0.5 * self.phase_step, max_step=0.5 * self.max_step)


def build_effective(
    m: PotentialModel,
    sign: int,
    dn: DimensionalNumbers,
    M: float,
    mode: str = RELATIVISTIC_APPROX,
    hbar_c: float = 1.0,
    domain: str | None = None,
    exact_centrifugal: bool = False,
) -> EffectiveEquation:
    """Assemble Q(r; E) for one model, branch and mode.

    * relativistic modes: ``Q = E^2 - M^2 - 2 (E + sign M) V - L``
      (divided by hbar_c^2), with L the exponential approximation or the
      exact ``l'(l'+1)/r^2``;
    * non-relativistic modes: ``Q = 2 M (E - g V) / hbar_c^2 - L`` with
      g = 1 (``nonrel-V``) or 2 (``nonrel-2V``); L is the exponential
      approximation unless ``exact_centrifugal`` is set.

    ``domain`` defaults to :func:`default_domain`.

    Raises
    ------
    UnsupportedModelError
        For the trigonometric model, an unknown mode, or a full-line request
        on an Eckart-like model.
    """
    if mode not in MODES:
        raise UnsupportedModelError(f"unknown mode {mode!r}; expected one of {MODES}")
    if isinstance(m, TrigRosenMorse):
        raise UnsupportedModelError("the oracle does not handle the trigonometric model")
    f = family_of(m)
    dom = domain or default_domain(m)
    if dom not in (HALF_LINE, FULL_LINE):
        raise ValueError(f"unknown domain {dom!r}")
    if dom == FULL_LINE and f.kind != ROSEN_MORSE_LIKE:
        raise UnsupportedModelError("only Rosen-Morse-like potentials are regular on the full line")
    if dom == FULL_LINE and dn.ll1 != 0.0:
        raise UnsupportedModelError("full-line problems carry no centrifugal term")
    full = dom == FULL_LINE
    hc2 = hbar_c**2

    if mode in (RELATIVISTIC_APPROX, RELATIVISTIC_EXACT):
        cf = "approx" if mode == RELATIVISTIC_APPROX else "exact"

        def q(r, E):
            return radial_q(m, sign, dn, M, E, r, centrifugal=cf, hbar_c=hbar_c, full_line=full)
    else:
        g = 1.0 if mode == NONREL_V else 2.0
        cf = "exact" if exact_centrifugal else "approx"

        def q(r, E):
            v = evaluate_potential(m, r, full_line=full)
            out = 2.0 * M * (E - g * v) / hc2
            if dn.ll1 != 0.0:
                if cf == "approx":
                    out = out - centrifugal_approximation(dn, f.q, f.alpha, r)
                else:
                    out = out - centrifugal_exact(dn, r)
            return out

    return EffectiveEquation(q, dom, f.alpha, M, mode)


def default_domain(m: PotentialModel) -> str:
    """Full line for Rosen-Morse-like wells, half line for radial models.

    Woods-Saxon is Rosen-Morse-like in form but is a radial potential and
    its states never decay toward x -> -infinity, so it stays on r > 0.
    """
    if isinstance(m, WoodsSaxon) or family_of(m).kind != ROSEN_MORSE_LIKE:
        return HALF_LINE
    return FULL_LINE


@dataclass(frozen=True)
class _Mesh:
    coord: np.ndarray  # r (half) or x (full)
    h: float
    log: bool
    match: int


def _turning_span(eq: EffectiveEquation, E: float):
    """Coarse [first, last] coordinates where Q > 0.

    Without a classically allowed region there is nothing to resolve and a
    nominal point one screening length out is returned.
    """
    a = eq.alpha
    if eq.domain == HALF_LINE:
        probe = np.geomspace(1e-5 / a, 1e3 / a, 4000)
    else:
        probe = np.linspace(-100.0 / a, 100.0 / a, 8001)
    qv = eq.Q(probe, E)
    if eq.domain == HALF_LINE:
        qv = qv - 0.25 / probe**2
    pos = np.nonzero(qv > 0)[0]
    if pos.size == 0:
        ref = 1.0 / a if eq.domain == HALF_LINE else 0.0
        return ref, ref
    return float(probe[pos[0]]), float(probe[pos[-1]])


def _decay_rates(eq: EffectiveEquation, energies):
    """Smallest asymptotic decay rates over the given energies (left, right)."""
    kl, kr = math.inf, math.inf
    for E in energies:
        ql, qr = eq.q_limits(E)
        if not qr < 0 or (eq.domain == FULL_LINE and not ql < 0):
            raise ValueError(f"E = {E!r} lies in the continuum of this equation")
        kr = min(kr, math.sqrt(-qr))
        if eq.domain == FULL_LINE:
            kl = min(kl, math.sqrt(-ql))
    return kl, kr


def _build_mesh(eq: EffectiveEquation, energies, cfg: IntegratorConfig) -> _Mesh:
    a = eq.alpha
    kl, kr = _decay_rates(eq, energies)
    spans = [_turning_span(eq, E) for E in energies]
    lo_turn = min(s[0] for s in spans)
    hi_turn = max(s[1] for s in spans)
    Emid = 0.5 * (min(energies) + max(energies))
    if eq.domain == HALF_LINE:
        r_min = cfg.r_min_factor / a
        r_max = max(hi_turn, 1.0 / a) + cfg.decay_efolds / kr
        t_lo, t_hi = math.log(r_min), math.log(r_max)
        probe_t = np.linspace(t_lo, t_hi, 4001)
        probe_r = np.exp(probe_t)
        gmax = max(float(np.max(np.abs(probe_r**2 * eq.Q(probe_r, E) - 0.25))) for E in energies)
        h = min(cfg.max_step, cfg.phase_step / math.sqrt(gmax))
        npts = int(math.ceil((t_hi - t_lo) / h)) + 1
        if npts > cfg.max_points:
            raise ValueError("integration grid would be too large")
        t = np.linspace(t_lo, t_hi, npts)
        r = np.exp(t)
        g = r**2 * eq.Q(r, Emid) - 0.25
        match = _match_index(g)
        return _Mesh(r, float(t[1] - t[0]), True, match)
    x_lo = min(lo_turn, 0.0) - cfg.decay_efolds / kl
    x_hi = max(hi_turn, 0.0) + cfg.decay_efolds / kr
    probe = np.linspace(x_lo, x_hi, 4001)
    qmax = max(float(np.max(np.abs(eq.Q(probe, E)))) for E in energies)
    h = min(cfg.max_step / a, cfg.phase_step / math.sqrt(qmax))
    npts = int(math.ceil((x_hi - x_lo) / h)) + 1
    if npts > cfg.max_points:
        raise ValueError("integration grid would be too large")
    x = np.linspace(x_lo, x_hi, npts)
    match = _match_index(eq.Q(x, Emid))
    return _Mesh(x, float(x[1] - x[0]), False, match)


def _match_index(g: np.ndarray) -> int:
    pos = np.nonzero(g > 0)[0]
    k = int(pos[-1]) if pos.size else int(np.argmax(g))
    return min(max(k, 2), g.size - 4)


def _numerov(T, y0: float, y1: float, stop: int) -> list:
    """Run ``y[i+1] = T[i] y[i] - y[i-1]`` from i = 1 up to index ``stop``."""
    y = [0.0] * (stop + 1)
    y[0], y[1] = y0, y1
    for i in range(1, stop):
        nxt = T[i] * y[i] - y[i - 1]
        y[i + 1] = nxt
        if abs(nxt) > _BIG:
            for j in range(i + 2):
                y[j] /= _BIG
    return y


def _solutions(eq: EffectiveEquation, mesh: _Mesh, E: float):
    """Outward and inward y-arrays (up to and beyond the matching index)."""
    x = mesh.coord
    h = mesh.h
    if mesh.log:
        g = x**2 * eq.Q(x, E) - 0.25
    else:
        g = eq.Q(x, E)
    if mesh.log and g[0] >= 0:
        raise ValueError("the equation is too singular at the origin (fall to the centre)")
    F = 1.0 + h * h * g / 12.0
    T = (12.0 / F - 10.0).tolist()
    m = mesh.match
    # start values: v = exp(+-kappa * step) from each boundary
    k0 = math.sqrt(max(-g[0], 0.0))
    kn = math.sqrt(max(-g[-1], 0.0))
    left = _numerov(T, F[0] * 1.0, F[1] * math.exp(k0 * h), m + 1)
    Tr = T[::-1]
    right_rev = _numerov(Tr, F[-1] * 1.0, F[-2] * math.exp(kn * h), len(T) - m - 1)
    right = right_rev[::-1]
    off = m  # right[j] corresponds to index m + j
    return left, right, off, F


def mismatch(eq: EffectiveEquation, E: float, mesh: _Mesh | None = None,
             cfg: IntegratorConfig | None = None) -> float:
    """Normalized Casoratian of the two boundary solutions at energy ``E``."""
    mesh = mesh or _build_mesh(eq, [E], cfg or IntegratorConfig())
    left, right, off, _ = _solutions(eq, mesh, E)
    m = mesh.match
    a0, a1 = left[m], left[m + 1]
    b0, b1 = right[0], right[1]
    c = a0 * b1 - a1 * b0
    return c / (math.hypot(a0, a1) * math.hypot(b0, b1))


def _node_count(eq: EffectiveEquation, mesh: _Mesh, E: float) -> int:
    left, right, off, F = _solutions(eq, mesh, E)
    m = mesh.match
    ratio = left[m] / right[0] if right[0] != 0 else 1.0
    y = np.concatenate([np.asarray(left[: m + 1]), ratio * np.asarray(right[1:])])
    v = y / F
    thr = 1e-10 * float(np.max(np.abs(v)))
    s = np.sign(v[np.abs(v) > thr])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def _bisect(eq: EffectiveEquation, mesh: _Mesh, lo: float, hi: float, tol: float):
    flo = mismatch(eq, lo, mesh)
    fhi = mismatch(eq, hi, mesh)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo < 0) == (fhi < 0):
        raise NoSignChangeError(f"mismatch keeps its sign on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = mismatch(eq, mid, mesh)
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def shoot_state(eq: EffectiveEquation, bracket: tuple[float, float],
                cfg: IntegratorConfig | None = None) -> tuple[float, int]:
    """Eigenvalue in ``bracket`` and the node count of its eigenfunction.

    Raises
    ------
    NoSignChangeError
        If the mismatch has the same sign at both ends of the bracket, or an
        end of the bracket is not below the continuum threshold.
    """
    cfg = cfg or IntegratorConfig()
    lo, hi = float(min(bracket)), float(max(bracket))
    try:
        mesh = _build_mesh(eq, [lo, hi], cfg)
    except ValueError as exc:
        raise NoSignChangeError(f"no bound-state mismatch on [{lo}, {hi}]: {exc}") from exc
    E = _bisect(eq, mesh, lo, hi, cfg.tol_factor * eq.M)
    return E, _node_count(eq, mesh, E)


def shoot_eigenvalue(eq: EffectiveEquation, bracket: tuple[float, float],
                     integrator_config: IntegratorConfig | None = None) -> float:
    """Bisect the shooting mismatch on ``bracket`` to ``tol_factor * M``.

    Raises
    ------
    NoSignChangeError
        If the mismatch does not change sign on the bracket (including the
        case where the bracket reaches into the continuum).
    """
    return shoot_state(eq, bracket, integrator_config)[0]


def _decay_floor(eq: EffectiveEquation, E: float, r_min_factor: float = 1e-6) -> float:
    """Smaller of the two asymptotic decay rates.

    nan when E is in the continuum or, on the half line, when the 1/r^2
    part of Q is attractive enough for fall to the centre.
    """
    if eq.domain == HALF_LINE:
        r0 = r_min_factor / eq.alpha
        if r0 * r0 * float(eq.Q(np.array([r0]), E)[0]) - 0.25 >= 0.0:
            return math.nan
    ql, qr = eq.q_limits(E)
    q = qr if eq.domain == HALF_LINE else max(ql, qr)
    return math.sqrt(-q) if q < 0 else math.nan


def _chunks(kappas, kappa_min: float, spread: float = 2.0):
    """Index ranges of consecutive bound samples with bounded decay-rate spread.

    Neighbouring chunks share their boundary sample so that no sign change
    falls between two meshes.
    """
    size = len(kappas)
    ok = [k >= kappa_min for k in kappas]
    out = []
    i = 0
    while i < size - 1:
        if not (ok[i] and ok[i + 1]):
            i += 1
            continue
        lo = hi = kappas[i]
        j = i + 1
        lo, hi = min(lo, kappas[j]), max(hi, kappas[j])
        while j + 1 < size and ok[j + 1] and max(hi, kappas[j + 1]) <= spread * min(lo, kappas[j + 1]):
            j += 1
            lo, hi = min(lo, kappas[j]), max(hi, kappas[j])
        out.append((i, j))
        i = j
    return out


def scan_eigenvalues(eq: EffectiveEquation, E_lo: float, E_hi: float, samples: int = 400,
                     cfg: IntegratorConfig | None = None,
                     kappa_floor: float = 0.02) -> list[tuple[float, int]]:
    """All eigenvalues in [E_lo, E_hi] with their node counts, ascending.

    The range is sampled uniformly. Energies whose asymptotic decay rate is
    below ``kappa_floor * alpha`` on either side count as continuum and are
    skipped (states that close to threshold need impractically long grids).
    Bound samples are grouped so the decay rate varies by at most a factor
    of two per group; each group gets one mesh and every sign change of the
    mismatch on it is bisected.
    """
    cfg = cfg or IntegratorConfig()
    grid = np.linspace(E_lo, E_hi, samples)
    kappas = [_decay_floor(eq, float(E), cfg.r_min_factor) for E in grid]
    tol = cfg.tol_factor * eq.M
    out = []
    for i, j in _chunks(kappas, kappa_floor * eq.alpha):
        run = grid[i : j + 1]
        mesh = _build_mesh(eq, [float(run[0]), float(run[-1])], cfg)
        vals = [mismatch(eq, float(E), mesh) for E in run]
        for k in range(run.size - 1):
            if (vals[k] < 0) != (vals[k + 1] < 0) or vals[k + 1] == 0.0:
                E = _bisect(eq, mesh, float(run[k]), float(run[k + 1]), tol)
                if not out or abs(E - out[-1][0]) > 10.0 * tol:
                    out.append((E, _node_count(eq, mesh, E)))
    return out


def locate_eigenvalue(eq: EffectiveEquation, E_guess: float, half_width: float,
                      cfg: IntegratorConfig | None = None) -> tuple[float, int]:
    """Eigenvalue nearest to ``E_guess`` inside ``E_guess +- half_width``.

    Raises
    ------
    NoSignChangeError
        If no sign change of the mismatch is found in the window.
    """
    found = scan_eigenvalues(eq, E_guess - half_width, E_guess + half_width, 21, cfg)
    if not found:
        raise NoSignChangeError(f"no eigenvalue within {half_width!r} of {E_guess!r}")
    return min(found, key=lambda s: abs(s[0] - E_guess))


def approximation_error(
    m: PotentialModel,
    n: int,
    dn: DimensionalNumbers,
    sign: int,
    M: float,
    alphas,
    hbar_c: float = 1.0,
    cfg: IntegratorConfig | None = None,
) -> list[tuple[float, float, float, float]]:
    """Closed-form (approximated centrifugal) vs exact-centrifugal eigenvalues.

    For each alpha the model is rescaled, the highest closed-form root whose
    state is normalizable on the half line (p > 0, w > 0) is taken as
    E_closed, and the exact-centrifugal equation is shot near it.

    Returns
    -------
    list of (alpha, E_closed, E_exact, abs_error)
    """
    from .spectrum import ScanConfig, find_bound_states

    rows = []
    for a in alphas:
        ma = replace(m, alpha=float(a))
        roots = [b for b in find_bound_states(ma, n, dn, (sign,), M, ScanConfig(hbar_c=hbar_c))
                 if b.exponents.p > 0 and b.exponents.w > 0]
        if not roots:
            raise NoSignChangeError(f"no normalizable closed-form state at alpha = {a!r}")
        E_closed = roots[0].E
        if dn.ll1 == 0.0:
            rows.append((float(a), E_closed, E_closed, 0.0))
            continue
        eq = build_effective(ma, sign, dn, M, RELATIVISTIC_EXACT, hbar_c)
        width = 0.02 * M
        while True:
            try:
                E_exact, _ = locate_eigenvalue(eq, E_closed, width, cfg)
                break
            except NoSignChangeError:
                if width > 0.5 * M:
                    raise
                width *= 2.0
        rows.append((float(a), E_closed, E_exact, abs(E_exact - E_closed)))
    return rows


def approximation_error_csv(rows) -> str:
    """CSV with header ``alpha,E_closed,E_exact,abs_error``."""
    lines = ["alpha,E_closed,E_exact,abs_error"]
    lines += [",".join(f"{v:.11e}" for v in row) for row in rows]
    return "\n".join(lines) + "\n"
