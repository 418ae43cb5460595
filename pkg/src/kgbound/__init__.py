"""Klein-Gordon bound states for equally mixed exponential-type potentials.

Closed-form energies and radial functions come from a parametric
hypergeometric (Nikiforov-Uvarov) recipe; an independent Numerov shooting
oracle checks them against the radial ODE.
"""

from __future__ import annotations

from .errors import (
    ComplexBranchError,
    DomainError,
    KGError,
    NonNormalizableError,
    NoSignChangeError,
    ParameterError,
    PoleError,
    SingularPointError,
    SWaveOnlyError,
    UnsupportedModelError,
    WindowError,
)
from .nu import HypergeometricCoefficients, NUDerived, derive_parameters, quantization_residual
from .potentials import (
    DimensionalNumbers,
    EckartType,
    Hulthen,
    RosenMorseType,
    RosenMorseWell,
    StandardEckart,
    TrigRosenMorse,
    WoodsSaxon,
    couplings,
    dimensional_numbers,
    evaluate_potential,
)
from .spectrum import BoundState, ScanConfig, energy_residual, find_bound_states, nonrelativistic_energy
from .wavefn import RadialSample, normalize, radial_u
from .oracle import approximation_error, build_effective, shoot_eigenvalue

__version__ = "0.1.0"

__all__ = [
    "KGError", "PoleError", "ParameterError", "ComplexBranchError", "DomainError",
    "SingularPointError", "WindowError", "SWaveOnlyError", "UnsupportedModelError",
    "NonNormalizableError", "NoSignChangeError",
    "HypergeometricCoefficients", "NUDerived", "derive_parameters", "quantization_residual",
    "DimensionalNumbers", "EckartType", "Hulthen", "RosenMorseType", "RosenMorseWell",
    "StandardEckart", "TrigRosenMorse", "WoodsSaxon", "couplings", "dimensional_numbers",
    "evaluate_potential",
    "BoundState", "ScanConfig", "energy_residual", "find_bound_states", "nonrelativistic_energy",
    "RadialSample", "normalize", "radial_u",
    "approximation_error", "build_effective", "shoot_eigenvalue",
]
