"""phaselab: half-line scattering phase shifts and finite-size spectral asymptotics.

A numerical laboratory built around the variable-phase (Prufer) integration
of -u'' + V u = k^2 u on the half line: scattering phase shifts with
certified tails, Dirichlet shooting spectra with an exact quantized fast
path, spectral-shift and orthogonality-exponent evaluations at the Fermi
energy, and an empirical verification harness for the 1/L finite-size
energy along thermodynamic-limit families.
"""

from ._kernels import NUMBA_ENABLED
from .asymptotics import (
    FiniteSizeRecord,
    ThermoFamily,
    energy_difference,
    euler_maclaurin_residual,
    extrapolate_limit,
    finite_size_records,
    finite_size_scan,
    finite_volume_ssf,
    finite_volume_ssf_integral,
    neumann_dirichlet_closed_form,
    theorem_expansion,
)
from .eigensolver import (
    SpectrumPair,
    free_eigenvalue,
    perturbed_eigenvalue,
    perturbed_eigenvalue_quantized,
    spectrum,
)
from .errors import (
    ConfigError,
    DomainError,
    InputError,
    NumericError,
    PhaselabError,
    PotentialError,
)
from .potentials import (
    Potential,
    dirac_delta,
    evaluate,
    from_descriptor,
    moments,
    parse_potential,
    square_well,
    tabulated,
    tail_mass,
    to_descriptor,
    validate,
    zero,
)
from .scattering import (
    FermiPoint,
    cached_phase_shift,
    clear_phase_memo,
    fermi_point,
    fumi_integral,
    s_matrix,
)
from .variable_phase import (
    PhaseShift,
    PruferTrajectory,
    integrate_prufer,
    phase_shift,
    phase_shift_grid,
)

__version__ = "0.1.0"

__all__ = [
    "NUMBA_ENABLED",
    "ConfigError",
    "DomainError",
    "FermiPoint",
    "FiniteSizeRecord",
    "InputError",
    "NumericError",
    "PhaseShift",
    "PhaselabError",
    "Potential",
    "PotentialError",
    "PruferTrajectory",
    "SpectrumPair",
    "ThermoFamily",
    "cached_phase_shift",
    "clear_phase_memo",
    "dirac_delta",
    "energy_difference",
    "euler_maclaurin_residual",
    "evaluate",
    "extrapolate_limit",
    "fermi_point",
    "finite_size_records",
    "finite_size_scan",
    "finite_volume_ssf",
    "finite_volume_ssf_integral",
    "free_eigenvalue",
    "from_descriptor",
    "fumi_integral",
    "integrate_prufer",
    "moments",
    "neumann_dirichlet_closed_form",
    "parse_potential",
    "perturbed_eigenvalue",
    "perturbed_eigenvalue_quantized",
    "phase_shift",
    "phase_shift_grid",
    "s_matrix",
    "spectrum",
    "square_well",
    "tabulated",
    "tail_mass",
    "theorem_expansion",
    "to_descriptor",
    "validate",
    "zero",
]
