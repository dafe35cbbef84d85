"""Information-theoretic and thermodynamic properties of a non-Hermitian
charged particle in a uniform magnetic field."""

from .exceptions import (
    LandauError,
    NonConvergence,
    ParsevalViolation,
    QuantumNumberError,
    TruncationBias,
    UnnormalizedDensity,
)
from .information import BBM_BOUND, EntropyReport, entropy_report, shannon_entropy, table1
from .model import ModelParams, energy, kummer_poly, xi_of_x
from .momentum import auto_kgrid, closed_form_momentum, fourier_transform
from .position import (
    SampledWavefunction,
    auto_grid,
    entropic_density,
    entropic_density_x,
    eval_unnormalized,
    normalize,
)
from .quadrature import ConvergenceReport, GridSpec, integrate, integrate_to_tolerance
from .thermo import (
    ThermoCurve,
    ThermoPoint,
    crosscheck_derivatives,
    partition_closed,
    partition_series,
    thermo_curve,
    thermo_point,
)

__version__ = "0.1.0"
