"""Canonical-ensemble thermodynamics of the Landau spectrum.

With ``x = 2 hbar omega beta`` and ground energy ``E0 = m alpha**2 + 3/2 hbar omega``
the single-particle partition function is ``Z1 = exp(-E0 beta) / (1 - exp(-x))``
and ``Z_N = Z1**N`` (distinguishable, non-interacting particles).  All
quantities are returned per particle; ``tau = k_B T`` and ``beta = 1/tau``.

The closed forms are evaluated with the ground-state exponential factored
out so that F and U stay finite and accurate when ``x`` is several hundred.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .exceptions import PartitionUnderflowWarning, SeriesTruncationWarning
from .model import ModelParams

SERIES_TAIL_TOL = 1e-12

# past this the Boltzmann factor exp(-x) underflows
_UNDERFLOW_X = 700.0


def _log1mexp(x: float) -> float:
    """``log(1 - exp(-x))`` for ``x > 0``."""
    if x > math.log(2.0):
        return math.log1p(-math.exp(-x))
    return math.log(-math.expm1(-x))


def _bose_factor(x: float) -> float:
    """``exp(-x) / (1 - exp(-x))``, finite for all ``x > 0``."""
    return math.exp(-x) / -math.expm1(-x)


def _log_g(x: float) -> float:
    """``log(-log(1 - exp(-x)))``."""
    if x > _UNDERFLOW_X:
        return -x
    return math.log(-_log1mexp(x))


def _log_entropy(x: float) -> float:
    """Log of the per-particle entropy ``-log(1 - e^-x) + x e^-x / (1 - e^-x)``."""
    return float(np.logaddexp(_log_g(x), math.log(x) - x - _log1mexp(x)))


def _log_heat_capacity(x: float) -> float:
    return 2.0 * math.log(x) - x - 2.0 * _log1mexp(x)


def ground_energy(params: ModelParams) -> float:
    return params.m_alpha_sq + 1.5 * params.hbar * params.omega


def level_gap(params: ModelParams) -> float:
    return 2.0 * params.hbar * params.omega


def log_partition(params: ModelParams, beta: float) -> float:
    """Natural log of the single-particle partition function."""
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta!r}")
    return -ground_energy(params) * beta - _log1mexp(level_gap(params) * beta)


def partition_closed(params: ModelParams, beta: float) -> float:
    """Closed-form single-particle partition function.

    Emits ``PartitionUnderflowWarning`` and returns the denormal (or zero)
    result when ``Z1`` is below the normal floating-point range.
    """
    log_z = log_partition(params, beta)
    z = math.exp(log_z) if log_z > -745.2 else 0.0
    if z < np.finfo(float).tiny:
        warnings.warn(
            f"partition function underflows (log Z1 = {log_z:.6g})",
            PartitionUnderflowWarning,
            stacklevel=2,
        )
    return z


def partition_series(params: ModelParams, beta: float, n_max: int | None = None) -> float:
    """Truncated Boltzmann sum over the levels ``n = 0..n_max``.

    With ``n_max=None`` enough terms are taken for the omitted tail to sit
    below double precision.  A ``SeriesTruncationWarning`` is emitted when the
    relative tail ``exp(-x (n_max + 1))`` exceeds ``SERIES_TAIL_TOL``.
    """
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta!r}")
    x = level_gap(params) * beta
    if n_max is None:
        n_max = max(1, math.ceil(40.0 / x))
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    relative_tail = math.exp(-x * (n_max + 1))
    if relative_tail > SERIES_TAIL_TOL:
        warnings.warn(
            f"series truncated at n_max={n_max} omits a relative tail of {relative_tail:.3e}",
            SeriesTruncationWarning,
            stacklevel=2,
        )
    levels = np.arange(n_max + 1)
    energies = (2 * levels + 1.5) * params.hbar * params.omega + params.m_alpha_sq
    return math.fsum(np.exp(-beta * energies))


@dataclass(frozen=True)
class ThermoPoint:
    tau: float
    beta: float
    F_per_N: float
    U_per_N: float
    S_per_NkB: float
    Cv_per_NkB: float


@dataclass(frozen=True)
class ThermoCurve:
    omega: float
    points: tuple[ThermoPoint, ...]

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(p, name) for p in self.points])


def thermo_point(params: ModelParams, tau: float) -> ThermoPoint:
    """Free energy, mean energy, entropy and heat capacity at ``tau``."""
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau!r}")
    beta = 1.0 / tau
    gap = level_gap(params)
    x = gap * beta
    e0 = ground_energy(params)
    free = e0 + tau * _log1mexp(x)
    mean = e0 + gap * _bose_factor(x)
    entropy = math.exp(_log_entropy(x))
    heat = math.exp(_log_heat_capacity(x)) if x < _UNDERFLOW_X else 0.0
    return ThermoPoint(tau, beta, free, mean, entropy, heat)


def thermo_curve(params: ModelParams, tau_min: float, tau_max: float, points: int) -> ThermoCurve:
    if not 0 < tau_min < tau_max:
        raise ValueError("need 0 < tau_min < tau_max")
    if points < 2:
        raise ValueError("points must be >= 2")
    taus = np.geomspace(tau_min, tau_max, points)
    return ThermoCurve(params.omega, tuple(thermo_point(params, float(t)) for t in taus))


@dataclass(frozen=True)
class DerivativeCheck:
    """Relative defects of finite-difference derivatives against closed forms."""

    tau: float
    step: float
    mean_energy: float
    entropy: float
    heat_capacity: float
    legendre: float

    @property
    def worst(self) -> float:
        return max(self.mean_energy, self.entropy, self.heat_capacity)


def _central(f, beta, h):
    return (f(beta + h) - f(beta - h)) / (2.0 * h)


def crosscheck_derivatives(params: ModelParams, tau: float, rel_step: float = 1e-6) -> DerivativeCheck:
    """Compare central differences in beta with the closed forms.

    ``U = -d ln Z / d beta`` is differenced directly.  For ``S = beta**2 dF/d beta``
    and ``C_v = -beta**2 dU/d beta`` the constant ground-state energy (zero
    derivative) is dropped and the remaining excitation parts are differenced
    in log form, which keeps the check meaningful where they underflow.
    """
    point = thermo_point(params, tau)
    beta = point.beta
    gap = level_gap(params)
    # keep the phase change over one step small in the stiff regime
    h = min(rel_step * beta, 1e-3 / gap)

    u_fd = -_central(lambda b: log_partition(params, b), beta, h)
    u_defect = abs(u_fd - point.U_per_N) / abs(point.U_per_N)

    def log_neg_free_exc(b):
        return _log_g(gap * b) - math.log(b)

    slope = _central(log_neg_free_exc, beta, h)
    log_s_fd = 2.0 * math.log(beta) + log_neg_free_exc(beta) + math.log(-slope)
    s_defect = abs(math.expm1(log_s_fd - _log_entropy(gap * beta)))

    def log_mean_exc(b):
        x = gap * b
        return math.log(gap) - x - _log1mexp(x)

    slope = _central(log_mean_exc, beta, h)
    log_cv_fd = 2.0 * math.log(beta) + log_mean_exc(beta) + math.log(-slope)
    cv_defect = abs(math.expm1(log_cv_fd - _log_heat_capacity(gap * beta)))

    ts = point.tau * point.S_per_NkB
    scale = max(abs(point.F_per_N), abs(point.U_per_N), abs(ts))
    legendre = abs(point.F_per_N - (point.U_per_N - ts)) / scale
    return DerivativeCheck(tau, h, u_defect, s_defect, cv_defect, legendre)
