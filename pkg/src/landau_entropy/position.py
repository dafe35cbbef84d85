"""Position-space eigenfunctions, numerical normalization and densities.

The stationary state along x is

    f(xi) = xi * exp(-xi**2 / 2) * exp((theta/2) sqrt(hbar/(m omega)) xi) * 1F1(-n, 3/2; xi**2)

with ``xi = xi_of_x(x)``.  The plane wave in y and the time phase are
unimodular and never evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .exceptions import NonConvergence, TruncationBias
from .model import ModelParams, check_quantum_number, kummer_poly, xi_of_x
from .quadrature import ConvergenceReport, GridSpec, integrate, integrate_to_tolerance

NORM_TOL = 1e-8
EDGE_DECAY = 1e-12
DEFAULT_POINTS = 2049

# exp() over/underflows near +-709; leave headroom for the polynomial factor
_EXP_LIMIT = 700.0


@dataclass(frozen=True, eq=False)
class SampledWavefunction:
    """Complex samples of a normalized state on a uniform grid.

    ``representation`` is ``"position"`` (grid in x) or ``"momentum"``
    (grid in the wavenumber k).  ``norm_constant`` is the factor that was
    applied to the raw samples to normalize them.
    """

    representation: str
    grid: GridSpec
    samples: np.ndarray
    norm_constant: float
    params: ModelParams
    n: int
    convergence: ConvergenceReport | None = None
    parseval_defect: float | None = None

    def __post_init__(self):
        if self.representation not in ("position", "momentum"):
            raise ValueError(f"unknown representation {self.representation!r}")
        samples = np.array(self.samples, dtype=complex)
        if samples.shape != (self.grid.points,):
            raise ValueError("samples must match the grid size")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def coordinates(self) -> np.ndarray:
        return self.grid.nodes

    @property
    def density(self) -> np.ndarray:
        return self.samples.real**2 + self.samples.imag**2

    def norm(self) -> float:
        return integrate(self.density, self.grid.spacing)

    def renormalized(self) -> "SampledWavefunction":
        scale = 1.0 / math.sqrt(self.norm())
        return replace(
            self, samples=self.samples * scale, norm_constant=self.norm_constant * scale
        )


def eval_unnormalized(params: ModelParams, n: int, x):
    """Unnormalized eigenfunction of level ``n`` at positions ``x``.

    Points whose Gaussian envelope underflows return exactly zero.  An
    envelope that would overflow raises ``OverflowError``; this cannot
    happen on grids built by :func:`auto_grid`.
    """
    n = check_quantum_number(n)
    xi = np.atleast_1d(xi_of_x(params, x))
    tilt = 0.5 * params.theta * params.length_scale
    exponent = -0.5 * xi**2 + tilt * xi
    if np.any(exponent.real > _EXP_LIMIT):
        raise OverflowError("wavefunction envelope exceeds the floating-point range")
    out = np.zeros(xi.shape, dtype=complex)
    live = exponent.real >= -_EXP_LIMIT
    z = xi[live]
    out[live] = z * np.exp(exponent[live]) * kummer_poly(n, z**2)
    if np.ndim(x) == 0:
        return out[0]
    return out


def auto_grid(params: ModelParams, n: int, points: int = DEFAULT_POINTS) -> GridSpec:
    n = check_quantum_number(n)
    half_width = (12 + 4 * n) * params.length_scale + abs(params.theta) * params.hbar / (
        params.m * params.omega
    )
    return GridSpec(params.guiding_center, half_width, points)


def check_edge_decay(density: np.ndarray, what: str = "wavefunction") -> None:
    peak = density.max()
    if not peak > 0:
        raise TruncationBias(f"{what} vanishes on the whole grid")
    ratio = max(density[0], density[-1]) / peak
    if ratio > EDGE_DECAY:
        raise TruncationBias(
            f"{what} has not decayed at the grid edge (edge/peak = {ratio:.3e})"
        )


def normalize(
    params: ModelParams,
    n: int,
    grid: GridSpec | None = None,
    norm_tol: float = NORM_TOL,
) -> SampledWavefunction:
    """Sample level ``n`` on ``grid`` and scale it to unit norm.

    The Simpson norm on ``grid`` is checked against successive refinements;
    the state is returned only when the grid estimate agrees with its
    refinement to ``norm_tol`` (relative).
    """
    n = check_quantum_number(n)
    if grid is None:
        grid = auto_grid(params, n)
    raw = eval_unnormalized(params, n, grid.nodes)
    density = raw.real**2 + raw.imag**2
    check_edge_decay(density)
    coarse = integrate(density, grid.spacing)

    def squared_modulus(x):
        psi = eval_unnormalized(params, n, x)
        return psi.real**2 + psi.imag**2

    report = integrate_to_tolerance(squared_modulus, grid, abs_tol=norm_tol * coarse)
    if not report.converged:
        raise NonConvergence(
            f"norm of level {n} did not converge (last delta {report.last_delta:.3e})"
        )
    amplitude = 1.0 / math.sqrt(coarse)
    return SampledWavefunction(
        "position", grid, raw * amplitude, amplitude, params, n, convergence=report
    )


def entropic_density(density) -> np.ndarray:
    """Pointwise ``-rho ln rho`` with ``0 ln 0 = 0``."""
    rho = np.asarray(density, dtype=float)
    out = np.zeros_like(rho)
    positive = rho > 0
    out[positive] = -rho[positive] * np.log(rho[positive])
    return out


def entropic_density_x(wf: SampledWavefunction) -> np.ndarray:
    if wf.representation != "position":
        raise ValueError("expected a position-space wavefunction")
    return entropic_density(wf.density)
