"""Shannon entropies in position and momentum space and the BBM check."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    LandauError,
    NonConvergence,
    ParsevalViolation,
    TruncationBias,
    UnnormalizedDensity,
)
from .model import ModelParams, check_quantum_number
from .momentum import auto_kgrid, fourier_transform
from .position import DEFAULT_POINTS, auto_grid, entropic_density, normalize
from .quadrature import ConvergenceReport, integrate

BBM_BOUND = 1.0 + math.log(math.pi)
ENTROPY_TOL = 1e-7
MAX_DOUBLINGS = 4
THREADS_ENV = "LANDAU_ENTROPY_THREADS"

TABLE1_N = (0, 1, 2, 3)
TABLE1_OMEGA = (10.0, 100.0, 1000.0)

# reference values (S_x, S_k, S_x + S_k) keyed by (n, omega)
REFERENCE_TABLE1 = {
    (0, 10.0): (0.07511, 2.58794, 2.66305),
    (0, 100.0): (-1.24617, 3.93031, 2.68415),
    (0, 1000.0): (-2.44074, 5.12615, 2.68541),
    (1, 10.0): (0.29949, 2.51618, 2.81568),
    (1, 100.0): (-1.33164, 3.91697, 2.58533),
    (1, 1000.0): (-2.59974, 5.15778, 2.55804),
    (2, 10.0): (0.34254, 2.33426, 2.67681),
    (2, 100.0): (-1.35202, 3.89831, 2.5463),
    (2, 1000.0): (-2.62173, 5.16562, 2.54389),
    (3, 10.0): (0.35207, 2.19412, 2.54619),
    (3, 100.0): (-1.35095, 3.88301, 2.53205),
    (3, 1000.0): (-2.62896, 5.16816, 2.53919),
}


@dataclass(frozen=True)
class EntropyReport:
    n: int
    omega: float
    S_x: float
    S_k: float
    x_convergence: ConvergenceReport
    k_convergence: ConvergenceReport
    parseval_defect: float
    bbm_bound: float = BBM_BOUND

    @property
    def entropy_sum(self) -> float:
        return self.S_x + self.S_k

    @property
    def margin(self) -> float:
        return self.entropy_sum - self.bbm_bound


def shannon_entropy(density, spacing: float) -> float:
    """Differential entropy ``-int rho ln rho`` of sampled density, in nats."""
    rho = np.asarray(density, dtype=float)
    if np.any(rho < 0):
        raise ValueError("density has negative entries")
    total = integrate(rho, spacing)
    if abs(total - 1.0) > 1e-4:
        raise UnnormalizedDensity(f"density integrates to {total:.8f}, not 1")
    return integrate(entropic_density(rho), spacing)


def _entropies(params, n, points):
    wf = normalize(params, n, auto_grid(params, n, points))
    phi = fourier_transform(wf, auto_kgrid(params, n, points))
    s_x = shannon_entropy(wf.density, wf.grid.spacing)
    s_k = shannon_entropy(phi.density, phi.grid.spacing)
    return s_x, s_k, phi.parseval_defect


def entropy_report(
    params: ModelParams,
    n: int,
    points: int = DEFAULT_POINTS,
    tol: float = ENTROPY_TOL,
    max_doublings: int = MAX_DOUBLINGS,
) -> EntropyReport:
    """Position and momentum entropies of level ``n``.

    Both grids are refined together (``p -> 2p - 1``) until each entropy
    changes by at most ``tol``; the finest values are reported.

    Raises
    ------
    NonConvergence
        If ``max_doublings`` refinements do not reach ``tol``.
    """
    n = check_quantum_number(n)
    previous = None
    dx = dk = math.inf
    for level in range(max_doublings + 1):
        try:
            s_x, s_k, defect = _entropies(params, n, points)
        except (ParsevalViolation, TruncationBias):
            # an under-resolved level; only the finest one is authoritative
            if level == max_doublings:
                raise
            previous = None
        else:
            if previous is not None:
                dx, dk = abs(s_x - previous[0]), abs(s_k - previous[1])
                if dx <= tol and dk <= tol:
                    return EntropyReport(
                        n,
                        params.omega,
                        s_x,
                        s_k,
                        ConvergenceReport(s_x, level, dx, True, points),
                        ConvergenceReport(s_k, level, dk, True, points),
                        defect,
                    )
            previous = (s_x, s_k)
        points = 2 * points - 1
    raise NonConvergence(
        f"entropies of level {n} at omega={params.omega:g} not converged to {tol:g} "
        f"after {max_doublings} doublings (delta S_x={dx:.3e}, delta S_k={dk:.3e})"
    )


def worker_count() -> int:
    """Thread cap from ``LANDAU_ENTROPY_THREADS`` (unset or 0 means one per CPU)."""
    raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
    value = int(raw)
    if value < 0:
        raise ValueError(f"{THREADS_ENV} must be >= 0")
    return value or (os.cpu_count() or 1)


def table1(
    params_base: ModelParams | None = None,
    n_list=TABLE1_N,
    omega_list=TABLE1_OMEGA,
    **kwargs,
) -> list[EntropyReport]:
    """Entropy reports for every (n, omega) pair in row-major order."""
    if params_base is None:
        params_base = ModelParams(omega=1.0)
    cells = [(n, float(w)) for n in n_list for w in omega_list]

    def run(cell):
        n, w = cell
        try:
            return entropy_report(params_base.with_omega(w), n, **kwargs)
        except LandauError as exc:
            raise type(exc)(f"table cell n={n}, omega={w:g}: {exc}") from exc

    workers = min(worker_count(), len(cells))
    if workers <= 1:
        return [run(c) for c in cells]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, cells))


def omega_sweep(params_base: ModelParams, n: int, omega_min: float, omega_max: float,
                per_decade: int = 25, **kwargs) -> list[EntropyReport]:
    """Entropies on a log-spaced frequency grid (both ends included)."""
    if not 0 < omega_min < omega_max:
        raise ValueError("need 0 < omega_min < omega_max")
    decades = math.log10(omega_max / omega_min)
    count = max(2, int(round(decades * per_decade)) + 1)
    omegas = np.geomspace(omega_min, omega_max, count)
    return [entropy_report(params_base.with_omega(float(w)), n, **kwargs) for w in omegas]
