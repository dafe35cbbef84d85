"""Composite Simpson quadrature on uniform grids with grid-doubling control."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

MAX_POINTS = 2**20 + 1


@dataclass(frozen=True)
class GridSpec:
    """Uniform odd-sized grid ``center +- half_width``."""

    center: float
    half_width: float
    points: int = 2049

    def __post_init__(self):
        if not (math.isfinite(self.half_width) and self.half_width > 0):
            raise ValueError(f"half_width must be positive, got {self.half_width!r}")
        if not math.isfinite(self.center):
            raise ValueError("center must be finite")
        if self.points < 3 or self.points % 2 == 0:
            raise ValueError(f"points must be odd and >= 3, got {self.points!r}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / (self.points - 1)

    @property
    def offsets(self) -> np.ndarray:
        """Node positions relative to ``center``."""
        return -self.half_width + self.spacing * np.arange(self.points)

    @property
    def nodes(self) -> np.ndarray:
        return self.center + self.offsets

    def refined(self) -> "GridSpec":
        """Same span with every interval halved (``p -> 2p - 1``)."""
        return replace(self, points=2 * self.points - 1)


@dataclass(frozen=True)
class ConvergenceReport:
    final_value: float
    iterations: int
    last_delta: float
    converged: bool
    points: int = 0


def simpson_weights(points: int, spacing: float) -> np.ndarray:
    if points < 3 or points % 2 == 0:
        raise ValueError(f"Simpson's rule needs an odd sample count >= 3, got {points}")
    w = np.empty(points)
    w[0::2] = 2.0
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return w * (spacing / 3.0)


def integrate(samples, spacing: float) -> float:
    """Composite Simpson estimate of the integral of uniformly spaced samples.

    Exact for cubics.  The reduction is a single dot product, so identical
    inputs give bitwise-identical results.
    """
    f = np.asarray(samples)
    if f.ndim != 1:
        raise ValueError("samples must be one-dimensional")
    if not spacing > 0:
        raise ValueError(f"spacing must be positive, got {spacing!r}")
    if not np.all(np.isfinite(f)):
        raise ValueError("samples contain non-finite values")
    return float(np.dot(simpson_weights(f.size, spacing), f))


def integrate_to_tolerance(
    f: Callable[[np.ndarray], np.ndarray],
    grid: GridSpec,
    abs_tol: float,
    max_points: int = MAX_POINTS,
) -> ConvergenceReport:
    """Integrate ``f`` over ``grid``, doubling resolution until two successive
    estimates agree to ``abs_tol``.

    Non-convergence at ``max_points`` is reported through ``converged=False``;
    the caller decides whether that is fatal.  Support outside the grid is
    silently ignored, so grids must be sized by the caller.
    """
    if not abs_tol > 0:
        raise ValueError("abs_tol must be positive")
    previous = integrate(f(grid.nodes), grid.spacing)
    iterations = 0
    delta = math.inf
    while grid.points < max_points:
        grid = grid.refined()
        iterations += 1
        current = integrate(f(grid.nodes), grid.spacing)
        delta = abs(current - previous)
        previous = current
        if delta <= abs_tol:
            return ConvergenceReport(float(current), iterations, float(delta), True, grid.points)
    return ConvergenceReport(float(previous), iterations, float(delta), False, grid.points)
