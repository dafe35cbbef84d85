"""Physical parameters, Landau spectrum and the terminating Kummer series.

The particle moves in the gauge A = B x y-hat; the field enters only
through the cyclotron frequency ``omega = eB/m``.  The non-Hermitian
coupling is parametrised by ``theta = 2 m alpha / hbar`` (inverse length),
with ``theta = 0`` the Hermitian limit.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, replace

import numpy as np

from .exceptions import QuantumNumberError

MAX_QUANTUM_NUMBER = 64


@dataclass(frozen=True)
class ModelParams:
    """Physical constants and field configuration.

    Defaults follow the natural units ``m = hbar = k_B = p_y = theta = 1``;
    the cyclotron frequency has no default.
    """

    omega: float
    m: float = 1.0
    hbar: float = 1.0
    k_B: float = 1.0
    theta: float = 1.0
    p_y: float = 1.0
    N: int = 1

    def __post_init__(self):
        for name in ("omega", "m", "hbar", "k_B"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        for name in ("theta", "p_y"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N!r}")

    @property
    def alpha(self) -> float:
        return self.theta * self.hbar / (2.0 * self.m)

    @property
    def m_alpha_sq(self) -> float:
        """Constant spectrum offset ``m alpha**2 = theta**2 hbar**2 / 4m``."""
        return self.m * self.alpha**2

    @property
    def length_scale(self) -> float:
        """Magnetic oscillator length ``sqrt(hbar / (m omega))``."""
        return math.sqrt(self.hbar / (self.m * self.omega))

    @property
    def guiding_center(self) -> float:
        return self.p_y / (self.m * self.omega)

    def with_omega(self, omega: float) -> "ModelParams":
        return replace(self, omega=omega)


def check_quantum_number(n) -> int:
    if isinstance(n, bool) or not isinstance(n, numbers.Integral):
        raise QuantumNumberError(f"quantum number must be an integer, got {n!r}")
    n = int(n)
    if n < 0 or n > MAX_QUANTUM_NUMBER:
        raise QuantumNumberError(
            f"quantum number must lie in [0, {MAX_QUANTUM_NUMBER}], got {n}"
        )
    return n


def energy(params: ModelParams, n: int) -> float:
    """Eigenvalue ``(2n + 3/2) hbar omega + m alpha**2`` of level ``n``."""
    n = check_quantum_number(n)
    return (2 * n + 1.5) * params.hbar * params.omega + params.m_alpha_sq


def xi_of_x(params: ModelParams, x):
    """Complex scaled coordinate.

    xi = sqrt(m omega / hbar) * (x - p_y/(m omega) - i theta hbar / (2 m omega))
    """
    p = params
    shift = p.guiding_center + 1j * p.theta * p.hbar / (2.0 * p.m * p.omega)
    return (np.asarray(x, dtype=float) - shift) / p.length_scale


def kummer_poly(n: int, z):
    """Evaluate the terminating series 1F1(-n, 3/2; z).

    Terms are generated by the ratio recursion
    ``t_{k+1} = t_k * (k - n) / ((3/2 + k)(k + 1)) * z`` so the result is the
    exact degree-``n`` polynomial.  Works elementwise on arrays.
    """
    n = check_quantum_number(n)
    z = np.asarray(z)
    term = np.ones_like(z, dtype=np.result_type(z, float))
    total = term.copy()
    for k in range(n):
        term = term * ((k - n) / ((1.5 + k) * (k + 1))) * z
        total = total + term
    if total.ndim == 0:
        return total[()]
    return total
