import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.special import hyp1f1

from landau_entropy import ModelParams, QuantumNumberError, energy, kummer_poly, xi_of_x
from landau_entropy.model import MAX_QUANTUM_NUMBER

positive = st.floats(min_value=1e-3, max_value=1e3)
finite = st.floats(min_value=-50, max_value=50)
levels = st.integers(min_value=0, max_value=MAX_QUANTUM_NUMBER - 1)


@st.composite
def params(draw):
    return ModelParams(
        omega=draw(positive), m=draw(positive), hbar=draw(positive),
        theta=draw(finite), p_y=draw(finite),
    )


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(omega=0.0),
        dict(omega=-1.0),
        dict(omega=1.0, m=0.0),
        dict(omega=1.0, hbar=-2.0),
        dict(omega=1.0, k_B=0.0),
        dict(omega=1.0, N=0),
        dict(omega=1.0, theta=math.inf),
        dict(omega=1.0, p_y=math.nan),
        dict(omega=math.inf),
    ],
)
def test_params_rejects_invalid(kwargs):
    with pytest.raises(ValueError):
        ModelParams(**kwargs)


def test_hermitian_limit_accepted():
    p = ModelParams(omega=2.0, theta=0.0)
    assert p.alpha == 0.0
    assert p.m_alpha_sq == 0.0


@given(params())
def test_alpha_offset_consistent(p):
    assert p.alpha == pytest.approx(p.theta * p.hbar / (2 * p.m), rel=1e-15)
    assert p.m_alpha_sq == pytest.approx(p.theta**2 * p.hbar**2 / (4 * p.m), rel=1e-14, abs=1e-300)


def test_energy_examples():
    assert energy(ModelParams(omega=10.0), 0) == pytest.approx(15.25, rel=1e-15)
    assert energy(ModelParams(omega=1.0, theta=0.0), 0) == 1.5
    # vanishing field leaves the m alpha^2 offset for every level
    for n in (0, 3, 10):
        assert energy(ModelParams(omega=1e-12), n) == pytest.approx(0.25, abs=1e-10)


@given(params(), levels)
def test_energy_spacing_and_monotone(p, n):
    gap = energy(p, n + 1) - energy(p, n)
    # the difference cancels the m alpha^2 offset, so rounding scales with the energy
    assert gap == pytest.approx(2 * p.hbar * p.omega, abs=1e-14 * energy(p, n + 1))
    assert gap > 0


@given(params(), levels, finite)
def test_energy_independent_of_py(p, n, other_py):
    shifted = ModelParams(omega=p.omega, m=p.m, hbar=p.hbar, theta=p.theta, p_y=other_py)
    assert energy(shifted, n) == energy(p, n)


def test_energy_linear_in_omega():
    base = ModelParams(omega=1.0)
    e1, e2, e3 = (energy(base.with_omega(w), 2) for w in (1.0, 2.0, 3.0))
    assert e3 - e2 == pytest.approx(e2 - e1, rel=1e-14)


@pytest.mark.parametrize("bad", [-1, 65, 1.5, "2", True])
def test_quantum_number_ceiling(bad):
    with pytest.raises(QuantumNumberError):
        energy(ModelParams(omega=1.0), bad)


def test_xi_examples():
    assert xi_of_x(ModelParams(omega=1.0, theta=0.0, p_y=0.0), 2.0) == 2 + 0j
    assert xi_of_x(ModelParams(omega=1.0), 1.0) == pytest.approx(-0.5j, abs=1e-15)
    # 10 * (0.01 - 0.01 - 0.005i)
    assert xi_of_x(ModelParams(omega=100.0), 0.01) == pytest.approx(-0.05j, abs=1e-14)


@given(params())
def test_xi_structure(p):
    x = np.linspace(-3, 3, 7)
    xi = xi_of_x(p, x)
    assert np.all(np.diff(xi.real) > 0)
    expected_im = -math.sqrt(p.m * p.omega / p.hbar) * p.theta * p.hbar / (2 * p.m * p.omega)
    np.testing.assert_allclose(xi.imag, expected_im, rtol=1e-12, atol=1e-300)
    assert np.ptp(xi.imag) == 0.0


def test_kummer_low_orders():
    assert kummer_poly(0, 3.7 - 2j) == 1
    assert kummer_poly(1, 2.0) == pytest.approx(-1.0 / 3.0, rel=1e-15)


def _brute_kummer(n, z, magnitude=False):
    """Term-by-term sum with exact rational Pochhammer ratios.

    With ``magnitude=True`` returns the sum of absolute term values, the
    scale of the unavoidable cancellation error.
    """
    total = 0
    for k in range(n + 1):
        num = Fraction(1)
        den = Fraction(1)
        for j in range(k):
            num *= -n + j
            den *= Fraction(3, 2) + j
        coeff = num / den / math.factorial(k)
        term = mpmath.mpf(coeff.numerator) / coeff.denominator * mpmath.mpc(z) ** k
        total += abs(term) if magnitude else term
    return complex(total)


def test_kummer_n2_complex_against_brute_force():
    z = 1 + 1j
    expected = _brute_kummer(2, z)
    assert kummer_poly(2, z) == pytest.approx(expected, rel=1e-15)
    assert expected == pytest.approx(complex(mpmath.hyp1f1(-2, 1.5, z)), rel=1e-15)


@pytest.mark.parametrize("n", [3, 7, 12, 20])
def test_kummer_matches_brute_force(n):
    for z in (0.3 - 1.1j, -2.5 + 0.4j, 4.0 + 0j):
        bound = 1e-14 * _brute_kummer(n, z, magnitude=True).real
        assert abs(kummer_poly(n, z) - _brute_kummer(n, z)) <= bound


def test_kummer_vectorized_against_scipy():
    z = np.linspace(-4, 6, 41)
    for n in range(8):
        np.testing.assert_allclose(kummer_poly(n, z), hyp1f1(-n, 1.5, z), rtol=1e-10, atol=1e-12)


@given(levels)
def test_kummer_at_origin(n):
    assert kummer_poly(n, 0.0) == 1.0


@given(st.integers(0, 20), st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False))
def test_kummer_conjugate_symmetry(n, z):
    assert kummer_poly(n, np.conj(z)) == pytest.approx(np.conj(kummer_poly(n, z)), rel=1e-12, abs=1e-12)
