import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from landau_entropy import (
    ModelParams,
    crosscheck_derivatives,
    partition_closed,
    partition_series,
    thermo_curve,
    thermo_point,
)
from landau_entropy.exceptions import PartitionUnderflowWarning, SeriesTruncationWarning
from landau_entropy.thermo import ground_energy

# hbar omega = 1 and m alpha^2 = theta^2/4 = 1
UNIT = ModelParams(omega=1.0, theta=2.0)


def literal_forms(p, beta):
    """Totals F, U, S, C_v exactly as the closed forms are usually printed."""
    N, kB, hw, ma2 = p.N, p.k_B, p.hbar * p.omega, p.m_alpha_sq
    q = math.exp(-2 * hw * beta)
    z1 = math.exp(-(ma2 + 1.5 * hw) * beta) / (1 - q)
    F = -N / beta * math.log(z1)
    U = (2 * ma2 * N * (q - 1) - (3 + q) * hw * N) / (2 * (q - 1))
    S = N * kB * ma2 * beta + (3 + q) * hw * beta * kB * N / (2 * (1 - q)) + N * kB * math.log(z1)
    Cv = 4 * q * N * hw**2 * beta**2 * kB / (q - 1) ** 2
    return F, U, S, Cv


def test_partition_examples():
    assert partition_closed(UNIT, 1.0) == pytest.approx(math.exp(-2.5) / (1 - math.exp(-2)), rel=1e-14)
    assert partition_closed(UNIT, 1.0) == pytest.approx(0.0949327, abs=1e-7)
    hermitian = ModelParams(omega=1.0, theta=0.0)
    assert partition_closed(hermitian, math.log(2) / 2) == pytest.approx(2**0.25, rel=1e-14)


def test_partition_ground_state_dominates():
    beta = 30.0
    assert partition_closed(UNIT, beta) == pytest.approx(math.exp(-2.5 * beta), rel=1e-25 + 1e-20)


def test_partition_underflow_flagged():
    with pytest.warns(PartitionUnderflowWarning):
        z = partition_closed(UNIT, 1e4)
    assert z == 0.0


def test_series_two_terms():
    with pytest.warns(SeriesTruncationWarning):
        z = partition_series(UNIT, 1.0, n_max=1)
    assert z == pytest.approx(math.exp(-2.5) + math.exp(-4.5), rel=1e-14)
    assert z == pytest.approx(0.093194, abs=1e-6)
    assert z < partition_closed(UNIT, 1.0)


def test_series_short_tail_no_warning():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        partition_series(UNIT, 5.0, n_max=3)


@settings(max_examples=60)
@given(
    st.floats(0.05, 5.0),
    st.floats(0.1, 50.0),
    st.floats(-3.0, 3.0),
)
def test_series_equals_closed(beta_hw, omega, theta):
    p = ModelParams(omega=omega, theta=theta)
    beta = beta_hw / (p.hbar * omega)
    closed = partition_closed(p, beta)
    assert abs(partition_series(p, beta) - closed) / closed <= 1e-10


def test_point_examples():
    pt = thermo_point(UNIT, 1.0)
    assert pt.U_per_N == pytest.approx(1 + 1.5 + 2 * math.exp(-2) / (1 - math.exp(-2)), rel=1e-14)
    assert pt.U_per_N == pytest.approx(2.813035, abs=1e-6)
    x = 2.0
    assert pt.Cv_per_NkB == pytest.approx(x**2 * math.exp(-x) / (1 - math.exp(-x)) ** 2, rel=1e-13)
    assert pt.Cv_per_NkB == pytest.approx(0.724062, abs=1e-6)


@pytest.mark.parametrize("tau", [0.3, 1.0, 4.0, 40.0])
@pytest.mark.parametrize("omega", [0.5, 10.0])
def test_matches_literal_closed_forms(tau, omega):
    p = ModelParams(omega=omega, theta=1.3, N=3)
    F, U, S, Cv = literal_forms(p, 1 / tau)
    pt = thermo_point(p, tau)
    assert pt.F_per_N * p.N == pytest.approx(F, rel=1e-11)
    assert pt.U_per_N * p.N == pytest.approx(U, rel=1e-11)
    assert pt.S_per_NkB * p.N * p.k_B == pytest.approx(S, rel=1e-9)
    assert pt.Cv_per_NkB * p.N * p.k_B == pytest.approx(Cv, rel=1e-11)


def test_high_temperature_limit():
    p = ModelParams(omega=1.0)
    for x in (1e-3, 1e-4, 1e-6):
        cv = thermo_point(p, 2 * p.hbar * p.omega / x).Cv_per_NkB
        assert 0 < 1 - cv <= 1e-3


def test_low_temperature_limits():
    p = ModelParams(omega=1.0)
    for x in (60.0, 200.0, 1000.0, 5000.0):
        pt = thermo_point(p, 2 / x)
        assert 0 <= pt.Cv_per_NkB <= 1e-12
        assert pt.U_per_N == pytest.approx(ground_energy(p), rel=1e-12)
        assert math.isfinite(pt.F_per_N) and math.isfinite(pt.S_per_NkB)


def test_curve_properties():
    curve = thermo_curve(ModelParams(omega=10.0), 0.1, 100.0, 64)
    tau = curve.column("tau")
    assert len(curve.points) == 64 and np.all(np.diff(tau) > 0)
    # F and S saturate at their ground-state values for tau << hbar omega
    assert np.all(np.diff(curve.column("F_per_N")) <= 0)
    assert np.all(np.diff(curve.column("S_per_NkB")) > 0)
    assert curve.column("F_per_N")[-1] < curve.column("F_per_N")[0]
    assert np.all(curve.column("Cv_per_NkB") >= 0)


def test_stronger_field_raises_mean_energy():
    taus = (50.0, 100.0, 500.0)
    for tau in taus:
        u = [thermo_point(ModelParams(omega=w), tau).U_per_N for w in (10.0, 100.0, 1000.0)]
        assert u[0] < u[1] < u[2]


def test_legendre_identity():
    for tau in np.geomspace(0.01, 1e4, 40):
        chk = crosscheck_derivatives(ModelParams(omega=3.0), float(tau))
        assert chk.legendre <= 1e-9


def test_crosscheck_unit_point():
    chk = crosscheck_derivatives(UNIT, 1.0)
    assert chk.mean_energy <= 1e-6 and chk.entropy <= 1e-6 and chk.heat_capacity <= 1e-6


def test_crosscheck_stiff_regime():
    chk = crosscheck_derivatives(ModelParams(omega=10.0), 0.05)
    assert chk.worst <= 1e-5


@pytest.mark.parametrize("bad", [0.0, -1.0])
def test_rejects_nonpositive_tau(bad):
    with pytest.raises(ValueError):
        thermo_point(UNIT, bad)
    with pytest.raises(ValueError):
        partition_closed(UNIT, bad)
