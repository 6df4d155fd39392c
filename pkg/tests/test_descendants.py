import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from fwberry import (
    DomainWallProfile,
    charge_polarization,
    chern1_quadrature,
    g2_phi2_phi3,
    g3_phi3,
    g_theta,
    goldstone_wilczek_charge,
    magnetoelectric_polarization,
    omega_field,
    pumped_charge,
    spin_hall_conductivity_3p1,
    spin_hall_conductivity_graphene,
    surface_hall_conductivity,
)

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# coefficient functions
# ---------------------------------------------------------------------------


def test_g_theta_is_constant():
    coeff = g_theta(1.0)
    assert coeff(0.0) == pytest.approx(1.0 / TWO_PI, rel=1e-14)
    assert coeff(3.0) == coeff(0.1)
    assert g_theta(0.0)(1.0) == 0.0


def test_g_theta_normalization():
    for n1 in (1.0, 0.5, -2.0):
        assert g_theta(n1).normalization_residual() < 1e-10


def test_g_theta_consistent_with_curvature_quadrature(rep2):
    # recompute the constant from the radial curvature integral
    n1 = chern1_quadrature(rep2, 1.0, tol=1e-10).value
    radial, _ = integrate.quad(
        lambda k: k * (-0.5 / (k * k + 1.0) ** 1.5) / TWO_PI, 0.0, np.inf
    )
    assert g_theta(n1)(0.3) == pytest.approx(radial, abs=1e-8)


def test_g3_normalization():
    for n2 in (1.0, 0.5):
        assert g3_phi3(n2).normalization_residual() < 1e-10


def test_g2_shape_and_normalization():
    coeff = g2_phi2_phi3(1.0)
    assert coeff(math.pi / 2.0, 0.0) == pytest.approx(1.0 / (4.0 * math.pi))
    assert coeff(0.0, 1.0) == 0.0
    for n2 in (1.0, 0.5, -1.5):
        assert g2_phi2_phi3(n2).normalization_residual() < 1e-10


# ---------------------------------------------------------------------------
# polarizations
# ---------------------------------------------------------------------------


def test_charge_polarization_values():
    assert charge_polarization(TWO_PI, 1.0) - charge_polarization(0.0, 1.0) == 1.0
    assert charge_polarization(0.0, 1.0) == 0.0
    assert charge_polarization(math.pi, 1.0) == pytest.approx(0.5)


def test_charge_polarization_is_linear():
    # vanishing second divided difference
    a, b, c = (charge_polarization(t, 1.0) for t in (1.0, 2.0, 3.0))
    assert (c - b) - (b - a) == pytest.approx(0.0, abs=1e-15)


def test_polarization_domain_checks():
    with pytest.raises(ValueError):
        charge_polarization(-0.1, 1.0)
    with pytest.raises(ValueError):
        magnetoelectric_polarization(7.0, 1.0)


def test_magnetoelectric_polarization_values():
    assert magnetoelectric_polarization(TWO_PI, 1.0) == pytest.approx(1.0)
    assert magnetoelectric_polarization(0.0, 1.0) == 0.0
    assert magnetoelectric_polarization(math.pi, 0.5) == pytest.approx(0.25)


# ---------------------------------------------------------------------------
# wall profiles and charges
# ---------------------------------------------------------------------------


def test_soliton_charges():
    half = DomainWallProfile.from_endpoints(math.pi, 128)
    third = DomainWallProfile.from_endpoints(TWO_PI / 3.0, 128)
    flat = DomainWallProfile(np.linspace(0, 1, 16), np.full(16, 0.3))
    assert goldstone_wilczek_charge(half) == pytest.approx(0.5, abs=1e-14)
    assert goldstone_wilczek_charge(third) == pytest.approx(1.0 / 3.0, abs=1e-14)
    assert goldstone_wilczek_charge(flat) == pytest.approx(0.0, abs=1e-15)


@settings(max_examples=30, deadline=None)
@given(noise=st.lists(st.floats(-50.0, 50.0), min_size=8, max_size=8))
def test_soliton_charge_sees_only_endpoints(noise):
    x = np.linspace(0.0, 1.0, 10)
    values = np.concatenate([[0.0], noise, [math.pi]])
    profile = DomainWallProfile(x, values)
    assert goldstone_wilczek_charge(profile) == pytest.approx(0.5, abs=1e-12)


def test_profile_validation():
    with pytest.raises(ValueError):
        DomainWallProfile(np.array([0.0]), np.array([1.0]))
    with pytest.raises(ValueError):
        DomainWallProfile(np.array([0.0, 0.0]), np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        DomainWallProfile(np.array([1.0, 0.0]), np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        DomainWallProfile(np.array([0.0, 1.0]), np.array([1.0, np.nan]))


def test_surface_hall_conductivity():
    wall = DomainWallProfile.from_endpoints(TWO_PI, 64)
    assert surface_hall_conductivity(wall, 0.5) == pytest.approx(
        1.0 / (4.0 * math.pi), rel=1e-13
    )
    assert surface_hall_conductivity(
        DomainWallProfile.from_endpoints(0.0, 8), 0.5
    ) == pytest.approx(0.0, abs=1e-15)
    half_wall = DomainWallProfile.from_endpoints(math.pi, 64)
    assert surface_hall_conductivity(half_wall, 1.0) == pytest.approx(
        1.0 / (4.0 * math.pi), rel=1e-13
    )


# ---------------------------------------------------------------------------
# spin responses
# ---------------------------------------------------------------------------


def test_spin_hall_from_block_table():
    table = {"up+": 0.5, "up-": 0.5, "down+": -0.5, "down-": -0.5}
    assert spin_hall_conductivity_3p1(table) == pytest.approx(1.0 / TWO_PI)
    zeros = dict.fromkeys(table, 0.0)
    assert spin_hall_conductivity_3p1(zeros) == 0.0
    doubled = {"up+": 1.0, "up-": 1.0, "down+": -1.0, "down-": -1.0}
    assert spin_hall_conductivity_3p1(doubled) == pytest.approx(1.0 / math.pi)


def test_spin_hall_missing_label():
    with pytest.raises(ValueError):
        spin_hall_conductivity_3p1({"up+": 0.5, "up-": 0.5, "down+": -0.5})


def test_graphene_spin_hall():
    assert spin_hall_conductivity_graphene(2.0) == pytest.approx(1.0 / TWO_PI)
    assert spin_hall_conductivity_graphene(0.0) == 0.0
    assert spin_hall_conductivity_graphene(-2.0) == pytest.approx(-1.0 / TWO_PI)


# ---------------------------------------------------------------------------
# angular gauge field
# ---------------------------------------------------------------------------


def test_omega_components_at_reference_point():
    theta = np.array([0.0, 1.0])
    phi = np.array([math.pi / 2.0 - 0.01, math.pi / 2.0])
    field = omega_field(theta, phi, 1.0)
    assert field.omega_theta[0, 1] == pytest.approx(0.0, abs=1e-15)
    assert field.omega_phi[0, 1] == pytest.approx(0.0, abs=1e-15)


def test_omega_field_strength_matches_analytic():
    theta = np.linspace(0.0, TWO_PI, 201)
    phi = np.linspace(0.0, math.pi, 201)
    field = omega_field(theta, phi, 1.0)
    expected = 0.5 * np.sin(phi)[None, :] * np.ones((theta.size, 1))
    interior = np.max(np.abs(field.field_strength - expected)[1:-1, 1:-1])
    assert interior < 1e-3


def test_skyrmion_charge_equals_chern_input():
    theta = np.linspace(0.0, TWO_PI, 400)
    phi = np.linspace(0.0, math.pi, 400)
    for n2 in (1.0, 0.5):
        charge = omega_field(theta, phi, n2).skyrmion_charge()
        assert charge == pytest.approx(n2, abs=1e-4)


def test_skyrmion_charge_second_order_convergence():
    errors = []
    for n in (50, 100, 200):
        theta = np.linspace(0.0, TWO_PI, n)
        phi = np.linspace(0.0, math.pi, n)
        charge = omega_field(theta, phi, 1.0).skyrmion_charge()
        errors.append(abs(charge - 1.0))
    assert errors[1] < errors[0] / 3.0
    assert errors[2] < errors[1] / 3.0


def test_omega_grid_validation():
    with pytest.raises(ValueError):
        omega_field([0.0, 7.0], [0.0, 1.0], 1.0)
    with pytest.raises(ValueError):
        omega_field([0.0, 1.0], [0.0, 4.0], 1.0)
    with pytest.raises(ValueError):
        omega_field([0.0], [0.0, 1.0], 1.0)


def test_pumped_charge():
    assert pumped_charge(0.5) == pytest.approx(0.5)
    assert pumped_charge(1.0, math.pi) == pytest.approx(0.5)
    assert pumped_charge(0.0) == 0.0
