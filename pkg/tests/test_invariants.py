import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from fwberry import (
    ORIENTATION_SIGN,
    ChernValue,
    FillingDomain,
    chern1_energy,
    chern1_quadrature,
    chern2_energy,
    chern2_quadrature,
    cs_coefficient,
    delta_chern_kane_mele,
)
from fwberry.invariants import _isotropy_spread, block_chern_table
from fwberry.models import catalog, kane_mele_representation, spin_valley_4p1_representation
from fwberry.quadrature import QuadratureConvergenceError


# hand antiderivatives, kept separate from the implementation
def _prim1(m, e):
    return 0.0 if math.isinf(e) else m / (2.0 * e)


def _prim2(m, e):
    return 0.0 if math.isinf(e) else -(m**3) / (4 * e**3) + 3 * m / (4 * e)


# ---------------------------------------------------------------------------
# antiderivative prescription
# ---------------------------------------------------------------------------


def test_first_chern_standard_domains():
    assert chern1_energy(1.0, FillingDomain.full()).value == 1.0
    assert chern1_energy(1.0, FillingDomain.half_filled()).value == 0.5
    assert chern1_energy(1.0, FillingDomain.positive_band()).value == -0.5


def test_second_chern_standard_domains():
    assert chern2_energy(1.0, FillingDomain.full()).value == 1.0
    assert chern2_energy(1.0, FillingDomain.half_filled()).value == 0.5
    assert chern2_energy(1.0, FillingDomain.positive_band()).value == -0.5


def test_antiderivative_reports_zero_error():
    value = chern1_energy(2.0, FillingDomain.full())
    assert value.abs_error == 0.0
    assert value.method == "antiderivative"


def test_custom_domain_against_hand_antiderivative():
    m = 1.0
    cases = [(-math.inf, 1.0), (1.0, 2.0), (-3.0, -1.0), (1.0, math.inf)]
    for lo, hi in cases:
        got = chern1_energy(m, FillingDomain.custom(lo, hi)).value
        assert got == pytest.approx(_prim1(m, hi) - _prim1(m, lo), abs=1e-15)
        got2 = chern2_energy(m, FillingDomain.custom(lo, hi)).value
        assert got2 == pytest.approx(_prim2(m, hi) - _prim2(m, lo), abs=1e-15)


def test_custom_domain_matches_half_prescription():
    half = chern1_energy(1.0, FillingDomain.half_filled()).value
    custom = chern1_energy(1.0, FillingDomain.custom(-math.inf, 1.0)).value
    assert custom == half


def test_endpoints_inside_gap_rejected():
    for lo, hi in ((0.5, 2.0), (-2.0, 0.3), (-0.9, 0.9)):
        with pytest.raises(ValueError):
            chern1_energy(1.0, FillingDomain.custom(lo, hi))
    # gap edges themselves are fine
    chern1_energy(1.0, FillingDomain.custom(-1.0, 1.0))


def test_domain_validation():
    with pytest.raises(ValueError):
        FillingDomain("weird")
    with pytest.raises(ValueError):
        FillingDomain.custom(2.0, 1.0)
    with pytest.raises(ValueError):
        FillingDomain("custom")
    with pytest.raises(ValueError):
        chern1_energy(0.0, FillingDomain.full())


@settings(max_examples=40, deadline=None)
@given(m=st.floats(0.05, 10.0))
def test_energy_values_odd_in_mass(m):
    for fn in (chern1_energy, chern2_energy):
        for domain in (
            FillingDomain.full(),
            FillingDomain.half_filled(),
            FillingDomain.positive_band(),
        ):
            plus = fn(m, domain).value
            minus = fn(-m, domain).value
            assert plus == pytest.approx(-minus, rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(m=st.floats(0.05, 10.0))
def test_quantization_is_mass_independent(m):
    assert chern1_energy(m, FillingDomain.full()).value == pytest.approx(1.0)
    assert chern2_energy(m, FillingDomain.half_filled()).value == pytest.approx(0.5)


# ---------------------------------------------------------------------------
# quadrature route
# ---------------------------------------------------------------------------


def test_planar_quadrature_value(rep2):
    result = chern1_quadrature(rep2, 1.0, tol=1e-8)
    # independent radial oracle: integral of k * (-m / 2 E^3)
    oracle, _ = integrate.quad(
        lambda k: k * (-0.5 / (k * k + 1.0) ** 1.5), 0.0, np.inf
    )
    assert oracle == pytest.approx(-0.5, abs=1e-10)
    assert result.value == pytest.approx(oracle, abs=1e-8)
    assert result.abs_error <= 1e-8
    assert result.method == "quadrature"


def test_planar_quadrature_odd_in_mass(rep2):
    assert chern1_quadrature(rep2, -1.0).value == pytest.approx(0.5, abs=1e-8)


def test_four_momentum_quadrature_value(rep4):
    result = chern2_quadrature(rep4, 1.0, tol=1e-7)
    # independent radial oracle: (3/2) * integral of (-1/2) k^3 / E^5
    oracle, _ = integrate.quad(
        lambda k: 1.5 * (-0.5) * k**3 / (k * k + 1.0) ** 2.5, 0.0, np.inf
    )
    assert oracle == pytest.approx(-0.5, abs=1e-10)
    assert result.value == pytest.approx(oracle, abs=1e-6)


def test_four_momentum_quadrature_odd_in_mass(rep4):
    value = chern2_quadrature(rep4, -1.0, tol=1e-7).value
    assert value == pytest.approx(0.5, abs=1e-6)


def test_quadrature_agrees_with_positive_band_prescription(rep2, rep4):
    q1 = chern1_quadrature(rep2, 1.0).value
    e1 = chern1_energy(1.0, FillingDomain.positive_band()).value
    assert abs(abs(q1) - abs(e1)) < 1e-6
    assert q1 == pytest.approx(e1, abs=1e-6)
    q2 = chern2_quadrature(rep4, 1.0, tol=1e-7).value
    e2 = chern2_energy(1.0, FillingDomain.positive_band()).value
    assert abs(abs(q2) - abs(e2)) < 1e-6
    assert q2 == pytest.approx(e2, abs=1e-6)


def test_orientation_constant_links_the_routes(rep2):
    half = chern1_energy(1.0, FillingDomain.half_filled()).value
    quad = chern1_quadrature(rep2, 1.0).value
    assert half == pytest.approx(ORIENTATION_SIGN * quad, abs=1e-8)
    assert ORIENTATION_SIGN == -1.0


def test_quadrature_error_never_grows_as_tolerance_shrinks(rep2):
    oracle = -0.5
    errors = []
    for tol in (1e-3, 1e-5, 1e-7, 1e-9):
        value = chern1_quadrature(rep2, 1.0, tol=tol).value
        errors.append(abs(value - oracle))
    for coarse, fine in zip(errors, errors[1:]):
        assert fine <= coarse + 1e-13


def test_kane_mele_total_invariant_vanishes():
    rep = kane_mele_representation()
    assert chern1_quadrature(rep, 1.0).value == pytest.approx(0.0, abs=1e-8)


def test_kane_mele_blocks_quadrature_pattern():
    # per-block positive-band values carry the opposite sign of the
    # half-filled prescription pattern (+,+,-,-)
    rep = kane_mele_representation()
    values = [
        chern1_quadrature(b.rep, b.mass_sign * 1.0).value for b in rep.blocks
    ]
    assert np.allclose(values, [-0.5, -0.5, 0.5, 0.5], atol=1e-8)


def test_appendix_blocks_quadrature_relations():
    values = {}
    for name in ("app_up_plus", "app_up_minus", "app_down_plus", "app_down_minus"):
        spec = catalog(name, m=1.0)
        values[name] = chern2_quadrature(
            spec.rep, spec.hamiltonian_mass, tol=1e-7
        ).value
    assert values["app_up_plus"] == pytest.approx(values["app_up_minus"], abs=1e-6)
    assert values["app_down_plus"] == pytest.approx(-values["app_up_plus"], abs=1e-6)
    assert values["app_down_minus"] == pytest.approx(-values["app_up_minus"], abs=1e-6)
    assert values["app_up_plus"] == pytest.approx(-0.5, abs=1e-6)


def test_quadrature_rejects_bad_requests(rep2, rep4):
    with pytest.raises(ValueError):
        chern1_quadrature(rep4, 1.0)
    with pytest.raises(ValueError):
        chern2_quadrature(rep2, 1.0)
    with pytest.raises(ValueError):
        chern1_quadrature(rep2, 0.0)
    with pytest.raises(ValueError):
        chern1_quadrature(rep2, 1.0, band="negative")


def test_quadrature_convergence_failure_carries_partial(rep2):
    with pytest.raises(QuadratureConvergenceError) as excinfo:
        chern1_quadrature(rep2, 1.0, tol=1e-14, max_subdivisions=1)
    assert abs(excinfo.value.partial_value - (-0.5)) < 0.1


def test_tensor_fallback_matches_radial(rep2, rep4):
    radial = chern1_quadrature(rep2, 1.0, tol=1e-8).value
    tensor = chern1_quadrature(rep2, 1.0, tol=1e-8, force_tensor=True).value
    assert tensor == pytest.approx(radial, abs=1e-7)
    tensor4 = chern2_quadrature(
        rep4, 1.0, tol=1e-3, e_cut=25.0, force_tensor=True,
        polar_order=6, azimuth_order=12,
    ).value
    assert tensor4 == pytest.approx(-0.5, abs=1e-3)


def test_isotropy_sampler():
    assert _isotropy_spread(lambda k: float(k @ k), 2, 1.0, seed=0)
    assert not _isotropy_spread(lambda k: float(k[0]), 2, 1.0, seed=0)


# ---------------------------------------------------------------------------
# assembled invariants
# ---------------------------------------------------------------------------


def test_kane_mele_difference():
    assert delta_chern_kane_mele(1.0, FillingDomain.half_filled()) == 2.0
    assert delta_chern_kane_mele(-1.0, FillingDomain.half_filled()) == -2.0


def test_kane_mele_block_pattern():
    rep = kane_mele_representation()
    table = block_chern_table(rep.blocks, 1.0, 1, FillingDomain.half_filled())
    assert table == {"up+": 0.5, "up-": 0.5, "down+": -0.5, "down-": -0.5}


def test_kane_mele_difference_requires_half_filling():
    with pytest.raises(ValueError):
        delta_chern_kane_mele(1.0, FillingDomain.full())


def test_sixteen_block_table_full_domain():
    rep = spin_valley_4p1_representation()
    table = block_chern_table(rep.blocks, 1.0, 2, FillingDomain.full())
    assert table == {"up+": 1.0, "up-": 1.0, "down+": -1.0, "down-": -1.0}
    assert sum(table.values()) == 0.0


def test_topological_action_coefficients():
    assert cs_coefficient(1, 1.0) == pytest.approx(0.0795774715459477, rel=1e-12)
    assert cs_coefficient(2, 1.0) == pytest.approx(0.0042217159850974, rel=1e-12)
    assert cs_coefficient(1, 0.0) == 0.0
    assert cs_coefficient(2, ChernValue(1.0, 0.0, "antiderivative")) == pytest.approx(
        1.0 / (24 * math.pi**2)
    )
    with pytest.raises(ValueError):
        cs_coefficient(3, 1.0)
