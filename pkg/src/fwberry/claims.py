"""Registry of the quantitative claims the library reproduces.

Each claim computes one number (or a worst-case residual / boolean) with a
pinned expectation and tolerance.  ``run_acceptance`` executes every claim
with timings; the service's verify endpoint, the CLI ``verify`` subcommand,
and the acceptance test module all consume this single registry.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import berry, descendants, invariants, models, spectral
from .clifford import check_representation, max_abs, representation_2p1, representation_4p1
from .invariants import FillingDomain

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Claim:
    id: str
    label: str
    expected: float
    tol: float
    run: Callable[[], float]


@dataclass(frozen=True)
class Criterion:
    index: int
    title: str
    budget_s: float
    claims: tuple[Claim, ...]


@dataclass(frozen=True)
class ClaimResult:
    criterion: int
    id: str
    label: str
    value: float
    expected: float
    tol: float
    passed: bool
    elapsed_ms: float


def _ball(rng, dim: int, radius: float) -> np.ndarray:
    direction = rng.normal(size=dim)
    direction /= np.linalg.norm(direction)
    return rng.uniform(0.0, radius) * direction


# ---------------------------------------------------------------------------
# claim bodies
# ---------------------------------------------------------------------------


def _curvature_fd_residual(rep, n_points: int, seed: int) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_points):
        k = _ball(rng, rep.space_dim, 5.0)
        closed = berry.berry_curvature(rep, k, 1.0, method="closed_form")
        fd = berry.berry_curvature(rep, k, 1.0, method="finite_diff")
        for a, b in zip(closed.matrices, fd.matrices):
            worst = max(worst, max_abs(a - b))
    return worst


def _chern_density_residual(n_points: int, seed: int) -> float:
    rep = representation_4p1()
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_points):
        k = _ball(rng, 4, 5.0)
        e = spectral.energy(k, 1.0)
        got = berry.chern_integrand_4p1(rep, k, 1.0)
        worst = max(worst, abs(got - (-12.0 / e**5)))
    return worst


def _flatness_residual(n_points: int, seed: int) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for rep in (representation_2p1(), representation_4p1()):
        for _ in range(n_points):
            k = _ball(rng, rep.space_dim, 3.0)
            table = berry.field_strength_fd(
                lambda kk: berry.pure_gauge_field(rep, kk, 1.0).components,
                k,
                step=1e-4,
            )
            for mat in table.values():
                worst = max(worst, max_abs(mat))
    return worst


def _block_map_residual(kind: str, n_points: int, seed: int) -> float:
    """Entrywise residual of the spin-down/spin-up sign maps under k4 -> -k4."""
    rng = np.random.default_rng(seed)
    pairs = (("app_down_plus", "app_up_plus"), ("app_down_minus", "app_up_minus"))
    worst = 0.0
    for down_name, up_name in pairs:
        down = models.catalog(down_name)
        up = models.catalog(up_name)
        for _ in range(n_points):
            k = _ball(rng, 4, 4.0)
            kf = k.copy()
            kf[3] = -kf[3]
            if kind == "connection":
                a_down = berry.berry_connection(down.rep, k, down.hamiltonian_mass)
                a_up = berry.berry_connection(up.rep, kf, up.hamiltonian_mass)
                for i in range(1, 5):
                    sign = -1.0 if i == 4 else 1.0
                    worst = max(worst, max_abs(a_down[i] - sign * a_up[i]))
            else:
                f_down = berry.berry_curvature(
                    down.rep, k, down.hamiltonian_mass, method="analytic_diff"
                )
                f_up = berry.berry_curvature(
                    up.rep, kf, up.hamiltonian_mass, method="analytic_diff"
                )
                for i, j in f_down.pairs:
                    sign = (-1.0) ** (int(i == 4) + int(j == 4))
                    worst = max(
                        worst,
                        max_abs(f_down.component(i, j) - sign * f_up.component(i, j)),
                    )
    return worst


def _spin_table_residual(domain_kind: str) -> float:
    domain = (
        FillingDomain.half_filled()
        if domain_kind == "half"
        else FillingDomain.full()
    )
    table = models.spin_chern_table(domain)
    expected = (
        {"up+": 0.5, "up-": 0.5, "down+": -0.5, "down-": -0.5}
        if domain_kind == "half"
        else {"up+": 1.0, "up-": 1.0, "down+": -1.0, "down-": -1.0}
    )
    return max(abs(table[label] - expected[label]) for label in expected)


def _structural_sweep(total_samples: int, seed: int) -> float:
    """Worst structural residual over representations, momenta, coefficients."""
    reps = [
        representation_2p1(),
        representation_4p1(),
        models.kane_mele_representation(),
        models.spin_valley_4p1_representation(),
    ] + [models.catalog(n).rep for n in (
        "app_up_plus", "app_up_minus", "app_down_plus", "app_down_minus")]
    worst = 0.0
    for rep in reps:
        worst = max(worst, max(check_representation(rep).values()))
    rng = np.random.default_rng(seed)
    per_rep = total_samples // len(reps)
    for rep in reps:
        for _ in range(per_rep):
            k = rng.uniform(-3.0, 3.0, size=rep.space_dim)
            m = rng.choice([-1.0, 1.0]) * rng.uniform(0.2, 2.0)
            data = spectral.spectral_data(rep, k, m)
            res = spectral.spectral_residuals(rep, data, k, m)
            worst = max(worst, *(v for v in res.values()))
    for _ in range(32):
        n = rng.uniform(-2.0, 2.0)
        for coeff in (
            descendants.g_theta(n),
            descendants.g3_phi3(n),
            descendants.g2_phi2_phi3(n),
        ):
            worst = max(worst, coeff.normalization_residual())
    return worst


def _skyrmion_charge(n2: float, n_grid: int) -> float:
    theta = np.linspace(0.0, TWO_PI, n_grid)
    phi = np.linspace(0.0, math.pi, n_grid)
    return descendants.omega_field(theta, phi, n2).skyrmion_charge()


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


def acceptance_criteria(inject_sign_bug: bool = False) -> tuple[Criterion, ...]:
    """The pinned claim registry; ``inject_sign_bug`` flips the sign of the
    full-domain first-Chern claim (a fault-injection hook for testing the
    verification machinery itself)."""
    bug = -1.0 if inject_sign_bug else 1.0

    def chern1_full() -> float:
        return bug * invariants.chern1_energy(1.0, FillingDomain.full()).value

    c1 = Criterion(
        index=1,
        title="full-domain first Chern number",
        budget_s=0.001,
        claims=(
            Claim(
                id="chern1-full-domain",
                label="two-branch antiderivative first Chern number equals 1",
                expected=1.0,
                tol=1e-12,
                run=chern1_full,
            ),
        ),
    )
    c2 = Criterion(
        index=2,
        title="half-filled first Chern number",
        budget_s=0.001,
        claims=(
            Claim(
                id="chern1-half-filled",
                label="half-filled Hall coefficient equals 1/2",
                expected=0.5,
                tol=1e-12,
                run=lambda: invariants.chern1_energy(
                    1.0, FillingDomain.half_filled()
                ).value,
            ),
        ),
    )
    c3 = Criterion(
        index=3,
        title="planar positive-band quadrature",
        budget_s=1.0,
        claims=(
            Claim(
                id="chern1-quadrature-2p1",
                label="positive-band quadrature of the planar cone equals -1/2",
                expected=-0.5,
                tol=1e-6,
                run=lambda: invariants.chern1_quadrature(
                    representation_2p1(), 1.0, tol=1e-8
                ).value,
            ),
        ),
    )
    c4 = Criterion(
        index=4,
        title="valley/spin doubled planar model",
        budget_s=0.01,
        claims=(
            Claim(
                id="kane-mele-delta",
                label="spin-resolved first-Chern difference equals 2",
                expected=2.0,
                tol=1e-12,
                run=lambda: invariants.delta_chern_kane_mele(
                    1.0, FillingDomain.half_filled()
                ),
            ),
            Claim(
                id="graphene-spin-hall",
                label="planar spin Hall conductivity equals 1/2pi (units e)",
                expected=1.0 / TWO_PI,
                tol=1e-12,
                run=lambda: descendants.spin_hall_conductivity_graphene(
                    invariants.delta_chern_kane_mele(
                        1.0, FillingDomain.half_filled()
                    )
                ),
            ),
        ),
    )
    c5 = Criterion(
        index=5,
        title="second Chern antiderivative values",
        budget_s=0.001,
        claims=(
            Claim(
                id="chern2-full-domain",
                label="two-branch antiderivative second Chern number equals 1",
                expected=1.0,
                tol=1e-12,
                run=lambda: invariants.chern2_energy(
                    1.0, FillingDomain.full()
                ).value,
            ),
            Claim(
                id="chern2-half-filled",
                label="half-filled second Chern number equals 1/2",
                expected=0.5,
                tol=1e-12,
                run=lambda: invariants.chern2_energy(
                    1.0, FillingDomain.half_filled()
                ).value,
            ),
        ),
    )
    c6 = Criterion(
        index=6,
        title="four-momentum positive-band quadrature",
        budget_s=30.0,
        claims=(
            Claim(
                id="chern2-quadrature-4p1",
                label="positive-band quadrature of the four-momentum cone "
                "equals -1/2 (antiderivative oracle)",
                expected=invariants.chern2_energy(
                    1.0, FillingDomain.positive_band()
                ).value,
                tol=1e-5,
                run=lambda: invariants.chern2_quadrature(
                    representation_4p1(), 1.0, tol=1e-7
                ).value,
            ),
        ),
    )
    c7 = Criterion(
        index=7,
        title="pointwise curvature cross-checks",
        budget_s=10.0,
        claims=(
            Claim(
                id="curvature-fd-2p1",
                label="closed form vs finite differences, planar set "
                "(worst of 1000 points)",
                expected=0.0,
                tol=1e-6,
                run=lambda: _curvature_fd_residual(representation_2p1(), 1000, 11),
            ),
            Claim(
                id="curvature-fd-4p1",
                label="closed form vs finite differences, four-momentum set "
                "(worst of 1000 points)",
                expected=0.0,
                tol=1e-6,
                run=lambda: _curvature_fd_residual(representation_4p1(), 1000, 12),
            ),
            Claim(
                id="chern-density-4p1",
                label="Levi-Civita density equals -12m/E^5 (worst of 1000 points)",
                expected=0.0,
                tol=1e-10,
                run=lambda: _chern_density_residual(1000, 13),
            ),
        ),
    )
    c8 = Criterion(
        index=8,
        title="pure-gauge flatness",
        budget_s=5.0,
        claims=(
            Claim(
                id="pure-gauge-flatness",
                label="field strength of the flat FW gauge field vanishes "
                "(worst of 100 points)",
                expected=0.0,
                tol=1e-5,
                run=lambda: _flatness_residual(50, 21),
            ),
        ),
    )
    c9 = Criterion(
        index=9,
        title="block sign relations",
        budget_s=10.0,
        claims=(
            Claim(
                id="block-connection-map",
                label="spin-down connections equal sign-mapped spin-up "
                "connections under k4 reversal",
                expected=0.0,
                tol=1e-12,
                run=lambda: _block_map_residual("connection", 100, 31),
            ),
            Claim(
                id="block-curvature-map",
                label="spin-down curvatures equal sign-mapped spin-up "
                "curvatures under k4 reversal",
                expected=0.0,
                tol=1e-12,
                run=lambda: _block_map_residual("curvature", 100, 32),
            ),
            Claim(
                id="spin-chern-table-half",
                label="half-filled block table equals (1/2, 1/2, -1/2, -1/2)",
                expected=0.0,
                tol=1e-12,
                run=lambda: _spin_table_residual("half"),
            ),
        ),
    )
    c10 = Criterion(
        index=10,
        title="time-reversal checks",
        budget_s=1.0,
        claims=(
            Claim(
                id="tr-kane-mele",
                label="valley/spin doubled planar model is time-reversal invariant",
                expected=1.0,
                tol=0.0,
                run=lambda: float(
                    models.time_reversal_check(models.catalog("kane_mele"))
                ),
            ),
            Claim(
                id="tr-dirac4p1",
                label="four-momentum Dirac Hamiltonian is time-reversal invariant",
                expected=1.0,
                tol=0.0,
                run=lambda: float(
                    models.time_reversal_check(models.catalog("dirac4p1"))
                ),
            ),
            Claim(
                id="tr-tri-3p1",
                label="doubled three-momentum model stays invariant with a "
                "frozen fourth direction",
                expected=1.0,
                tol=0.0,
                run=lambda: float(
                    models.time_reversal_check(
                        models.catalog("tri_3p1", theta=0.7)
                    )
                ),
            ),
            Claim(
                id="trb-reduced-theta",
                label="plain three-momentum reduction with a frozen fourth "
                "direction breaks time reversal",
                expected=0.0,
                tol=0.0,
                run=lambda: float(
                    models.time_reversal_check(models.reduced_3p1(theta=0.7))
                ),
            ),
        ),
    )

    wall_half = descendants.DomainWallProfile.from_endpoints(math.pi, 64)
    wall_third = descendants.DomainWallProfile.from_endpoints(TWO_PI / 3.0, 64)
    wall_full = descendants.DomainWallProfile.from_endpoints(TWO_PI, 64)
    c11 = Criterion(
        index=11,
        title="descendant observables",
        budget_s=5.0,
        claims=(
            Claim(
                id="polarization-loop",
                label="charge polarization changes by 1 over a full angular loop",
                expected=1.0,
                tol=1e-12,
                run=lambda: descendants.charge_polarization(TWO_PI, 1.0)
                - descendants.charge_polarization(0.0, 1.0),
            ),
            Claim(
                id="soliton-half",
                label="soliton charge 1/2 for a 0 -> pi wall",
                expected=0.5,
                tol=1e-12,
                run=lambda: descendants.goldstone_wilczek_charge(wall_half),
            ),
            Claim(
                id="soliton-third",
                label="soliton charge 1/3 for a 2pi/3 wall",
                expected=1.0 / 3.0,
                tol=1e-12,
                run=lambda: descendants.goldstone_wilczek_charge(wall_third),
            ),
            Claim(
                id="p3-loop",
                label="magnetoelectric polarization changes by 1 over a full loop",
                expected=1.0,
                tol=1e-12,
                run=lambda: descendants.magnetoelectric_polarization(TWO_PI, 1.0)
                - descendants.magnetoelectric_polarization(0.0, 1.0),
            ),
            Claim(
                id="surface-hall",
                label="surface Hall conductivity 1/4pi for a 2pi wall at "
                "half filling (units e^2/hbar)",
                expected=1.0 / (4.0 * math.pi),
                tol=1e-12,
                run=lambda: descendants.surface_hall_conductivity(wall_full, 0.5),
            ),
            Claim(
                id="spin-hall-3p1",
                label="doubled-model spin Hall conductivity 1/2pi (units e)",
                expected=1.0 / TWO_PI,
                tol=1e-12,
                run=lambda: descendants.spin_hall_conductivity_3p1(
                    models.spin_chern_table(FillingDomain.half_filled())
                ),
            ),
            Claim(
                id="skyrmion-charge",
                label="integrated angular field strength reproduces its "
                "Chern input on a 400x400 grid",
                expected=1.0,
                tol=1e-4,
                run=lambda: _skyrmion_charge(1.0, 400),
            ),
            Claim(
                id="pumped-charge",
                label="pumped charge 1/2 for a half-filled polarization sweep",
                expected=0.5,
                tol=1e-12,
                run=lambda: descendants.pumped_charge(0.5),
            ),
        ),
    )
    c12 = Criterion(
        index=12,
        title="structural invariant sweep",
        budget_s=30.0,
        claims=(
            Claim(
                id="structural-sweep",
                label="algebra, unitarity, projector, and normalization "
                "residuals over 10^4 random samples",
                expected=0.0,
                tol=1e-10,
                run=lambda: _structural_sweep(10_000, 41),
            ),
        ),
    )
    return (c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12)


def claim_registry() -> dict[str, str]:
    """Claim id -> human label, for annotating reports."""
    return {
        claim.id: claim.label
        for criterion in acceptance_criteria()
        for claim in criterion.claims
    }


def run_acceptance(inject_sign_bug: bool = False) -> list[ClaimResult]:
    """Execute every claim with timings; deterministic across runs."""
    # warm up allocators and import-time laziness so sub-ms budgets are real
    invariants.chern1_energy(1.0, FillingDomain.full())
    results = []
    for criterion in acceptance_criteria(inject_sign_bug=inject_sign_bug):
        for claim in criterion.claims:
            start = time.perf_counter()
            value = claim.run()
            elapsed = (time.perf_counter() - start) * 1e3
            passed = abs(value - claim.expected) <= claim.tol
            results.append(
                ClaimResult(
                    criterion=criterion.index,
                    id=claim.id,
                    label=claim.label,
                    value=float(value),
                    expected=claim.expected,
                    tol=claim.tol,
                    passed=passed,
                    elapsed_ms=elapsed,
                )
            )
    return results
