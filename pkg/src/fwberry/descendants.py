"""Dimensional-reduction observables: coefficient functions, polarizations,
conductivities, and topological charges.

All conductivities are pure numbers in natural units (e^2/hbar for charge
responses, e for spin responses); restoring h-factors is a formatting concern.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import adaptive_quadrature

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class ReductionCoefficient:
    """Angular coefficient function tied to a Chern-number input.

    Kinds: ``g_theta`` (constant N1/2pi on [0, 2pi]), ``g3_phi3`` (constant
    N2/2pi on [0, 2pi]) and ``g2_phi2_phi3`` ((N2/4pi) sin(phi2) on
    [0, pi] x [0, 2pi]).  Integrating the evaluator over its angular domain
    returns the Chern input; ``normalization_residual`` measures this by
    direct quadrature.
    """

    kind: str
    chern_input: float

    def __call__(self, *angles: float) -> float:
        if self.kind == "g_theta" or self.kind == "g3_phi3":
            return self.chern_input / TWO_PI
        if self.kind == "g2_phi2_phi3":
            phi2 = angles[0]
            return self.chern_input / (4.0 * math.pi) * math.sin(phi2)
        raise ValueError(f"unknown coefficient kind {self.kind!r}")

    def normalization_residual(self) -> float:
        if self.kind in ("g_theta", "g3_phi3"):
            quad = adaptive_quadrature(lambda a: self(a), 0.0, TWO_PI, tol=1e-12)
            return abs(quad.value - self.chern_input)
        # inner phi3 integral of the separable density is just a 2pi factor
        quad = adaptive_quadrature(
            lambda phi2: TWO_PI * self(phi2, 0.0), 0.0, math.pi, tol=1e-12
        )
        return abs(quad.value - self.chern_input)


def g_theta(n1: float) -> ReductionCoefficient:
    """One-angle coefficient of the first descendant theory: G(theta) = N1/2pi."""
    return ReductionCoefficient(kind="g_theta", chern_input=float(n1))


def g3_phi3(n2: float) -> ReductionCoefficient:
    """Coefficient of the three-dimensional descendant: G3(phi3) = N2/2pi."""
    return ReductionCoefficient(kind="g3_phi3", chern_input=float(n2))


def g2_phi2_phi3(n2: float) -> ReductionCoefficient:
    """Two-angle coefficient G2(phi2, phi3) = (N2/4pi) sin(phi2)."""
    return ReductionCoefficient(kind="g2_phi2_phi3", chern_input=float(n2))


def charge_polarization(theta: float, n1: float) -> float:
    """One-dimensional charge polarization P(theta) = N1 theta / 2pi, P(0) = 0."""
    if not 0.0 <= theta <= TWO_PI:
        raise ValueError("theta must lie in [0, 2pi]")
    return n1 * theta / TWO_PI


def magnetoelectric_polarization(phi3: float, n2: float) -> float:
    """Magnetoelectric polarization P3(phi3) = N2 phi3 / 2pi."""
    if not 0.0 <= phi3 <= TWO_PI:
        raise ValueError("phi3 must lie in [0, 2pi]")
    return n2 * phi3 / TWO_PI


@dataclass(frozen=True, eq=False)
class DomainWallProfile:
    """A sampled one-dimensional background field on an ascending grid."""

    coordinates: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.coordinates, dtype=float)
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "coordinates", x)
        object.__setattr__(self, "values", v)
        if x.ndim != 1 or v.shape != x.shape or x.size < 2:
            raise ValueError("profile needs matching 1-D grids of length >= 2")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(v))):
            raise ValueError("profile samples must be finite")
        if not np.all(np.diff(x) > 0):
            raise ValueError("profile coordinates must be strictly ascending")

    @classmethod
    def from_endpoints(cls, delta: float, n: int = 2) -> "DomainWallProfile":
        """Linear ramp from 0 to delta, handy for synthetic walls."""
        x = np.linspace(0.0, 1.0, n)
        return cls(coordinates=x, values=delta * x)

    def endpoint_change(self) -> float:
        """Cell-wise trapezoidal integral of the gradient.

        Integrating the per-cell gradient over each cell telescopes to the
        endpoint difference up to rounding, so interior samples are irrelevant.
        """
        return float(np.sum(np.diff(self.values)))


def goldstone_wilczek_charge(profile: DomainWallProfile) -> float:
    """Induced soliton charge Q = (change of the background field) / 2pi."""
    return profile.endpoint_change() / TWO_PI


def surface_hall_conductivity(profile: DomainWallProfile, n2: float) -> float:
    """Surface Hall conductivity N2 * (field change across the wall) / (2pi)^2,
    in units of e^2/hbar."""
    return n2 * profile.endpoint_change() / (TWO_PI * TWO_PI)


def spin_hall_conductivity_3p1(table: dict[str, float]) -> float:
    """Spin Hall response (1/4pi)(up+ + up- - down+ - down-), in units of e.

    ``table`` maps the four block labels to their second Chern numbers; the
    stated value assumes a full 2pi wall in the reduced direction.
    """
    try:
        up = table["up+"] + table["up-"]
        down = table["down+"] + table["down-"]
    except KeyError as exc:
        raise ValueError(f"missing block label {exc.args[0]!r}") from exc
    return (up - down) / (4.0 * math.pi)


def spin_hall_conductivity_graphene(delta_n1: float) -> float:
    """Planar spin Hall response delta_N1 / 4pi, in units of e."""
    return delta_n1 / (4.0 * math.pi)


def pumped_charge(n2: float, dtheta: float = TWO_PI) -> float:
    """Charge pumped by a polarization sweep: the change of N2 theta / 2pi."""
    return n2 * dtheta / TWO_PI


@dataclass(frozen=True, eq=False)
class OmegaField:
    """Sampled angular gauge field of the planar descendant theory.

    ``field_strength`` holds the finite-difference curl d_phi Omega_theta -
    d_theta Omega_phi on the (theta, phi) grid, which for the defining
    coefficients equals (N2/2) sin(phi) up to O(grid^2).
    """

    theta: np.ndarray
    phi: np.ndarray
    omega_theta: np.ndarray
    omega_phi: np.ndarray
    field_strength: np.ndarray

    def skyrmion_charge(self) -> float:
        """Total charge (1/2pi) * double integral of the field strength.

        Over the full rectangle [0, 2pi] x [0, pi] this converges to the N2
        input at second order in the grid spacings.
        """
        inner = np.trapezoid(self.field_strength, x=self.phi, axis=1)
        return float(np.trapezoid(inner, x=self.theta)) / TWO_PI


def omega_field(theta_grid, phi_grid, n2: float) -> OmegaField:
    """Angular gauge field Omega = (-(N2/4) cos phi, -(N2/4) theta sin phi).

    Takes theta in [0, 2pi] and phi in [0, pi]; returns the sampled
    components together with their finite-difference field strength.
    """
    theta = np.asarray(theta_grid, dtype=float)
    phi = np.asarray(phi_grid, dtype=float)
    if theta.ndim != 1 or phi.ndim != 1 or theta.size < 2 or phi.size < 2:
        raise ValueError("need 1-D angular grids with at least two samples")
    if theta.min() < -1e-12 or theta.max() > TWO_PI + 1e-12:
        raise ValueError("theta grid must lie in [0, 2pi]")
    if phi.min() < -1e-12 or phi.max() > math.pi + 1e-12:
        raise ValueError("phi grid must lie in [0, pi]")
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    omega_theta = -(n2 / 4.0) * np.cos(pp)
    omega_phi = -(n2 / 4.0) * tt * np.sin(pp)
    d_omega_theta_d_phi = np.gradient(omega_theta, phi, axis=1)
    d_omega_phi_d_theta = np.gradient(omega_phi, theta, axis=0)
    strength = d_omega_theta_d_phi - d_omega_phi_d_theta
    return OmegaField(
        theta=theta,
        phi=phi,
        omega_theta=omega_theta,
        omega_phi=omega_phi,
        field_strength=strength,
    )
