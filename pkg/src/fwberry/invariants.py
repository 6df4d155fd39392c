"""Chern numbers: filling-domain antiderivative prescription and quadrature.

Two deliberately independent routes are exposed:

* ``chern*_energy`` evaluates the closed-form antiderivative of the
  energy-space integrand between signed-energy endpoints.  The signed
  integrals formally pass through the gap; evaluating the antiderivative at
  the stated endpoints is exactly the arithmetic that produces the quantized
  values 1, 1/2, 2 for the standard filling choices.
* ``chern*_quadrature`` integrates the pointwise Berry curvature over the
  positive band by adaptive radial quadrature with an analytic power-law tail.

The two routes differ by a fixed orientation convention, recorded in
ORIENTATION_SIGN: positive-band quadrature returns -1/2 where the half-filled
prescription returns +1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .berry import berry_curvature, chern_integrand_4p1
from .clifford import Representation
from .quadrature import adaptive_quadrature

# Calibrated once against the full-domain value +1: multiplying a
# positive-band quadrature result by this constant reproduces the sign of the
# occupied-band antiderivative prescription.  Never applied silently.
ORIENTATION_SIGN = -1.0

_DOMAIN_KINDS = ("full", "half", "positive", "custom")


@dataclass(frozen=True)
class FillingDomain:
    """Signed-energy integration range encoding the level filling.

    ``full`` sums the two branch integrals (-inf, g] and [-g, +inf);
    ``half`` is the occupied-up-to-the-gap-edge prescription (-inf, g];
    ``positive`` covers the upper band [g, +inf); ``custom`` takes explicit
    signed endpoints.  Here g denotes the gap edge |m|.
    """

    kind: str
    lo: float | None = None
    hi: float | None = None

    def __post_init__(self):
        if self.kind not in _DOMAIN_KINDS:
            raise ValueError(f"unknown filling domain {self.kind!r}")
        if self.kind == "custom":
            if self.lo is None or self.hi is None:
                raise ValueError("custom domain needs both endpoints")
            if not self.lo < self.hi:
                raise ValueError("custom domain needs lo < hi")

    @classmethod
    def full(cls) -> "FillingDomain":
        return cls("full")

    @classmethod
    def half_filled(cls) -> "FillingDomain":
        return cls("half")

    @classmethod
    def positive_band(cls) -> "FillingDomain":
        return cls("positive")

    @classmethod
    def custom(cls, lo: float, hi: float) -> "FillingDomain":
        return cls("custom", lo=float(lo), hi=float(hi))


@dataclass(frozen=True)
class ChernValue:
    """A Chern number with an honest error bar.

    Antiderivative results are exact (abs_error 0); quadrature results carry
    the adaptive scheme's estimate plus the tail-fit residual.
    """

    value: float
    abs_error: float
    method: str


def _segments(domain: FillingDomain, gap: float):
    if domain.kind == "full":
        return ((-math.inf, gap), (-gap, math.inf))
    if domain.kind == "half":
        return ((-math.inf, gap),)
    if domain.kind == "positive":
        return ((gap, math.inf),)
    for endpoint in (domain.lo, domain.hi):
        if math.isfinite(endpoint) and abs(endpoint) < gap * (1.0 - 1e-12):
            raise ValueError(
                f"endpoint {endpoint} lies inside the gap (|E| < {gap}); "
                "no states live there"
            )
    return ((domain.lo, domain.hi),)


def _eval_antiderivative(prim, segments) -> float:
    total = 0.0
    for lo, hi in segments:
        total += prim(hi) - prim(lo)
    return total


def chern1_energy(m: float, domain: FillingDomain) -> ChernValue:
    """First Chern number from -(m/2) * integral dE/E^2 over the domain.

    The antiderivative m/(2E) is evaluated at the signed endpoints, which is
    the formal prescription that yields 1 (full), 1/2 (half filled) and -1/2
    (positive band) for m > 0.  Signed m is allowed; every value is odd in m.
    """
    if m == 0:
        raise ValueError("the invariant needs a gap (m != 0)")

    def prim(e: float) -> float:
        return 0.0 if math.isinf(e) else m / (2.0 * e)

    value = _eval_antiderivative(prim, _segments(domain, abs(m)))
    return ChernValue(value=value, abs_error=0.0, method="antiderivative")


def chern2_energy(m: float, domain: FillingDomain) -> ChernValue:
    """Second Chern number from (3m/4) * integral (m^2 - E^2)/E^4 dE."""
    if m == 0:
        raise ValueError("the invariant needs a gap (m != 0)")

    def prim(e: float) -> float:
        if math.isinf(e):
            return 0.0
        return -(m**3) / (4.0 * e**3) + 3.0 * m / (4.0 * e)

    value = _eval_antiderivative(prim, _segments(domain, abs(m)))
    return ChernValue(value=value, abs_error=0.0, method="antiderivative")


# ---------------------------------------------------------------------------
# quadrature route
# ---------------------------------------------------------------------------


def _tail_correction(h, e_cut: float) -> tuple[float, float]:
    """Analytic tail of integral h(E) dE from e_cut to infinity.

    Fits h = A/E^2 + B/E^4 through h(e_cut) and h(2 e_cut); the fit is exact
    for the Dirac-band integrands, and the residual at 4 e_cut provides an
    honest error probe.
    """
    h1, h2 = h(e_cut), h(2.0 * e_cut)
    u = 1.0 / (e_cut * e_cut)
    a = (16.0 * h2 - h1) / (3.0 * u)
    b = (h1 - a * u) / (u * u)
    tail = a / e_cut + b / (3.0 * e_cut**3)
    probe = a / (16.0 * e_cut**2) + b / (256.0 * e_cut**4)
    tail_err = abs(h(4.0 * e_cut) - probe) * 4.0 * e_cut
    return tail, tail_err


def _isotropy_spread(f, dim: int, gap: float, seed: int) -> bool:
    """Sample the integrand on four shells; True when rotation invariant."""
    rng = np.random.default_rng(seed)
    for radius in (0.5 * gap, gap, 2.0 * gap, 4.0 * gap):
        vals = []
        for _ in range(16):
            direction = rng.normal(size=dim)
            direction /= np.linalg.norm(direction)
            vals.append(f(radius * direction))
        spread = max(vals) - min(vals)
        scale = max(abs(v) for v in vals)
        mean = sum(vals) / len(vals)
        if spread > 1e-9 * abs(mean) + 1e-13 * scale:
            return False
    return True


def _trace_curvature_12(rep: Representation, m: float, method):
    def f(k):
        field = berry_curvature(rep, k, m, method=method)
        return float(np.trace(field.component(1, 2)).real)

    return f


def _radial_value(h, gap, tol, e_cut, max_subdivisions):
    quad = adaptive_quadrature(
        h, gap, e_cut, tol=0.5 * tol, max_subdivisions=max_subdivisions
    )
    tail, tail_err = _tail_correction(h, e_cut)
    return quad.value + tail, quad.abs_error + tail_err


def chern1_quadrature(
    rep: Representation,
    m: float,
    band: str = "positive",
    tol: float = 1e-8,
    e_cut: float | None = None,
    method: str | None = None,
    max_subdivisions: int = 200,
    force_tensor: bool = False,
    seed: int = 0,
) -> ChernValue:
    """Positive-band first Chern number by momentum-space quadrature.

    Isotropic integrands (asserted by shell sampling) collapse to one radial
    integral after the change of variable k dk = E dE; otherwise the angular
    average is taken on an equally spaced periodic grid inside the radial
    quadrature.  The tail beyond e_cut (default 50 |m|) is added analytically.
    """
    if rep.space_dim != 2:
        raise ValueError("first Chern quadrature needs two momentum components")
    if m == 0:
        raise ValueError("the invariant needs a gap (m != 0)")
    if band != "positive":
        raise ValueError("only the positive band is integrated directly")
    gap = abs(m)
    e_cut = 50.0 * gap if e_cut is None else float(e_cut)
    trf = _trace_curvature_12(rep, m, method)

    if not force_tensor and _isotropy_spread(trf, 2, gap, seed):

        def h(e: float) -> float:
            k = math.sqrt(max(e * e - m * m, 0.0))
            return e * trf(np.array([k, 0.0]))

    else:
        theta = np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False)
        dirs = np.stack([np.cos(theta), np.sin(theta)], axis=1)

        def h(e: float) -> float:
            k = math.sqrt(max(e * e - m * m, 0.0))
            vals = [trf(k * d) for d in dirs]
            return e * float(np.mean(vals))

    value, err = _radial_value(h, gap, tol, e_cut, max_subdivisions)
    return ChernValue(value=value, abs_error=err, method="quadrature")


def chern2_quadrature(
    rep: Representation,
    m: float,
    band: str = "positive",
    tol: float = 1e-8,
    e_cut: float | None = None,
    method: str | None = None,
    max_subdivisions: int = 200,
    force_tensor: bool = False,
    seed: int = 0,
    polar_order: int = 12,
    azimuth_order: int = 24,
) -> ChernValue:
    """Positive-band second Chern number by momentum-space quadrature.

    The Levi-Civita density is integrated over four-momentum space; isotropy
    reduces the integral to the radial direction through k^3 dk =
    (E^2 - m^2) E dE with the 3-sphere volume 2 pi^2 folded into the 1/32pi^2
    normalization.  Anisotropic integrands fall back to a tensor product of
    the radial rule with fixed-order angular grids.
    """
    if rep.space_dim != 4:
        raise ValueError("second Chern quadrature needs four momentum components")
    if m == 0:
        raise ValueError("the invariant needs a gap (m != 0)")
    if band != "positive":
        raise ValueError("only the positive band is integrated directly")
    gap = abs(m)
    e_cut = 50.0 * gap if e_cut is None else float(e_cut)

    def density(k) -> float:
        return chern_integrand_4p1(rep, k, m, method=method)

    if not force_tensor and _isotropy_spread(density, 4, gap, seed):

        def h(e: float) -> float:
            k = math.sqrt(max(e * e - m * m, 0.0))
            return (e * e - m * m) * e * density(np.array([k, 0.0, 0.0, 0.0])) / 16.0

    else:
        x1, w1 = np.polynomial.legendre.leggauss(polar_order)
        phi1 = 0.5 * math.pi * (x1 + 1.0)
        wphi1 = 0.5 * math.pi * w1 * np.sin(phi1) ** 2
        x2, w2 = np.polynomial.legendre.leggauss(polar_order)
        phi2 = 0.5 * math.pi * (x2 + 1.0)
        wphi2 = 0.5 * math.pi * w2 * np.sin(phi2)
        phi3 = np.linspace(0.0, 2.0 * math.pi, azimuth_order, endpoint=False)
        wphi3 = 2.0 * math.pi / phi3.size
        sphere = []
        for p1, wa in zip(phi1, wphi1):
            for p2, wb in zip(phi2, wphi2):
                for p3 in phi3:
                    direction = np.array(
                        [
                            math.cos(p1),
                            math.sin(p1) * math.cos(p2),
                            math.sin(p1) * math.sin(p2) * math.cos(p3),
                            math.sin(p1) * math.sin(p2) * math.sin(p3),
                        ]
                    )
                    sphere.append((direction, wa * wb * wphi3))

        def h(e: float) -> float:
            k = math.sqrt(max(e * e - m * m, 0.0))
            acc = 0.0
            for direction, weight in sphere:
                acc += weight * density(k * direction)
            return (e * e - m * m) * e * acc / (32.0 * math.pi**2)

    value, err = _radial_value(h, gap, tol, e_cut, max_subdivisions)
    return ChernValue(value=value, abs_error=err, method="quadrature")


# ---------------------------------------------------------------------------
# assembled invariants
# ---------------------------------------------------------------------------


def block_chern_table(blocks, m: float, n: int, domain: FillingDomain) -> dict:
    """Per-block Chern numbers via the antiderivative prescription.

    Each block contributes the plain-Dirac value of its effective mass (the
    signed block mass times the orientation parity of its alpha flips).
    """
    fn = chern1_energy if n == 1 else chern2_energy
    return {
        block.label: fn(block.effective_mass(m), domain).value for block in blocks
    }


def delta_chern_kane_mele(m: float, domain: FillingDomain) -> float:
    """Spin-resolved first-Chern difference of the valley/spin doubled model.

    Assembles (up+ + up-) - (down+ + down-) from per-block antiderivative
    values over the half-filled prescription; equals 2 for m > 0.
    """
    if domain.kind != "half":
        raise ValueError("the spin-resolved difference is defined at half filling")
    from .models import catalog  # late import: models builds on this module

    spec = catalog("kane_mele", m=m)
    table = block_chern_table(spec.rep.blocks, m, 1, domain)
    return (table["up+"] + table["up-"]) - (table["down+"] + table["down-"])


def cs_coefficient(n: int, chern) -> float:
    """Topological action coefficient for level n: N1/(4 pi) or N2/(24 pi^2)."""
    value = chern.value if isinstance(chern, ChernValue) else float(chern)
    if n == 1:
        return value / (4.0 * math.pi)
    if n == 2:
        return value / (24.0 * math.pi**2)
    raise ValueError("only the first and second coefficients are defined")
