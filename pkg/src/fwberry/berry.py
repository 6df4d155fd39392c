"""Pure gauge field, projected Berry connection, and Berry curvature.

Three curvature routes are provided and cross-checked against each other:

* ``closed_form`` -- hand-derived expressions for the catalog representations
  (the planar scalar -m/2E^3, the six four-momentum components, and their
  sign-flipped block variants),
* ``analytic_diff`` -- exact termwise differentiation of the projected
  connection, valid for any plain representation,
* ``finite_diff`` -- central differences of the connection plus the
  non-Abelian commutator.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .clifford import (
    Representation,
    SIGMA_1,
    SIGMA_2,
    SIGMA_3,
    block_diag,
    max_abs,
    swap_energy_blocks,
)
from .spectral import energy, spectral_data

CURVATURE_METHODS = ("closed_form", "analytic_diff", "finite_diff")


class ClosedFormUnavailable(ValueError):
    """No hand-derived curvature exists for this representation."""


def _check_point(rep: Representation, k, m: float) -> np.ndarray:
    if m == 0:
        raise ValueError("gapless spectra (m = 0) are not supported")
    k = np.asarray(k, dtype=float)
    if k.shape != (rep.space_dim,):
        raise ValueError(
            f"momentum has {k.size} components, representation needs {rep.space_dim}"
        )
    if not np.all(np.isfinite(k)):
        raise ValueError("momentum components must be finite")
    return k


@dataclass(frozen=True, eq=False)
class ConnectionField:
    """Per-direction gauge-field matrices evaluated at one momentum."""

    components: tuple[np.ndarray, ...]
    momentum: np.ndarray

    def __getitem__(self, i: int) -> np.ndarray:
        """1-based direction index."""
        return self.components[i - 1]


@dataclass(frozen=True, eq=False)
class CurvatureField:
    """Antisymmetric matrix-valued field strength, stored for I < J only."""

    pairs: tuple[tuple[int, int], ...]
    matrices: tuple[np.ndarray, ...]
    momentum: np.ndarray
    method: str

    def component(self, i: int, j: int) -> np.ndarray:
        """F_IJ for any 1-based pair; F_JI materialized as -F_IJ."""
        if i == j:
            return np.zeros_like(self.matrices[0])
        key = (i, j) if i < j else (j, i)
        sign = 1.0 if i < j else -1.0
        return sign * self.matrices[self.pairs.index(key)]


def _working_rep(rep: Representation, m: float):
    """Plain representation + nonnegative mass actually used in formulas.

    Negative masses are evaluated in the energy-block-swapped basis, which
    keeps E + |m| in every denominator and leaves the occupied branch in the
    upper block.
    """
    if m > 0:
        return rep, m
    return swap_energy_blocks(rep), -m


def pure_gauge_field(
    rep: Representation, k, m: float, check: bool = False, step: float = 1e-4
) -> ConnectionField:
    """Full-space flat gauge field i U d(U^dag)/dk of the FW unitary.

    Evaluated from the closed form in terms of alpha, beta and the spin
    tensor; with ``check=True`` the result is compared against central finite
    differences of i U dU^dag at the same point and a disagreement beyond
    O(step^2) raises.
    """
    if rep.is_decorated:
        k = _check_point(rep, k, m)
        parts = [
            pure_gauge_field(b.rep, k, b.mass_sign * m, check=check, step=step)
            for b in rep.blocks
        ]
        comps = tuple(
            block_diag([p.components[i] for p in parts]) for i in range(rep.space_dim)
        )
        return ConnectionField(components=comps, momentum=k)

    k = _check_point(rep, k, m)
    work, m_eff = _working_rep(rep, m)
    e = energy(k, m_eff)
    alpha_dot_k = sum(ki * a for ki, a in zip(k, work.alphas))
    pref = 1j / (2.0 * e * e * (e + m_eff))
    comps = []
    for i in range(work.space_dim):
        term = e * (e + m_eff) * (work.alphas[i] @ work.beta)
        term = term + (work.beta @ alpha_dot_k) * k[i]
        spin_part = np.zeros((work.dim, work.dim), dtype=complex)
        for j in range(work.space_dim):
            if j == i:
                continue
            sig = -0.5j * (
                work.alphas[i] @ work.alphas[j] - work.alphas[j] @ work.alphas[i]
            )
            spin_part = spin_part + sig * k[j]
        comps.append(pref * (term - 1j * e * spin_part))
    field = ConnectionField(components=tuple(comps), momentum=k)

    if check:
        fd = _pure_gauge_fd(rep, k, m, step)
        worst = max(
            max_abs(a - b) for a, b in zip(field.components, fd.components)
        )
        if worst > 100.0 * step * step:
            raise AssertionError(
                f"flat gauge field disagrees with finite differences: {worst:.3e}"
            )
    return field


def _pure_gauge_fd(rep: Representation, k, m: float, step: float) -> ConnectionField:
    """i U(k) dU^dag/dk by central differences of the FW unitary."""
    k = np.asarray(k, dtype=float)
    u0 = spectral_data(rep, k, m).fw_unitary
    comps = []
    for i in range(rep.space_dim):
        kp, km_ = k.copy(), k.copy()
        kp[i] += step
        km_[i] -= step
        up = spectral_data(rep, kp, m).fw_unitary
        um = spectral_data(rep, km_, m).fw_unitary
        comps.append(1j * u0 @ (up.conj().T - um.conj().T) / (2.0 * step))
    return ConnectionField(components=tuple(comps), momentum=k)


def _connection_matrices(work: Representation):
    """Constant contraction matrices M_IJ with A_I = g(E) sum_J M_IJ k_J."""
    d = work.space_dim
    mats = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            ri, rj = work.rho[i], work.rho[j]
            mats[i][j] = -1j * (ri @ rj.conj().T - rj @ ri.conj().T)
    return mats


def berry_connection(rep: Representation, k, m: float) -> ConnectionField:
    """Positive-band Berry connection (projection of the flat gauge field).

    For plain representations this is the rho-block contraction divided by
    4E(E+m); decorated families are assembled block-diagonally in the label
    order of their construction.
    """
    if rep.is_decorated:
        k = _check_point(rep, k, m)
        parts = [
            berry_connection(b.rep, k, b.mass_sign * m) for b in rep.blocks
        ]
        comps = tuple(
            block_diag([p.components[i] for p in parts]) for i in range(rep.space_dim)
        )
        return ConnectionField(components=comps, momentum=k)

    k = _check_point(rep, k, m)
    work, m_eff = _working_rep(rep, m)
    e = energy(k, m_eff)
    g = 1.0 / (4.0 * e * (e + m_eff))
    mats = _connection_matrices(work)
    d = work.space_dim
    comps = []
    for i in range(d):
        c = np.zeros((work.dim // 2, work.dim // 2), dtype=complex)
        for j in range(d):
            c = c + mats[i][j] * k[j]
        comps.append(g * c)
    return ConnectionField(components=tuple(comps), momentum=k)


def connection_projection_residual(rep: Representation, k, m: float) -> float:
    """max ||A_I - (I+ A^U I+)_upper-block|| over directions."""
    conn = berry_connection(rep, k, m)
    flat = pure_gauge_field(rep, k, m)
    if rep.is_decorated:
        data = spectral_data(rep, k, m)
        idx = np.where(np.diag(data.iplus).real > 0.5)[0]
    else:
        idx = np.arange(rep.dim // 2)
    worst = 0.0
    for a_proj, a_full in zip(conn.components, flat.components):
        block = a_full[np.ix_(idx, idx)]
        worst = max(worst, max_abs(a_proj - block))
    return worst


# ---------------------------------------------------------------------------
# closed-form curvature
# ---------------------------------------------------------------------------


def _curvature_pauli2(k, m: float, signs) -> np.ndarray:
    # Flipping one alpha reverses the planar orientation, same as flipping m.
    e = energy(k, m)
    orient = signs[0] * signs[1]
    return np.array([[orient * (-m / (2.0 * e**3))]], dtype=complex)


def _curvature_dirac4_base(k, m: float) -> dict[tuple[int, int], np.ndarray]:
    """Six field-strength components of the canonical four-momentum set, m > 0."""
    k1, k2, k3, k4 = (float(v) for v in k)
    e = energy(k, m)
    den = 2.0 * e**3 * (e + m)
    w = e * (e + m)
    f = {}
    f[(1, 2)] = (
        SIGMA_3 * (-w + k1 * k1 + k2 * k2)
        + SIGMA_2 * (k1 * k4 - k2 * k3)
        - SIGMA_1 * (k2 * k4 + k1 * k3)
    ) / den
    f[(1, 3)] = (
        SIGMA_2 * (w - k1 * k1 - k3 * k3)
        + SIGMA_1 * (k1 * k2 - k3 * k4)
        + SIGMA_3 * (k1 * k4 + k2 * k3)
    ) / den
    f[(1, 4)] = (
        SIGMA_1 * (w - k1 * k1 - k4 * k4)
        - SIGMA_2 * (k1 * k2 + k3 * k4)
        - SIGMA_3 * (k1 * k3 - k2 * k4)
    ) / den
    f[(2, 3)] = (
        SIGMA_1 * (-w + k2 * k2 + k3 * k3)
        - SIGMA_2 * (k1 * k2 + k3 * k4)
        - SIGMA_3 * (k1 * k3 - k2 * k4)
    ) / den
    f[(2, 4)] = (
        SIGMA_2 * (w - k2 * k2 - k4 * k4)
        - SIGMA_1 * (k1 * k2 - k3 * k4)
        - SIGMA_3 * (k1 * k4 + k2 * k3)
    ) / den
    f[(3, 4)] = (
        SIGMA_3 * (w - k3 * k3 - k4 * k4)
        + SIGMA_2 * (k1 * k4 - k2 * k3)
        - SIGMA_1 * (k2 * k4 + k1 * k3)
    ) / den
    return f


def _curvature_dirac4(k, m: float, signs) -> dict[tuple[int, int], np.ndarray]:
    """Closed form for any sign-flipped four-momentum block and signed mass.

    Sign flips on alphas relabel momenta (F_IJ(k) = a_I a_J F_IJ(a o k)); a
    negative mass maps onto the positive-mass form with the fourth momentum
    reversed and every component carrying one index 4 negated, which is the
    swapped-basis gauge.
    """
    k = np.asarray(k, dtype=float)
    keff = np.array([s * ki for s, ki in zip(signs, k)])
    if m > 0:
        base = _curvature_dirac4_base(keff, m)
        flip4 = 1
    else:
        kf = keff.copy()
        kf[3] = -kf[3]
        base = _curvature_dirac4_base(kf, -m)
        flip4 = -1
    out = {}
    for (i, j), mat in base.items():
        factor = signs[i - 1] * signs[j - 1]
        if flip4 < 0:
            factor *= (-1) ** (int(i == 4) + int(j == 4))
        out[(i, j)] = factor * mat
    return out


def _closed_form_plain(rep: Representation, k, m: float):
    if not rep.canonical:
        raise ClosedFormUnavailable(
            "closed-form curvature is only derived for the catalog matrices"
        )
    if rep.family == "pauli2":
        f12 = _curvature_pauli2(k, m, rep.alpha_signs)
        return {(1, 2): f12}
    if rep.family == "dirac4":
        return _curvature_dirac4(k, m, rep.alpha_signs)
    raise ClosedFormUnavailable(f"no closed form for family {rep.family!r}")


# ---------------------------------------------------------------------------
# analytic differentiation of the projected connection
# ---------------------------------------------------------------------------


def _analytic_plain(rep: Representation, k, m: float):
    """Exact derivative of A_I = g(E) M_IJ k_J plus the commutator term."""
    k = np.asarray(k, dtype=float)
    work, m_eff = _working_rep(rep, m)
    e = energy(k, m_eff)
    g = 1.0 / (4.0 * e * (e + m_eff))
    gp = -(2.0 * e + m_eff) / (4.0 * e**2 * (e + m_eff) ** 2)
    mats = _connection_matrices(work)
    d = work.space_dim
    half = work.dim // 2
    contracted = []
    for i in range(d):
        c = np.zeros((half, half), dtype=complex)
        for j in range(d):
            c = c + mats[i][j] * k[j]
        contracted.append(c)
    out = {}
    for i, j in combinations(range(1, d + 1), 2):
        ci, cj = contracted[i - 1], contracted[j - 1]
        grad = (gp / e) * (k[i - 1] * cj - k[j - 1] * ci)
        alg = -2.0 * g * mats[i - 1][j - 1]
        comm = -1j * g * g * (ci @ cj - cj @ ci)
        out[(i, j)] = grad + alg + comm
    return out


# ---------------------------------------------------------------------------
# finite differences
# ---------------------------------------------------------------------------


def default_fd_step(k) -> float:
    k = np.asarray(k, dtype=float)
    return 1e-4 * max(1.0, float(np.sqrt(k @ k)))


def field_strength_fd(conn_fn, k, step: float, include_commutator: bool = True):
    """Central-difference field strength of any matrix-valued connection.

    ``conn_fn(k)`` must return the list of per-direction matrices.  Used both
    for the finite-difference curvature route and for the flatness check of
    the full-space gauge field.
    """
    k = np.asarray(k, dtype=float)
    d = k.size
    a0 = conn_fn(k)
    derivs = []
    for i in range(d):
        kp, km_ = k.copy(), k.copy()
        kp[i] += step
        km_[i] -= step
        ap, am = conn_fn(kp), conn_fn(km_)
        derivs.append([(p - q) / (2.0 * step) for p, q in zip(ap, am)])
    out = {}
    for i, j in combinations(range(1, d + 1), 2):
        f = derivs[i - 1][j - 1] - derivs[j - 1][i - 1]
        if include_commutator:
            f = f - 1j * (a0[i - 1] @ a0[j - 1] - a0[j - 1] @ a0[i - 1])
        out[(i, j)] = f
    return out


# ---------------------------------------------------------------------------
# public curvature entry point
# ---------------------------------------------------------------------------


def berry_curvature(
    rep: Representation,
    k,
    m: float,
    method: str | None = None,
    step: float | None = None,
) -> CurvatureField:
    """Berry curvature F_IJ on the positive band at one momentum.

    ``method`` is one of closed_form / analytic_diff / finite_diff; ``None``
    picks the closed form when available and the analytic derivative
    otherwise.  ``step`` only applies to finite differences.
    """
    if method is None:
        method = "closed_form" if rep.canonical else "analytic_diff"
    if method not in CURVATURE_METHODS:
        raise ValueError(f"unknown curvature method {method!r}")
    k = _check_point(rep, k, m)
    d = rep.space_dim
    pairs = tuple(combinations(range(1, d + 1), 2))

    if rep.is_decorated:
        parts = [
            berry_curvature(b.rep, k, b.mass_sign * m, method=method, step=step)
            for b in rep.blocks
        ]
        mats = tuple(
            block_diag([p.matrices[n] for p in parts]) for n in range(len(pairs))
        )
        return CurvatureField(pairs=pairs, matrices=mats, momentum=k, method=method)

    if method == "closed_form":
        table = _closed_form_plain(rep, k, m)
    elif method == "analytic_diff":
        table = _analytic_plain(rep, k, m)
    else:
        h = default_fd_step(k) if step is None else float(step)
        if h < 1e-8:
            warnings.warn(
                "finite-difference step below 1e-8 loses accuracy to cancellation",
                stacklevel=2,
            )
        table = field_strength_fd(
            lambda kk: berry_connection(rep, kk, m).components, k, h
        )
    mats = tuple(table[p] for p in pairs)
    return CurvatureField(pairs=pairs, matrices=mats, momentum=k, method=method)


def chern_integrand_4p1(
    rep: Representation, k, m: float, method: str | None = None
) -> float:
    """Levi-Civita contraction eps_ijkl tr(F_ij F_kl) at one momentum.

    Antisymmetry reduces the 24-term contraction to the three pair partitions
    with weight 8.  For the canonical four-momentum Dirac representation this
    equals -12 m / E^5.
    """
    if rep.space_dim != 4:
        raise ValueError("the second Chern density needs four momentum components")
    f = berry_curvature(rep, k, m, method=method)
    val = (
        np.trace(f.component(1, 2) @ f.component(3, 4))
        - np.trace(f.component(1, 3) @ f.component(2, 4))
        + np.trace(f.component(1, 4) @ f.component(2, 3))
    )
    return float(8.0 * val.real)
