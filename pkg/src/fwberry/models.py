"""Catalog of concrete Dirac families and their discrete-symmetry checks.

Block labels follow the spin-major convention: the Kronecker factors are
ordered (spin s) (x) (valley tau) (x) (orbital block), so four-block families
list their diagonal blocks as up+, up-, down+, down-.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import (
    MAT_TOL,
    Representation,
    SIGMA_2,
    kron_extend,
    matrices_close,
    max_abs,
    representation_2p1,
    representation_4p1,
    with_alpha_signs,
)
from .invariants import FillingDomain, block_chern_table, chern2_quadrature
from .spectral import hamiltonian

MODEL_NAMES = (
    "dirac2p1",
    "kane_mele",
    "dirac4p1",
    "tri_3p1",
    "app_up_plus",
    "app_up_minus",
    "app_down_plus",
    "app_down_minus",
)

BLOCK_LABELS = ("up+", "up-", "down+", "down-")

# Diagonal label-space operators in the spin-major block order above.
S_Z_DIAG = (1, 1, -1, -1)
TAU_Z_DIAG = (1, -1, 1, -1)
TAU_S_DIAG = tuple(s * t for s, t in zip(S_Z_DIAG, TAU_Z_DIAG))
ONES_DIAG = (1, 1, 1, 1)


@dataclass(frozen=True, eq=False)
class ModelSpec:
    """One Hamiltonian family: matrices, signed masses, optional symmetry data.

    ``hamiltonian_mass`` is the signed value multiplying beta; ``block_masses``
    lists the signed mass of each diagonal block (a single entry for plain
    models).  ``live_dims`` counts the momentum components entering H;
    reduced models carry the remaining direction as the constant
    ``frozen_term`` matrix.  ``tr_unitary`` is the unitary part of an
    antiunitary candidate T = U K with K = conjugation plus k -> -k.
    """

    name: str
    rep: Representation
    mass: float
    hamiltonian_mass: float
    block_masses: tuple[float, ...]
    live_dims: int
    tr_unitary: np.ndarray | None = None
    frozen_term: np.ndarray | None = None

    def __post_init__(self):
        n_blocks = len(self.rep.blocks) if self.rep.is_decorated else 1
        if len(self.block_masses) != n_blocks:
            raise ValueError("one signed mass per diagonal block required")
        if self.tr_unitary is not None:
            u = self.tr_unitary
            if not matrices_close(u @ u.conj().T, np.eye(u.shape[0])):
                raise ValueError("time-reversal unitary part must be unitary")


def _tau_s_unitary(orbital_dim: int) -> np.ndarray:
    """tau_y s_y on the label space, identity on the orbital block."""
    return np.kron(SIGMA_2, np.kron(SIGMA_2, np.eye(orbital_dim)))


def kane_mele_representation() -> Representation:
    """Valley/spin doubled planar family: alpha_1 tau_z k_x + alpha_2 k_y
    with mass matrix tau_z s_z beta."""
    return kron_extend(
        representation_2p1(),
        [TAU_Z_DIAG, ONES_DIAG, TAU_S_DIAG],
        block_labels=BLOCK_LABELS,
    )


def spin_valley_4p1_representation() -> Representation:
    """Sixteen-dimensional family (alpha_1, tau_z alpha_2, alpha_3, alpha_4)
    with mass matrix tau_z s_z beta; its diagonal blocks are the four
    signed-mass four-momentum Hamiltonians."""
    return kron_extend(
        representation_4p1(),
        [ONES_DIAG, TAU_Z_DIAG, ONES_DIAG, ONES_DIAG, TAU_S_DIAG],
        block_labels=BLOCK_LABELS,
    )


_APPENDIX_SIGNS = {
    "app_up_plus": ((1, 1, 1, 1), 1),
    "app_up_minus": ((1, -1, 1, 1), -1),
    "app_down_plus": ((1, 1, 1, 1), -1),
    "app_down_minus": ((1, -1, 1, 1), 1),
}


def catalog(name: str, m: float = 1.0, theta: float = 0.0) -> ModelSpec:
    """Build a named model at mass parameter m.

    ``theta`` only affects ``tri_3p1``, where it is the constant reduced
    fourth-momentum parameter multiplying the alpha_4 direction.
    """
    if name == "dirac2p1":
        return ModelSpec(
            name=name,
            rep=representation_2p1(),
            mass=m,
            hamiltonian_mass=m,
            block_masses=(m,),
            live_dims=2,
        )
    if name == "kane_mele":
        rep = kane_mele_representation()
        return ModelSpec(
            name=name,
            rep=rep,
            mass=m,
            hamiltonian_mass=m,
            block_masses=tuple(b.mass_sign * m for b in rep.blocks),
            live_dims=2,
            tr_unitary=_tau_s_unitary(2),
        )
    if name == "dirac4p1":
        rep = representation_4p1()
        return ModelSpec(
            name=name,
            rep=rep,
            mass=m,
            hamiltonian_mass=m,
            block_masses=(m,),
            live_dims=4,
            tr_unitary=rep.alphas[1] @ rep.alphas[3],
        )
    if name == "tri_3p1":
        rep = spin_valley_4p1_representation()
        frozen = theta * np.kron(np.eye(4), representation_4p1().alphas[3])
        return ModelSpec(
            name=name,
            rep=rep,
            mass=m,
            hamiltonian_mass=m,
            block_masses=tuple(b.mass_sign * m for b in rep.blocks),
            live_dims=3,
            tr_unitary=_tau_s_unitary(4),
            frozen_term=frozen,
        )
    if name in _APPENDIX_SIGNS:
        signs, mass_sign = _APPENDIX_SIGNS[name]
        rep = with_alpha_signs(representation_4p1(), signs)
        return ModelSpec(
            name=name,
            rep=rep,
            mass=m,
            hamiltonian_mass=mass_sign * m,
            block_masses=(mass_sign * m,),
            live_dims=4,
        )
    raise ValueError(f"unknown model {name!r}; known: {', '.join(MODEL_NAMES)}")


def reduced_3p1(m: float = 1.0, theta: float = 0.0) -> ModelSpec:
    """Three-momentum reduction of the plain four-momentum Hamiltonian with a
    constant alpha_4 term; breaks time reversal whenever theta != 0."""
    rep = representation_4p1()
    return ModelSpec(
        name="reduced_3p1",
        rep=rep,
        mass=m,
        hamiltonian_mass=m,
        block_masses=(m,),
        live_dims=3,
        tr_unitary=rep.alphas[1] @ rep.alphas[3],
        frozen_term=theta * rep.alphas[3],
    )


def model_hamiltonian(spec: ModelSpec, k) -> np.ndarray:
    """Hamiltonian of the model at a live momentum (frozen directions added)."""
    k = np.asarray(k, dtype=float)
    if k.shape != (spec.live_dims,):
        raise ValueError(f"model {spec.name} takes {spec.live_dims} momenta")
    if spec.live_dims == spec.rep.space_dim and spec.frozen_term is None:
        return hamiltonian(spec.rep, k, spec.hamiltonian_mass)
    h = spec.hamiltonian_mass * spec.rep.beta.astype(complex)
    for i in range(spec.live_dims):
        h = h + k[i] * spec.rep.alphas[i]
    if spec.frozen_term is not None:
        h = h + spec.frozen_term
    return h


def time_reversal_check(spec: ModelSpec, samples: int = 100, seed: int = 0) -> bool:
    """True when U H*(-k) U^dag reproduces H(k) at every sampled momentum.

    The antiunitary candidate conjugates entries and reverses the live
    momenta; frozen directions (reduced models) are left untouched.
    """
    if spec.tr_unitary is None:
        raise ValueError(f"model {spec.name} carries no time-reversal candidate")
    u = spec.tr_unitary
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        k = rng.uniform(-3.0, 3.0, size=spec.live_dims)
        h = model_hamiltonian(spec, k)
        h_rev = u @ model_hamiltonian(spec, -k).conj() @ u.conj().T
        if max_abs(h_rev - h) >= MAT_TOL:
            return False
    return True


def spin_chern_table(
    domain: FillingDomain,
    m: float = 1.0,
    method: str = "antiderivative",
    tol: float = 1e-6,
) -> dict[str, float]:
    """Second Chern number of each spin/valley block of the 16x16 family.

    ``antiderivative`` uses the per-block effective masses; ``quadrature``
    integrates each block's own curvature (only the positive band is
    available on that route).
    """
    blocks = spin_valley_4p1_representation().blocks
    if method == "antiderivative":
        return block_chern_table(blocks, m, 2, domain)
    if method == "quadrature":
        if domain.kind != "positive":
            raise ValueError("quadrature integrates the positive band only")
        return {
            b.label: chern2_quadrature(b.rep, b.mass_sign * m, tol=tol).value
            for b in blocks
        }
    raise ValueError(f"unknown method {method!r}")
