"""Dirac alpha/beta matrix representations and their Kronecker block extensions.

Everything downstream (spectral data, gauge fields, invariants) is built on the
``Representation`` container defined here: the anticommuting alpha matrices, the
mass matrix beta, and the off-diagonal blocks rho of the alphas in the basis
where beta = diag(1, -1).  Valley/spin doubled families are represented as
Kronecker products of a base representation with diagonal sign factors, kept
together with their block decomposition so per-block machinery can be reused.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Structural identities (anticommutators, unitarity, projector algebra) involve
# only entries 0, +-1, +-i, so any violation beyond rounding is a real bug.
MAT_TOL = 1e-12

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)

SIGMA_X, SIGMA_Y, SIGMA_Z = SIGMA_1, SIGMA_2, SIGMA_3


def _frozen(a) -> np.ndarray:
    out = np.array(a, dtype=complex)
    out.setflags(write=False)
    return out


def max_abs(a) -> float:
    """Largest entrywise magnitude, the norm used for structural checks."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def matrices_close(a, b, tol: float = MAT_TOL) -> bool:
    """Entrywise absolute comparison at the structural tolerance."""
    return max_abs(np.asarray(a) - np.asarray(b)) < tol


@dataclass(frozen=True, eq=False)
class Block:
    """One diagonal block of a Kronecker-extended representation.

    ``rep`` is a plain representation with the block's alpha sign flips folded
    in, ``mass_sign`` the sign carried by the mass term of this block.  The
    ``orientation`` (parity of the alpha flips) is what converts the signed
    block mass into the mass that enters band invariants: flipping one alpha
    reverses the momentum-space orientation exactly like flipping the mass.
    """

    label: str
    rep: "Representation"
    mass_sign: int

    @property
    def orientation(self) -> int:
        return int(np.prod(self.rep.alpha_signs))

    def effective_mass(self, m: float) -> float:
        """Mass whose plain-Dirac invariants equal this block's invariants."""
        return self.orientation * self.mass_sign * m


@dataclass(frozen=True, eq=False)
class Representation:
    """A concrete realization of the Dirac algebra, H = alpha.k + m*beta.

    ``rho`` holds the upper off-diagonal blocks of the alphas (present only for
    plain representations).  ``blocks`` is the diagonal-block decomposition of
    a Kronecker-extended family.  ``family`` tags the base algebra ("pauli2"
    for the 2x2 set, "dirac4" for the 4x4 set) and ``canonical`` records that
    the matrices are the catalog ones up to alpha sign flips, which is what
    the hand-coded closed-form curvature expressions require.
    """

    alphas: tuple[np.ndarray, ...]
    beta: np.ndarray
    rho: tuple[np.ndarray, ...] | None
    family: str
    alpha_signs: tuple[int, ...]
    blocks: tuple[Block, ...] | None = None
    canonical: bool = True

    @property
    def space_dim(self) -> int:
        return len(self.alphas)

    @property
    def dim(self) -> int:
        return self.alphas[0].shape[0]

    @property
    def is_decorated(self) -> bool:
        return self.blocks is not None


def check_representation(rep: Representation) -> dict[str, float]:
    """Residuals of the defining algebra; all must sit below MAT_TOL.

    Checks {alpha_I, alpha_J} = 2 delta_IJ, {alpha_I, beta} = 0, beta^2 = 1,
    hermiticity, and (for plain representations) that reassembling each alpha
    from its rho block reproduces it exactly.
    """
    d = rep.space_dim
    eye = np.eye(rep.dim)
    res: dict[str, float] = {}
    worst_cl = 0.0
    for i in range(d):
        for j in range(d):
            anti = rep.alphas[i] @ rep.alphas[j] + rep.alphas[j] @ rep.alphas[i]
            target = 2.0 * eye if i == j else 0.0
            worst_cl = max(worst_cl, max_abs(anti - target))
    res["anticommutators"] = worst_cl
    res["alpha_beta"] = max(
        max_abs(a @ rep.beta + rep.beta @ a) for a in rep.alphas
    )
    res["beta_squared"] = max_abs(rep.beta @ rep.beta - eye)
    res["hermiticity"] = max(
        [max_abs(a - a.conj().T) for a in rep.alphas]
        + [max_abs(rep.beta - rep.beta.conj().T)]
    )
    if rep.rho is not None:
        half = rep.dim // 2
        worst = 0.0
        for a, r in zip(rep.alphas, rep.rho):
            rebuilt = np.zeros_like(a)
            rebuilt[:half, half:] = r
            rebuilt[half:, :half] = r.conj().T
            worst = max(worst, max_abs(a - rebuilt))
        res["block_reassembly"] = worst
    return res


def _validated(rep: Representation) -> Representation:
    res = check_representation(rep)
    bad = {k: v for k, v in res.items() if v >= MAT_TOL}
    if bad:
        raise ValueError(f"representation fails structural checks: {bad}")
    return rep


def representation_2p1() -> Representation:
    """Planar Dirac set: alphas = (sigma_x, sigma_y), beta = sigma_z.

    The off-diagonal blocks are the 1x1 scalars rho = (1, -i).
    """
    rho = (_frozen([[1.0]]), _frozen([[-1j]]))
    return _validated(
        Representation(
            alphas=(_frozen(SIGMA_X), _frozen(SIGMA_Y)),
            beta=_frozen(SIGMA_Z),
            rho=rho,
            family="pauli2",
            alpha_signs=(1, 1),
        )
    )


def representation_4p1() -> Representation:
    """Four-momentum Dirac set with rho = (i sigma_1, i sigma_2, i sigma_3, -1)."""
    zeros = np.zeros((2, 2), dtype=complex)
    rho = tuple(
        _frozen(r) for r in (1j * SIGMA_1, 1j * SIGMA_2, 1j * SIGMA_3, -SIGMA_0)
    )
    alphas = tuple(
        _frozen(np.block([[zeros, r], [np.asarray(r).conj().T, zeros]])) for r in rho
    )
    beta = _frozen(np.block([[SIGMA_0, zeros], [zeros, -SIGMA_0]]))
    return _validated(
        Representation(
            alphas=alphas,
            beta=beta,
            rho=rho,
            family="dirac4",
            alpha_signs=(1, 1, 1, 1),
        )
    )


def with_alpha_signs(rep: Representation, signs) -> Representation:
    """Copy of a plain representation with alphas (and rhos) sign-flipped."""
    if rep.is_decorated:
        raise ValueError("sign flips apply to plain representations only")
    signs = tuple(int(s) for s in signs)
    if len(signs) != rep.space_dim or any(s not in (-1, 1) for s in signs):
        raise ValueError("need one factor of +-1 per alpha")
    return Representation(
        alphas=tuple(_frozen(s * a) for s, a in zip(signs, rep.alphas)),
        beta=rep.beta,
        rho=tuple(_frozen(s * r) for s, r in zip(signs, rep.rho)),
        family=rep.family,
        alpha_signs=tuple(s * s0 for s, s0 in zip(signs, rep.alpha_signs)),
        canonical=rep.canonical,
    )


def swap_energy_blocks(rep: Representation) -> Representation:
    """Exchange the upper/lower beta blocks of a plain representation.

    Used for negative mass parameters: H = alpha.k - |m| beta, rewritten in the
    swapped basis, is a positive-mass Dirac Hamiltonian with rho replaced by
    its adjoint.  Keeping the occupied branch in the upper block makes the
    Foldy-Wouthuysen gauge smooth through k = 0 for either mass sign.
    """
    if rep.is_decorated:
        raise ValueError("swap applies to plain representations only")
    half = rep.dim // 2
    s = np.zeros((rep.dim, rep.dim), dtype=complex)
    s[:half, half:] = np.eye(half)
    s[half:, :half] = np.eye(half)
    return Representation(
        alphas=tuple(_frozen(s @ a @ s) for a in rep.alphas),
        beta=rep.beta,
        rho=tuple(_frozen(r.conj().T) for r in rep.rho),
        family=rep.family,
        alpha_signs=rep.alpha_signs,
        canonical=False,
    )


def sigma_tensor(rep: Representation, i: int, j: int) -> np.ndarray:
    """Spin tensor -(i/2)[alpha_I, alpha_J] for 1-based axes I != J."""
    d = rep.space_dim
    if not (1 <= i <= d and 1 <= j <= d):
        raise ValueError(f"axes must lie in 1..{d}")
    if i == j:
        raise ValueError("spin tensor needs two distinct axes")
    a, b = rep.alphas[i - 1], rep.alphas[j - 1]
    return _frozen(-0.5j * (a @ b - b @ a))


def kron_extend(rep: Representation, factors, block_labels=None) -> Representation:
    """Kronecker-extend a plain representation by diagonal +-1 factors.

    ``factors`` supplies one diagonal sign vector per alpha plus one for the
    mass term (length space_dim + 1); all vectors share the block count n.
    The result acts on the n * dim product space, alphas become
    diag(factor) (x) alpha, and the per-block decomposition is recorded so the
    plain-representation machinery can be applied block by block.
    """
    if rep.is_decorated:
        raise ValueError("cannot extend an already decorated representation")
    factors = [np.asarray(f, dtype=int).ravel() for f in factors]
    if len(factors) != rep.space_dim + 1:
        raise ValueError(
            f"need {rep.space_dim + 1} factor vectors "
            f"(one per alpha plus the mass term), got {len(factors)}"
        )
    n = len(factors[0])
    if any(len(f) != n for f in factors):
        raise ValueError("all factor vectors must have the same length")
    if any(abs(v) != 1 for f in factors for v in f):
        raise ValueError("factors must be +-1 signs")
    if block_labels is None:
        block_labels = [f"block{b}" for b in range(n)]
    if len(block_labels) != n:
        raise ValueError("one label per block required")

    alphas = tuple(
        _frozen(np.kron(np.diag(f.astype(complex)), a))
        for f, a in zip(factors[:-1], rep.alphas)
    )
    beta = _frozen(np.kron(np.diag(factors[-1].astype(complex)), rep.beta))
    blocks = tuple(
        Block(
            label=str(block_labels[b]),
            rep=with_alpha_signs(rep, [int(f[b]) for f in factors[:-1]]),
            mass_sign=int(factors[-1][b]),
        )
        for b in range(n)
    )
    return Representation(
        alphas=alphas,
        beta=beta,
        rho=None,
        family=rep.family,
        alpha_signs=tuple(rep.alpha_signs),
        blocks=blocks,
        canonical=rep.canonical,
    )


def block_diag(mats) -> np.ndarray:
    """Direct sum of square complex matrices."""
    mats = [np.asarray(m) for m in mats]
    n = sum(m.shape[0] for m in mats)
    out = np.zeros((n, n), dtype=complex)
    pos = 0
    for m in mats:
        w = m.shape[0]
        out[pos : pos + w, pos : pos + w] = m
        pos += w
    return out


def epsilon_4d() -> dict[tuple[int, int, int, int], int]:
    """Nonzero entries of the rank-4 Levi-Civita symbol on axes 1..4."""
    from itertools import permutations

    eps = {}
    for p in permutations(range(1, 5)):
        sign = 1
        q = list(p)
        for i in range(4):
            for j in range(i + 1, 4):
                if q[i] > q[j]:
                    sign = -sign
        eps[p] = sign
    return eps

