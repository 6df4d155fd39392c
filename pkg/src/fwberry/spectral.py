"""Energy, Foldy-Wouthuysen unitary, and band projectors at a momentum point.

The diagonalizing unitary is always the closed form U = (beta H + E) /
sqrt(2E(E+m)), never an eigen-decomposition: that pins the gauge of every
downstream Berry quantity and avoids eigenvector phase ambiguity on the
doubly degenerate four-momentum bands.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import Representation, block_diag, swap_energy_blocks


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Band data at one momentum: energy, FW unitary, and projectors.

    ``proj_plus``/``proj_minus`` project onto the +-E eigenspaces of H;
    ``iplus`` is the constant upper-block projector they map to under U.
    """

    energy: float
    fw_unitary: np.ndarray
    proj_plus: np.ndarray
    proj_minus: np.ndarray
    iplus: np.ndarray


def energy(k, m: float) -> float:
    k = np.asarray(k, dtype=float)
    return float(np.sqrt(k @ k + m * m))


def hamiltonian(rep: Representation, k, m: float) -> np.ndarray:
    """Dense Dirac Hamiltonian alpha.k + m*beta (decorations included)."""
    k = np.asarray(k, dtype=float)
    if k.shape != (rep.space_dim,):
        raise ValueError(
            f"momentum has {k.size} components, representation needs {rep.space_dim}"
        )
    if not np.all(np.isfinite(k)):
        raise ValueError("momentum components must be finite")
    h = m * rep.beta.astype(complex)
    for ki, a in zip(k, rep.alphas):
        h = h + ki * a
    return h


def _plain_spectral(rep: Representation, k: np.ndarray, m: float):
    """FW data for a plain representation; negative mass goes through the
    energy-block swap so that E + |m| (never E - |m|) appears in denominators."""
    work = rep if m > 0 else swap_energy_blocks(rep)
    m_eff = abs(m)
    e = energy(k, m)
    h = hamiltonian(work, k, m_eff)
    u = (work.beta @ h + e * np.eye(rep.dim)) / np.sqrt(2.0 * e * (e + m_eff))
    if m < 0:
        half = rep.dim // 2
        s = np.zeros((rep.dim, rep.dim), dtype=complex)
        s[:half, half:] = np.eye(half)
        s[half:, :half] = np.eye(half)
        u = u @ s
    return e, u


def spectral_data(rep: Representation, k, m: float) -> SpectralData:
    """Energy, FW unitary, and band projectors of H(k) = alpha.k + m*beta.

    Requires m != 0 (the construction needs a gap).  For decorated
    representations the result is assembled block by block, each block with
    its signed mass, so U H U^dag = E * (1 (x) beta) uniformly.
    """
    if m == 0:
        raise ValueError("gapless spectra (m = 0) are not supported")
    k = np.asarray(k, dtype=float)
    if k.shape != (rep.space_dim,):
        raise ValueError(
            f"momentum has {k.size} components, representation needs {rep.space_dim}"
        )
    if not np.all(np.isfinite(k)):
        raise ValueError("momentum components must be finite")

    if rep.is_decorated:
        parts = [_plain_spectral(b.rep, k, b.mass_sign * m) for b in rep.blocks]
        e = parts[0][0]
        u = block_diag([p[1] for p in parts])
    else:
        e, u = _plain_spectral(rep, k, m)

    dim = rep.dim
    half = dim // 2
    iplus = np.zeros((dim, dim), dtype=complex)
    if rep.is_decorated:
        bdim = rep.blocks[0].rep.dim
        for b in range(len(rep.blocks)):
            off = b * bdim
            for r in range(bdim // 2):
                iplus[off + r, off + r] = 1.0
    else:
        for r in range(half):
            iplus[r, r] = 1.0
    iminus = np.eye(dim) - iplus
    p_plus = u.conj().T @ iplus @ u
    p_minus = u.conj().T @ iminus @ u
    return SpectralData(
        energy=e,
        fw_unitary=u,
        proj_plus=p_plus,
        proj_minus=p_minus,
        iplus=iplus,
    )


def spectral_residuals(rep: Representation, data: SpectralData, k, m: float) -> dict:
    """Structural residuals of one SpectralData instance (all < MAT_TOL)."""
    from .clifford import max_abs

    h = hamiltonian(rep, k, m)
    u = data.fw_unitary
    eye = np.eye(rep.dim)
    if rep.is_decorated:
        beta_like = block_diag([b.rep.beta for b in rep.blocks])
    else:
        beta_like = rep.beta
    return {
        "energy": abs(data.energy - energy(k, m)) / data.energy,
        "unitarity": max_abs(u @ u.conj().T - eye),
        "diagonalization": max_abs(u @ h @ u.conj().T - data.energy * beta_like),
        "proj_plus_idem": max_abs(data.proj_plus @ data.proj_plus - data.proj_plus),
        "proj_minus_idem": max_abs(
            data.proj_minus @ data.proj_minus - data.proj_minus
        ),
        "completeness": max_abs(data.proj_plus + data.proj_minus - eye),
        "band_plus": max_abs((h - data.energy * eye) @ data.proj_plus),
        "band_minus": max_abs((h + data.energy * eye) @ data.proj_minus),
        "trace_plus": abs(np.trace(data.proj_plus).real - rep.dim / 2),
    }
