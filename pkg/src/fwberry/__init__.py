"""Berry gauge fields and Chern numbers of continuum Dirac Hamiltonians.

The Foldy-Wouthuysen closed form fixes the gauge of every quantity: spectral
data, flat and projected gauge fields, curvature, band invariants over
configurable filling domains, and the dimensional-reduction observables they
feed.  A FastAPI service wraps the library; the command line is a thin client
of that service.
"""

from .berry import (
    ConnectionField,
    CurvatureField,
    berry_connection,
    berry_curvature,
    chern_integrand_4p1,
    pure_gauge_field,
)
from .clifford import (
    MAT_TOL,
    Block,
    Representation,
    kron_extend,
    representation_2p1,
    representation_4p1,
    sigma_tensor,
    with_alpha_signs,
)
from .descendants import (
    DomainWallProfile,
    OmegaField,
    ReductionCoefficient,
    charge_polarization,
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
from .invariants import (
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
from .models import (
    MODEL_NAMES,
    ModelSpec,
    catalog,
    model_hamiltonian,
    reduced_3p1,
    spin_chern_table,
    time_reversal_check,
)
from .quadrature import NumericalError, QuadratureConvergenceError
from .spectral import SpectralData, energy, hamiltonian, spectral_data

__version__ = "0.1.0"

__all__ = [
    "MAT_TOL",
    "MODEL_NAMES",
    "ORIENTATION_SIGN",
    "Block",
    "ChernValue",
    "ConnectionField",
    "CurvatureField",
    "DomainWallProfile",
    "FillingDomain",
    "ModelSpec",
    "NumericalError",
    "OmegaField",
    "QuadratureConvergenceError",
    "ReductionCoefficient",
    "Representation",
    "SpectralData",
    "berry_connection",
    "berry_curvature",
    "catalog",
    "charge_polarization",
    "chern1_energy",
    "chern1_quadrature",
    "chern2_energy",
    "chern2_quadrature",
    "chern_integrand_4p1",
    "cs_coefficient",
    "delta_chern_kane_mele",
    "energy",
    "g2_phi2_phi3",
    "g3_phi3",
    "g_theta",
    "goldstone_wilczek_charge",
    "hamiltonian",
    "kron_extend",
    "magnetoelectric_polarization",
    "model_hamiltonian",
    "omega_field",
    "pumped_charge",
    "pure_gauge_field",
    "reduced_3p1",
    "representation_2p1",
    "representation_4p1",
    "sigma_tensor",
    "spectral_data",
    "spin_chern_table",
    "spin_hall_conductivity_3p1",
    "spin_hall_conductivity_graphene",
    "surface_hall_conductivity",
    "time_reversal_check",
    "with_alpha_signs",
]
