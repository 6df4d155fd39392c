"""Pydantic request/response models of the compute service.

Complex matrices travel as separate real/imaginary nested lists; every
response echoes the settings it was produced from so reports are
self-describing.
"""

from __future__ import annotations

from typing import Literal

import numpy as np
from pydantic import BaseModel, Field

from .models import MODEL_NAMES

ModelName = Literal[
    "dirac2p1",
    "kane_mele",
    "dirac4p1",
    "tri_3p1",
    "app_up_plus",
    "app_up_minus",
    "app_down_plus",
    "app_down_minus",
]

assert set(ModelName.__args__) == set(MODEL_NAMES)

CurvatureMethod = Literal["closed_form", "analytic_diff", "finite_diff"]
ChernMethod = Literal["antiderivative", "quadrature", "both"]
DomainKind = Literal["full", "half", "positive", "custom"]


class MatrixPayload(BaseModel):
    re: list[list[float]]
    im: list[list[float]]

    @classmethod
    def from_array(cls, a: np.ndarray) -> "MatrixPayload":
        a = np.asarray(a, dtype=complex)
        return cls(re=a.real.tolist(), im=a.imag.tolist())


class DomainPayload(BaseModel):
    kind: DomainKind = "half"
    lo: float | None = None
    hi: float | None = None


class CurvatureRequest(BaseModel):
    model: ModelName = "dirac2p1"
    m: float = 1.0
    k: list[float]
    method: CurvatureMethod = "closed_form"
    step: float | None = Field(default=None, gt=0)


class CurvatureComponent(BaseModel):
    i: int
    j: int
    matrix: MatrixPayload


class CurvatureResponse(BaseModel):
    model: str
    m: float
    k: list[float]
    method: str
    components: list[CurvatureComponent]
    closed_form_residual: float
    claim: str | None = None
    elapsed_ms: float


class ConnectionRequest(BaseModel):
    model: ModelName = "dirac2p1"
    m: float = 1.0
    k: list[float]


class ConnectionComponent(BaseModel):
    direction: int
    matrix: MatrixPayload


class ConnectionResponse(BaseModel):
    model: str
    m: float
    k: list[float]
    components: list[ConnectionComponent]
    projection_residual: float
    elapsed_ms: float


class ChernPayload(BaseModel):
    value: float
    abs_error: float
    method: str


class ChernRequest(BaseModel):
    """Domain defaults to half filled for antiderivative evaluation; pure
    quadrature requests integrate the positive band and take no domain."""

    model: ModelName = "dirac2p1"
    m: float = 1.0
    domain: DomainPayload | None = None
    band: Literal["positive"] = "positive"
    method: ChernMethod = "antiderivative"
    tol: float = Field(default=1e-8, gt=0)
    report: Literal["value", "delta", "spin_table"] = "value"
    max_subdivisions: int = Field(default=200, ge=1)


class ChernResponse(BaseModel):
    model: str
    m: float
    domain: DomainPayload
    method: str
    tol: float
    report: str
    level: int
    result: ChernPayload | None = None
    quadrature: ChernPayload | None = None
    discrepancy: float | None = None
    table: dict[str, float] | None = None
    claim: str | None = None
    elapsed_ms: float


class ProfilePayload(BaseModel):
    """Two-column samples (coordinate, value), coordinates ascending."""

    rows: list[tuple[float, float]] = Field(min_length=2)


ReduceQuantity = Literal[
    "g_theta",
    "p",
    "p3",
    "gw",
    "sigma_h",
    "sigma_sh_3p1",
    "sigma_sh_graphene",
    "skyrmion",
    "pumped",
]


class ReduceRequest(BaseModel):
    quantity: ReduceQuantity
    n1: float | None = None
    n2: float | None = None
    dn1: float | None = None
    m: float = 1.0
    theta: float | None = None
    phi3: float | None = None
    dtheta: float | None = None
    grid: int = Field(default=400, ge=2)
    profile: ProfilePayload | None = None


class ReduceResponse(BaseModel):
    quantity: str
    value: float
    units: str
    inputs: dict[str, float | int | None]
    normalization_residual: float | None = None
    claim: str | None = None
    elapsed_ms: float


class SweepRequest(BaseModel):
    quantity: Literal["chern1", "chern2", "delta_km", "p", "p3"]
    param: Literal["m", "theta", "phi3"]
    lo: float
    hi: float
    steps: int = Field(default=11, ge=1)
    model: ModelName = "dirac2p1"
    domain: DomainPayload = DomainPayload()
    method: Literal["antiderivative", "quadrature"] = "antiderivative"
    tol: float = Field(default=1e-8, gt=0)
    n1: float | None = None
    n2: float | None = None


class SweepRow(BaseModel):
    param: float
    value: float


class SweepResponse(BaseModel):
    quantity: str
    param: str
    rows: list[SweepRow]
    settings: dict[str, float | int | str]
    elapsed_ms: float


class VerifyRequest(BaseModel):
    inject_sign_bug: bool = False


class VerifyClaim(BaseModel):
    criterion: int
    id: str
    label: str
    value: float
    expected: float
    tol: float
    passed: bool
    elapsed_ms: float


class VerifyResponse(BaseModel):
    all_passed: bool
    n_passed: int
    n_failed: int
    claims: list[VerifyClaim]
    elapsed_ms: float


class ModelInfo(BaseModel):
    name: str
    matrix_dim: int
    momentum_dims: int
    live_dims: int
    block_labels: list[str]
    block_masses: list[float]
    time_reversal_candidate: bool


class ModelsResponse(BaseModel):
    models: list[ModelInfo]


class HealthResponse(BaseModel):
    status: str
    version: str
