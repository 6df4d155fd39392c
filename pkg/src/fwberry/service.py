"""FastAPI service exposing the library over HTTP.

The CLI is a thin client of these endpoints (through an in-process transport
by default), so everything a report can contain is assembled here: computed
values, honest error estimates, the settings they came from, and the label of
the catalogued claim a request reproduces, when there is one.
"""

from __future__ import annotations

import math
import time

import numpy as np
from fastapi import FastAPI, HTTPException

from . import __version__, berry, descendants, invariants, models
from .claims import claim_registry, run_acceptance
from .clifford import max_abs
from .invariants import FillingDomain
from .quadrature import NumericalError
from .schemas import (
    ChernPayload,
    ChernRequest,
    ChernResponse,
    ConnectionComponent,
    ConnectionRequest,
    ConnectionResponse,
    CurvatureComponent,
    CurvatureRequest,
    CurvatureResponse,
    DomainPayload,
    HealthResponse,
    MatrixPayload,
    ModelInfo,
    ModelsResponse,
    ReduceRequest,
    ReduceResponse,
    SweepRequest,
    SweepResponse,
    SweepRow,
    VerifyClaim,
    VerifyRequest,
    VerifyResponse,
)

TWO_PI = 2.0 * math.pi


def _domain_from_payload(payload: DomainPayload) -> FillingDomain:
    if payload.kind == "custom":
        return FillingDomain.custom(payload.lo, payload.hi)
    return FillingDomain(payload.kind)


def _profile_from_payload(payload) -> descendants.DomainWallProfile:
    rows = np.asarray(payload.rows, dtype=float)
    return descendants.DomainWallProfile(coordinates=rows[:, 0], values=rows[:, 1])


def _model_level(spec: models.ModelSpec) -> int:
    return 1 if spec.rep.space_dim == 2 else 2


def _energy_chern(spec: models.ModelSpec, level: int, domain: FillingDomain) -> float:
    """Antiderivative invariant of a whole model (blocks summed)."""
    fn = invariants.chern1_energy if level == 1 else invariants.chern2_energy
    if spec.rep.is_decorated:
        table = invariants.block_chern_table(
            spec.rep.blocks, spec.hamiltonian_mass, level, domain
        )
        return float(sum(table.values()))
    orientation = int(np.prod(spec.rep.alpha_signs))
    return orientation * fn(spec.hamiltonian_mass, domain).value


def _quadrature_chern(
    spec: models.ModelSpec, level: int, tol: float, max_subdivisions: int
):
    fn = invariants.chern1_quadrature if level == 1 else invariants.chern2_quadrature
    return fn(
        spec.rep, spec.hamiltonian_mass, tol=tol, max_subdivisions=max_subdivisions
    )


_CHERN_CLAIMS = {
    (1, "full", "antiderivative"): "chern1-full-domain",
    (1, "half", "antiderivative"): "chern1-half-filled",
    (2, "full", "antiderivative"): "chern2-full-domain",
    (2, "half", "antiderivative"): "chern2-half-filled",
}


def create_app() -> FastAPI:
    app = FastAPI(
        title="fwberry",
        description="Berry gauge fields and Chern numbers of continuum "
        "Dirac Hamiltonians",
        version=__version__,
    )
    registry = claim_registry()

    def claim_text(claim_id: str | None) -> str | None:
        if claim_id is None:
            return None
        return f"{claim_id}: {registry[claim_id]}"

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.get("/models", response_model=ModelsResponse)
    def list_models() -> ModelsResponse:
        infos = []
        for name in models.MODEL_NAMES:
            spec = models.catalog(name)
            infos.append(
                ModelInfo(
                    name=name,
                    matrix_dim=spec.rep.dim,
                    momentum_dims=spec.rep.space_dim,
                    live_dims=spec.live_dims,
                    block_labels=[b.label for b in spec.rep.blocks or ()],
                    block_masses=list(spec.block_masses),
                    time_reversal_candidate=spec.tr_unitary is not None,
                )
            )
        return ModelsResponse(models=infos)

    @app.post("/curvature", response_model=CurvatureResponse)
    def curvature(req: CurvatureRequest) -> CurvatureResponse:
        start = time.perf_counter()
        try:
            spec = models.catalog(req.model, m=req.m)
            field = berry.berry_curvature(
                spec.rep, req.k, spec.hamiltonian_mass, method=req.method,
                step=req.step,
            )
            other_method = (
                "finite_diff" if req.method == "closed_form" else "closed_form"
            )
            other = berry.berry_curvature(
                spec.rep, req.k, spec.hamiltonian_mass, method=other_method,
                step=req.step,
            )
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        residual = max(
            max_abs(a - b) for a, b in zip(field.matrices, other.matrices)
        )
        return CurvatureResponse(
            model=req.model,
            m=req.m,
            k=list(req.k),
            method=req.method,
            components=[
                CurvatureComponent(
                    i=i, j=j, matrix=MatrixPayload.from_array(field.component(i, j))
                )
                for i, j in field.pairs
            ],
            closed_form_residual=residual,
            claim=None,
            elapsed_ms=(time.perf_counter() - start) * 1e3,
        )

    @app.post("/connection", response_model=ConnectionResponse)
    def connection(req: ConnectionRequest) -> ConnectionResponse:
        start = time.perf_counter()
        try:
            spec = models.catalog(req.model, m=req.m)
            field = berry.berry_connection(spec.rep, req.k, spec.hamiltonian_mass)
            residual = berry.connection_projection_residual(
                spec.rep, req.k, spec.hamiltonian_mass
            )
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return ConnectionResponse(
            model=req.model,
            m=req.m,
            k=list(req.k),
            components=[
                ConnectionComponent(
                    direction=i + 1, matrix=MatrixPayload.from_array(mat)
                )
                for i, mat in enumerate(field.components)
            ],
            projection_residual=residual,
            elapsed_ms=(time.perf_counter() - start) * 1e3,
        )

    @app.post("/chern", response_model=ChernResponse)
    def chern(req: ChernRequest) -> ChernResponse:
        start = time.perf_counter()
        try:
            spec = models.catalog(req.model, m=req.m)
            level = _model_level(spec)
            if req.method == "antiderivative" or req.report != "value":
                domain = (
                    _domain_from_payload(req.domain)
                    if req.domain is not None
                    else FillingDomain.half_filled()
                )
            else:
                # quadrature integrates the positive band; an explicit
                # conflicting domain is a configuration error
                if req.domain is not None and req.domain.kind != "positive":
                    raise ValueError(
                        "quadrature integrates the positive band; drop the "
                        "domain or set it to positive"
                    )
                domain = FillingDomain.positive_band()
            claim = None
            result = quadrature = None
            discrepancy = None
            table = None

            if req.report == "delta":
                if req.model != "kane_mele":
                    raise ValueError(
                        "the spin-resolved difference is a kane_mele report"
                    )
                value = invariants.delta_chern_kane_mele(req.m, domain)
                result = ChernPayload(
                    value=value, abs_error=0.0, method="antiderivative"
                )
                claim = "kane-mele-delta" if req.m == 1.0 else None
            elif req.report == "spin_table":
                if req.model != "tri_3p1":
                    raise ValueError("the block table is a tri_3p1 report")
                table = models.spin_chern_table(domain, m=req.m)
                claim = (
                    "spin-chern-table-half"
                    if domain.kind == "half" and req.m == 1.0
                    else None
                )
            else:
                if req.method in ("antiderivative", "both"):
                    result = ChernPayload(
                        value=_energy_chern(spec, level, domain),
                        abs_error=0.0,
                        method="antiderivative",
                    )
                if req.method in ("quadrature", "both"):
                    q = _quadrature_chern(spec, level, req.tol, req.max_subdivisions)
                    quadrature = ChernPayload(
                        value=q.value, abs_error=q.abs_error, method=q.method
                    )
                if req.method == "both":
                    discrepancy = abs(result.value - quadrature.value)
                if req.m == 1.0:
                    if req.method == "antiderivative":
                        claim = _CHERN_CLAIMS.get((level, domain.kind, req.method))
                    elif req.method == "quadrature" and domain.kind == "positive":
                        if req.model == "dirac2p1":
                            claim = "chern1-quadrature-2p1"
                        elif req.model == "dirac4p1":
                            claim = "chern2-quadrature-4p1"
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except NumericalError as exc:
            raise HTTPException(
                status_code=500,
                detail={
                    "kind": "numerical",
                    "message": str(exc),
                    "partial_value": getattr(exc, "partial_value", None),
                    "abs_error": getattr(exc, "abs_error", None),
                },
            ) from exc
        return ChernResponse(
            model=req.model,
            m=req.m,
            domain=DomainPayload(kind=domain.kind, lo=domain.lo, hi=domain.hi),
            method=req.method,
            tol=req.tol,
            report=req.report,
            level=level,
            result=result,
            quadrature=quadrature,
            discrepancy=discrepancy,
            table=table,
            claim=claim_text(claim),
            elapsed_ms=(time.perf_counter() - start) * 1e3,
        )

    @app.post("/reduce", response_model=ReduceResponse)
    def reduce(req: ReduceRequest) -> ReduceResponse:
        start = time.perf_counter()
        units = "dimensionless"
        residual = None
        claim = None
        try:
            q = req.quantity
            if q == "g_theta":
                if req.n1 is None:
                    raise ValueError("g_theta needs n1")
                coeff = descendants.g_theta(req.n1)
                value = coeff(0.0)
                residual = coeff.normalization_residual()
            elif q == "p":
                if req.n1 is None or req.theta is None:
                    raise ValueError("the charge polarization needs n1 and theta")
                value = descendants.charge_polarization(req.theta, req.n1)
                if req.theta == TWO_PI and req.n1 == 1.0:
                    claim = "polarization-loop"
            elif q == "p3":
                if req.n2 is None or req.phi3 is None:
                    raise ValueError(
                        "the magnetoelectric polarization needs n2 and phi3"
                    )
                value = descendants.magnetoelectric_polarization(req.phi3, req.n2)
                if req.phi3 == TWO_PI and req.n2 == 1.0:
                    claim = "p3-loop"
            elif q == "gw":
                if req.profile is None:
                    raise ValueError("the soliton charge needs a profile")
                profile = _profile_from_payload(req.profile)
                value = descendants.goldstone_wilczek_charge(profile)
                change = profile.endpoint_change()
                if abs(change - math.pi) < 1e-9:
                    claim = "soliton-half"
                elif abs(change - TWO_PI / 3.0) < 1e-9:
                    claim = "soliton-third"
            elif q == "sigma_h":
                if req.n2 is None:
                    raise ValueError("the surface Hall conductivity needs n2")
                if req.profile is not None:
                    profile = _profile_from_payload(req.profile)
                elif req.dtheta is not None:
                    profile = descendants.DomainWallProfile.from_endpoints(req.dtheta)
                else:
                    raise ValueError(
                        "the surface Hall conductivity needs a profile or dtheta"
                    )
                value = descendants.surface_hall_conductivity(profile, req.n2)
                units = "e^2/hbar"
                if req.n2 == 0.5 and abs(profile.endpoint_change() - TWO_PI) < 1e-9:
                    claim = "surface-hall"
            elif q == "sigma_sh_3p1":
                table = models.spin_chern_table(
                    FillingDomain.half_filled(), m=req.m
                )
                value = descendants.spin_hall_conductivity_3p1(table)
                units = "e"
                claim = "spin-hall-3p1" if req.m == 1.0 else None
            elif q == "sigma_sh_graphene":
                dn1 = req.dn1
                if dn1 is None:
                    dn1 = invariants.delta_chern_kane_mele(
                        req.m, FillingDomain.half_filled()
                    )
                value = descendants.spin_hall_conductivity_graphene(dn1)
                units = "e"
                claim = "graphene-spin-hall" if dn1 == 2.0 else None
            elif q == "skyrmion":
                if req.n2 is None:
                    raise ValueError("the Skyrmion charge needs n2")
                theta = np.linspace(0.0, TWO_PI, req.grid)
                phi = np.linspace(0.0, math.pi, req.grid)
                value = descendants.omega_field(theta, phi, req.n2).skyrmion_charge()
                units = "e"
                claim = "skyrmion-charge" if req.n2 == 1.0 else None
            elif q == "pumped":
                if req.n2 is None:
                    raise ValueError("the pumped charge needs n2")
                value = descendants.pumped_charge(
                    req.n2, TWO_PI if req.dtheta is None else req.dtheta
                )
                units = "e"
                claim = (
                    "pumped-charge"
                    if req.n2 == 0.5 and req.dtheta in (None, TWO_PI)
                    else None
                )
            else:  # pragma: no cover - schema keeps this unreachable
                raise ValueError(f"unknown quantity {q!r}")
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return ReduceResponse(
            quantity=req.quantity,
            value=float(value),
            units=units,
            inputs={
                "n1": req.n1,
                "n2": req.n2,
                "dn1": req.dn1,
                "m": req.m,
                "theta": req.theta,
                "phi3": req.phi3,
                "dtheta": req.dtheta,
                "grid": req.grid if req.quantity == "skyrmion" else None,
            },
            normalization_residual=residual,
            claim=claim_text(claim),
            elapsed_ms=(time.perf_counter() - start) * 1e3,
        )

    @app.post("/sweep", response_model=SweepResponse)
    def sweep(req: SweepRequest) -> SweepResponse:
        start = time.perf_counter()
        values = np.linspace(req.lo, req.hi, req.steps)
        rows = []
        try:
            domain = _domain_from_payload(req.domain)
            for x in values:
                x = float(x)
                if req.quantity in ("chern1", "chern2"):
                    if req.param != "m":
                        raise ValueError("Chern sweeps vary the mass parameter")
                    spec = models.catalog(req.model, m=x)
                    level = _model_level(spec)
                    if (req.quantity == "chern1") != (level == 1):
                        raise ValueError(
                            f"model {req.model} carries a level-{level} invariant"
                        )
                    if req.method == "antiderivative":
                        val = _energy_chern(spec, level, domain)
                    else:
                        if domain.kind != "positive":
                            raise ValueError(
                                "quadrature integrates the positive band"
                            )
                        val = _quadrature_chern(spec, level, req.tol, 200).value
                elif req.quantity == "delta_km":
                    if req.param != "m":
                        raise ValueError("the spin-resolved sweep varies the mass")
                    val = invariants.delta_chern_kane_mele(x, domain)
                elif req.quantity == "p":
                    if req.param != "theta" or req.n1 is None:
                        raise ValueError(
                            "polarization sweeps vary theta and need n1"
                        )
                    val = descendants.charge_polarization(x, req.n1)
                else:  # p3
                    if req.param != "phi3" or req.n2 is None:
                        raise ValueError(
                            "magnetoelectric sweeps vary phi3 and need n2"
                        )
                    val = descendants.magnetoelectric_polarization(x, req.n2)
                rows.append(SweepRow(param=x, value=float(val)))
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except NumericalError as exc:
            raise HTTPException(
                status_code=500,
                detail={"kind": "numerical", "message": str(exc)},
            ) from exc
        return SweepResponse(
            quantity=req.quantity,
            param=req.param,
            rows=rows,
            settings={
                "model": req.model,
                "domain": req.domain.kind,
                "method": req.method,
                "tol": req.tol,
                "steps": req.steps,
            },
            elapsed_ms=(time.perf_counter() - start) * 1e3,
        )

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        start = time.perf_counter()
        results = run_acceptance(inject_sign_bug=req.inject_sign_bug)
        claims = [
            VerifyClaim(
                criterion=r.criterion,
                id=r.id,
                label=r.label,
                value=r.value,
                expected=r.expected,
                tol=r.tol,
                passed=r.passed,
                elapsed_ms=r.elapsed_ms,
            )
            for r in results
        ]
        n_passed = sum(1 for c in claims if c.passed)
        return VerifyResponse(
            all_passed=n_passed == len(claims),
            n_passed=n_passed,
            n_failed=len(claims) - n_passed,
            claims=claims,
            elapsed_ms=(time.perf_counter() - start) * 1e3,
        )

    return app


app = create_app()
