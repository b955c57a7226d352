"""FastAPI service wrapping the verification suites.

Each endpoint runs one suite synchronously and returns the deterministic
report plus the wall-clock time (kept outside the report so that identical
configurations yield byte-identical report payloads).
"""

from __future__ import annotations

import time

from fastapi import FastAPI, HTTPException

from .. import suites
from ..slopes import DomainError
from . import models

API_VERSION = "0.1.0"


def _run(fn, **kwargs) -> models.SuiteResponse:
    start = time.perf_counter()
    try:
        report = fn(**kwargs)
    except DomainError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return models.SuiteResponse(
        report=report, wall_clock_seconds=time.perf_counter() - start
    )


def _pair_dict(pair: models.PairJSON | None) -> dict | None:
    return pair.model_dump() if pair is not None else None


def create_app() -> FastAPI:
    app = FastAPI(
        title="mfgap verification service",
        description=(
            "Spectral-gap verification for mapping class group actions on"
            " rank-one measured foliation spaces"
        ),
        version=API_VERSION,
    )

    @app.get("/v1/health", response_model=models.HealthResponse)
    def health() -> models.HealthResponse:
        return models.HealthResponse(status="ok", version=API_VERSION)

    @app.post("/v1/orbit", response_model=models.SuiteResponse)
    def orbit(req: models.OrbitRequest) -> models.SuiteResponse:
        return _run(
            suites.suite_orbit,
            base=req.base,
            radius=req.radius,
            pair=_pair_dict(req.pair),
        )

    @app.post("/v1/schottky-verify", response_model=models.SuiteResponse)
    def schottky_verify(req: models.SchottkyVerifyRequest) -> models.SuiteResponse:
        return _run(
            suites.suite_schottky_verify,
            pair=_pair_dict(req.pair),
            scan_len=req.scan_len,
        )

    @app.post("/v1/limit-set", response_model=models.SuiteResponse)
    def limit_set(req: models.LimitSetRequest) -> models.SuiteResponse:
        return _run(
            suites.suite_limit_set, depth=req.depth, pair=_pair_dict(req.pair)
        )

    @app.post("/v1/gap-test", response_model=models.SuiteResponse)
    def gap_test(req: models.GapTestRequest) -> models.SuiteResponse:
        return _run(
            suites.suite_gap_test,
            orbit_base=req.orbit_base,
            samples=req.samples,
            seed=req.seed,
            radius=req.radius,
            support_cap=req.support_cap,
            punctured=req.punctured,
            pair=_pair_dict(req.pair),
        )

    @app.post("/v1/spectral-radius", response_model=models.SuiteResponse)
    def spectral_radius(req: models.SpectralRadiusRequest) -> models.SuiteResponse:
        return _run(suites.suite_spectral_radius, radius=req.radius)

    @app.post("/v1/l2-tail", response_model=models.SuiteResponse)
    def l2_tail(req: models.L2TailRequest) -> models.SuiteResponse:
        return _run(
            suites.suite_l2_tail,
            n_points=req.n_points,
            seed=req.seed,
            max_depth=req.max_depth,
            tol=req.tol,
        )

    @app.post("/v1/cor43", response_model=models.SuiteResponse)
    def cor43(req: models.Cor43Request) -> models.SuiteResponse:
        return _run(
            suites.suite_cor43,
            n_points=req.n_points,
            seed=req.seed,
            depth=req.depth,
            include_near_degenerate=req.include_near_degenerate,
            cross_validate=req.cross_validate,
            pair=_pair_dict(req.pair),
            explicit_points=req.explicit_points,
            phis_json=req.phis,
        )

    @app.post("/v1/cover-build", response_model=models.SuiteResponse)
    def cover_build(req: models.CoverBuildRequest) -> models.SuiteResponse:
        return _run(
            suites.suite_cover_build,
            n_regions=req.n_regions,
            seed=req.seed,
            max_len=req.max_len,
            cone_depth=req.cone_depth,
            pair=_pair_dict(req.pair),
        )

    @app.post("/v1/cont-gap", response_model=models.SuiteResponse)
    def cont_gap(req: models.ContGapRequest) -> models.SuiteResponse:
        return _run(
            suites.suite_cont_gap,
            samples=req.samples,
            seed=req.seed,
            chain_checks=req.chain_checks,
            pair=_pair_dict(req.pair),
        )

    @app.post("/v1/decompose", response_model=models.SuiteResponse)
    def decompose(req: models.DecomposeRequest) -> models.SuiteResponse:
        return _run(
            suites.suite_decompose,
            radius=req.radius,
            samples=req.samples,
            seed=req.seed,
        )

    @app.post("/v1/all", response_model=models.SuiteResponse)
    def run_all(req: models.AllRequest) -> models.SuiteResponse:
        return _run(suites.suite_all, seed=req.seed, scale=req.scale)

    return app


app = create_app()
