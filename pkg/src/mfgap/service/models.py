"""Pydantic request/response models for the verification service."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class IntervalJSON(BaseModel):
    lo: str
    hi: str


class PairJSON(BaseModel):
    gen_a: list[list[str]]
    gen_b: list[list[str]]
    ia_plus: IntervalJSON
    ia_minus: IntervalJSON
    ib_plus: IntervalJSON
    ib_minus: IntervalJSON


class OrbitRequest(BaseModel):
    base: str = "0/1"
    radius: int = Field(default=6, ge=0, le=12)
    pair: Optional[PairJSON] = None


class SchottkyVerifyRequest(BaseModel):
    pair: Optional[PairJSON] = None
    scan_len: int = Field(default=12, ge=1, le=14)


class LimitSetRequest(BaseModel):
    depth: int = Field(default=10, ge=1, le=12)
    pair: Optional[PairJSON] = None


class GapTestRequest(BaseModel):
    orbit_base: str = "0/1"
    samples: int = Field(default=1000, ge=1)
    seed: int = 42
    radius: int = Field(default=8, ge=1, le=10)
    support_cap: int = Field(default=64, ge=1)
    punctured: bool = False
    pair: Optional[PairJSON] = None


class SpectralRadiusRequest(BaseModel):
    radius: int = Field(default=12, ge=1, le=24)


class L2TailRequest(BaseModel):
    n_points: int = Field(default=20, ge=0)
    seed: int = 11
    max_depth: int = Field(default=40, ge=1, le=64)
    tol: float = 1e-8


class Cor43Request(BaseModel):
    n_points: int = Field(default=100, ge=0)
    seed: int = 17
    depth: int = Field(default=12, ge=3, le=16)
    include_near_degenerate: bool = True
    cross_validate: int = Field(default=3, ge=0)
    pair: Optional[PairJSON] = None
    explicit_points: Optional[list[list[float]]] = None
    phis: Optional[list[list[list[str]]]] = None


class CoverBuildRequest(BaseModel):
    n_regions: int = Field(default=50, ge=1)
    seed: int = 23
    max_len: int = Field(default=3, ge=1, le=5)
    cone_depth: int = Field(default=3, ge=1, le=6)
    pair: Optional[PairJSON] = None


class ContGapRequest(BaseModel):
    samples: int = Field(default=200, ge=1)
    seed: int = 29
    chain_checks: int = Field(default=3, ge=0)
    pair: Optional[PairJSON] = None


class DecomposeRequest(BaseModel):
    radius: int = Field(default=6, ge=1, le=9)
    samples: int = Field(default=500, ge=1)
    seed: int = 31


class AllRequest(BaseModel):
    seed: int = 42
    scale: str = Field(default="full", pattern="^(full|smoke)$")


class SuiteResponse(BaseModel):
    report: dict
    wall_clock_seconds: float


class HealthResponse(BaseModel):
    status: str
    version: str
