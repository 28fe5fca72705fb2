"""Pydantic request/response models for the verification service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str
    version: str
    campaigns: list[str]


class BetaRequest(BaseModel):
    p: int = Field(ge=2)
    n: int = Field(ge=1)
    check_bound: bool = False


class BetaRow(BaseModel):
    n: int
    beta: int
    bound: float | None = None
    slack: float | None = None
    verdict: bool | None = None


class BetaResponse(BaseModel):
    p: int
    rows: list[BetaRow]


class PochValRequest(BaseModel):
    p: int = Field(ge=2)
    N: int = Field(ge=1, le=8)
    precision: int = Field(default=32, ge=4, le=256)
    verify_exact: bool = True


class PochValRow(BaseModel):
    n: int
    formula: str
    direct: str | None = None
    ok: bool | None = None


class PochValResponse(BaseModel):
    p: int
    N: int
    rows: list[PochValRow]
    all_ok: bool


class QExpandRequest(BaseModel):
    p: int = Field(ge=2)
    N: int = Field(ge=1)
    q: str = Field(description="element expression, e.g. 'zeta + pi^2'")
    f: str = Field(default="zeta^x", description="exponential model '<expr>^x'")
    K: int = Field(ge=0, le=512)
    precision: int = Field(default=64, ge=4, le=256)


class CoefficientOut(BaseModel):
    k: int
    valuation: str
    element: dict


class QExpandResponse(BaseModel):
    p: int
    N: int
    q: str
    coefficients: list[CoefficientOut]
    tail_rule: str | None


class FourierDemoRequest(BaseModel):
    p: int = Field(default=2, ge=2)
    n_max: int = Field(default=6, ge=1, le=8)
    level: int = Field(default=8, ge=1, le=10)
    precision: int = Field(default=48, ge=4, le=256)


class FourierDemoRow(BaseModel):
    n: int
    input_sup_val: str
    output_sup_val: str
    expected: str
    ok: bool


class FourierDemoResponse(BaseModel):
    p: int
    rows: list[FourierDemoRow]
    all_ok: bool


class IntertwineRequest(BaseModel):
    p: int = Field(default=2, ge=2)
    g: str = Field(default="0,1;-1,0", description="matrix rows 'a,b;c,d'")
    trials: int = Field(default=50, ge=1, le=1000)
    seed: int = 7
    level: int = Field(default=8, ge=1, le=10)
    precision: int = Field(default=48, ge=4, le=256)


class ProfileModel(BaseModel):
    p: int = Field(ge=2)
    M_log: str
    ells: list[str]


class GrowthRequest(BaseModel):
    profile: ProfileModel
    log_r: str


class GrowthResponse(BaseModel):
    value: str
    certified: bool
    argmax: list[int]
    classification: str
    witness: int | None = None
    ties: list[int] = []
    required_length: int | None = None


class CriticalRequest(BaseModel):
    profile: ProfileModel


class CriticalPoint(BaseModel):
    log_r: str
    ties: list[int]


class CriticalResponse(BaseModel):
    critical: list[CriticalPoint]
    inconclusive: list[str]


class CampaignRequest(BaseModel):
    config: dict = Field(default_factory=dict)


class CampaignResponse(BaseModel):
    campaign: str
    passed: bool
    n_cases: int
    n_fail: int
    failures: list[dict]
    elapsed_s: float
    config: dict
    cases: list[dict] | None = None


class MainInequalityRequest(BaseModel):
    mode: str = Field(default="exact", pattern="^(exact|asymptotic)$")
    p: int = Field(ge=2)
    N: int = Field(ge=1)
    v_h: str
    profile: ProfileModel
    k_cutoff: int = Field(default=16, ge=2, le=512)
    precision: int = Field(default=64, ge=4, le=256)
    seed: int = 7
    sample_count: int = Field(default=64, ge=4, le=10_000)
    exhaustive_limit: int = Field(default=1_000_000, ge=1, le=10_000_000)


class CertificateResponse(BaseModel):
    certificate: dict


class VerifyCertificateRequest(BaseModel):
    certificate: dict


class VerifyCertificateResponse(BaseModel):
    ok: bool
    failures: list[str]
