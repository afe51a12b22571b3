"""Request/response models for the winmatch service.

Weights travel as strings (`"p/q"`, integer, or decimal literals) so that the
wire format preserves exact rational arithmetic end to end; nothing is ever
converted through binary floating point unless a client explicitly asks for
throughput mode.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class EdgeIn(BaseModel):
    u: int = Field(ge=0)
    v: int = Field(ge=0)
    w: str
    label: Optional[Literal["A", "B", "C"]] = None


class StreamIn(BaseModel):
    n: int = Field(ge=0)
    events: list[EdgeIn] = []


class EdgeOut(BaseModel):
    t: int
    u: int
    v: int
    w: str
    label: Optional[str] = None


class StreamOut(BaseModel):
    name: str
    n: int
    events: list[EdgeOut]
    text: str


class MatchingOut(BaseModel):
    total: str
    edges: list[EdgeOut]


class ReportOut(BaseModel):
    t: int
    window_start: int
    window_len: int
    reported_weight: str
    source_bucket: int
    bucket_count: int
    matching: MatchingOut


class ReplayRequest(BaseModel):
    stream: StreamIn
    window_len: int = Field(ge=1)
    epsilon: str
    beta: Optional[str] = None
    strict_report: bool = False
    exact: bool = True


class ReplayResponse(BaseModel):
    degree_cap: int
    beta: str
    reports: list[ReportOut]


class EvalRowOut(ReportOut):
    oracle_weight: str
    ratio: str
    bucket_bound_ok: bool


class EvalSummaryOut(BaseModel):
    events: int
    max_ratio: Optional[str]
    max_ratio_at: Optional[int]
    max_bucket_count: int
    ratio_bound: str
    ratio_bound_ok: bool
    bucket_bound_ok: bool


class EvalRequest(BaseModel):
    stream: StreamIn
    window_len: int = Field(ge=1)
    epsilon: str
    beta: Optional[str] = None
    strict_report: bool = False


class EvalResponse(BaseModel):
    degree_cap: int
    beta: str
    rows: list[EvalRowOut]
    summary: EvalSummaryOut


class GenerateRequest(BaseModel):
    kind: Literal["hard", "random", "suite"]
    epsilon: Optional[str] = None
    n: Optional[int] = None
    m: Optional[int] = None
    seed: Optional[int] = None
    weight_min: int = 1
    weight_max: int = 100
    denominator: int = 1
    duplicate_rate: float = 0.0
    distribution: Literal["uniform", "powerlaw"] = "uniform"
    oracle_safe: bool = False


class GenerateResponse(BaseModel):
    streams: list[StreamOut]


class CheckOut(BaseModel):
    name: str
    expected: str
    measured: str
    passed: bool


class VerifyHardRequest(BaseModel):
    epsilon: str
    stream: Optional[StreamIn] = None


class VerifyHardResponse(BaseModel):
    passed: bool
    epsilon: str
    ratio: str
    checks: list[CheckOut]
    monotonic_b: str
    monotonic_ab: str
    reduced_b: str
    reduced_ab: str
    matched_smoothness_holds: bool
    reduced_smoothness_holds: bool


class AuditRowOut(BaseModel):
    cut_a: int
    cut_b: int
    reduced_b: str
    reduced_ab: str
    smooth: bool
    matched_bc: str
    mwm_full: str
    reduced_bc: str
    mwm_bc: str
    gate_ok: bool
    bound_ok: bool


class AuditRequest(BaseModel):
    stream: StreamIn
    epsilon: str
    beta: Optional[str] = None


class AuditResponse(BaseModel):
    epsilon: str
    beta: str
    ok: bool
    violations: int
    rows: list[AuditRowOut]


class OracleRequest(BaseModel):
    stream: StreamIn


class OracleResponse(BaseModel):
    matching: MatchingOut


class SessionCreateRequest(BaseModel):
    n: int = Field(ge=1)
    window_len: int = Field(ge=1)
    epsilon: str
    beta: Optional[str] = None
    strict_report: bool = False


class SessionInfoOut(BaseModel):
    session_id: str
    n: int
    window_len: int
    epsilon: str
    beta: str
    degree_cap: int
    strict_report: bool
    processed: int
    bucket_count: int


class HealthOut(BaseModel):
    status: str
    version: str
