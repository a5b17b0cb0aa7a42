"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field, model_validator

from .core import DiscreteSignal, PiecewiseLinearFunction
from .io import function_from_json, function_to_json

__all__ = [
    "BreakpointModel",
    "FunctionModel",
    "SignalModel",
    "SmoothRequest",
    "SmoothResponse",
    "DecomposeRequest",
    "TVReportModel",
    "DecomposeResponse",
    "VerifyRequest",
    "LawCheckModel",
    "LawReportModel",
    "VerifyResponse",
    "PlotRequest",
    "PlotResponse",
]


class BreakpointModel(BaseModel):
    x: float
    value: float
    right_limit: Optional[float] = None
    left_limit: Optional[float] = None


class FunctionModel(BaseModel):
    domain: tuple[float, float]
    breakpoints: list[BreakpointModel] = Field(min_length=2)

    def to_plf(self) -> PiecewiseLinearFunction:
        return function_from_json(self.model_dump(exclude_none=True))

    @classmethod
    def from_plf(cls, f: PiecewiseLinearFunction) -> "FunctionModel":
        return cls.model_validate(function_to_json(f))


class SignalModel(BaseModel):
    values: list[float] = Field(min_length=1)
    spacing: Optional[float] = None
    origin: Optional[float] = None

    def to_signal(self) -> DiscreteSignal:
        return DiscreteSignal(self.values, spacing=self.spacing, origin=self.origin)

    @classmethod
    def from_signal(cls, s: DiscreteSignal) -> "SignalModel":
        return cls(values=[float(v) for v in s.values], spacing=s.spacing, origin=s.origin)


class SmoothRequest(BaseModel):
    function: Optional[FunctionModel] = None
    signal: Optional[SignalModel] = None
    expr: str
    delta: Optional[float] = None
    discrete_n: Optional[int] = None

    @model_validator(mode="after")
    def _one_input(self):
        if (self.function is None) == (self.signal is None):
            raise ValueError("provide exactly one of function or signal")
        if self.function is not None and self.delta is None:
            raise ValueError("delta is required for function smoothing")
        if self.signal is not None and self.discrete_n is None:
            raise ValueError("discrete_n is required for signal smoothing")
        return self


class SmoothResponse(BaseModel):
    function: Optional[FunctionModel] = None
    signal: Optional[SignalModel] = None
    sup_distance: float


class DecomposeRequest(BaseModel):
    function: FunctionModel
    expr: str
    delta: float


class TVReportModel(BaseModel):
    tv_f: float
    tv_smooth: float
    tv_residual: float
    defect: float


class DecomposeResponse(BaseModel):
    report: TVReportModel
    smooth: FunctionModel
    residual: FunctionModel


class VerifyRequest(BaseModel):
    function: FunctionModel
    delta: float
    laws: Optional[list[str]] = None
    eps: float = 1e-9
    seed: int = 0


class LawCheckModel(BaseModel):
    check: str
    violation: float


class LawReportModel(BaseModel):
    name: str
    ok: bool
    worst: float
    checks: list[LawCheckModel]


class VerifyResponse(BaseModel):
    ok: bool
    laws: list[LawReportModel]


class PlotRequest(BaseModel):
    function: FunctionModel
    expr: str
    delta: float
    samples: int = 1000


class PlotResponse(BaseModel):
    svg: str
    csv: str
