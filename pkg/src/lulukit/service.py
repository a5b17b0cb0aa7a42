"""HTTP front end exposing the smoothing toolkit.

The CLI talks to this app in-process; it can also be served standalone with
uvicorn (``uvicorn lulukit.service:app``).
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException

from .generators import random_delta
from .io import ParseError
from .laws import run_laws
from .plotting import curves_csv, overlay_svg
from .semigroup import (
    OperatorExpr,
    apply_L_discrete,
    apply_U_discrete,
    apply_pipeline,
)
from .schemas import (
    DecomposeRequest,
    DecomposeResponse,
    FunctionModel,
    LawCheckModel,
    LawReportModel,
    PlotRequest,
    PlotResponse,
    SignalModel,
    SmoothRequest,
    SmoothResponse,
    TVReportModel,
    VerifyRequest,
    VerifyResponse,
)
from .variation import total_variation_seq, tv_decomposition

app = FastAPI(title="lulukit", version="0.1.0")


def _expr(word: str, delta: float) -> OperatorExpr:
    try:
        return OperatorExpr(word, delta)
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e)) from e


def _plf(model: FunctionModel):
    try:
        return model.to_plf()
    except (ParseError, ValueError) as e:
        raise HTTPException(status_code=422, detail=str(e)) from e


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/smooth", response_model=SmoothResponse)
def smooth(req: SmoothRequest) -> SmoothResponse:
    if req.function is not None:
        f = _plf(req.function)
        e = _expr(req.expr, req.delta)
        g = apply_pipeline(e, f)
        return SmoothResponse(
            function=FunctionModel.from_plf(g), sup_distance=f.sup_distance(g)
        )
    s = req.signal.to_signal()
    if req.discrete_n < 1:
        raise HTTPException(status_code=422, detail="discrete_n must be >= 1")
    bad = set(req.expr) - {"L", "U"}
    if not req.expr or bad:
        raise HTTPException(status_code=422, detail="expr must be a nonempty word over L and U")
    out = s
    for letter in reversed(req.expr):
        out = (
            apply_L_discrete(out, req.discrete_n)
            if letter == "L"
            else apply_U_discrete(out, req.discrete_n)
        )
    dist = float(np.abs(out.values - s.values).max())
    return SmoothResponse(signal=SignalModel.from_signal(out), sup_distance=dist)


@app.post("/decompose", response_model=DecomposeResponse)
def decompose(req: DecomposeRequest) -> DecomposeResponse:
    f = _plf(req.function)
    e = _expr(req.expr, req.delta)
    smoothed = apply_pipeline(e, f)
    rep = tv_decomposition(f, e)
    return DecomposeResponse(
        report=TVReportModel(**rep.as_dict()),
        smooth=FunctionModel.from_plf(smoothed),
        residual=FunctionModel.from_plf(f - smoothed),
    )


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    f = _plf(req.function)
    if not req.delta > 0:
        raise HTTPException(status_code=422, detail="delta must be positive")
    rng = np.random.default_rng(req.seed)
    aux = random_delta(rng, f.domain.span)
    try:
        ok, reports = run_laws(f, req.delta, laws=req.laws, eps=req.eps, aux_delta=aux)
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e)) from e
    return VerifyResponse(
        ok=ok,
        laws=[
            LawReportModel(
                name=r.name,
                ok=r.ok,
                worst=r.worst,
                checks=[LawCheckModel(check=c, violation=v) for c, v in r.checks],
            )
            for r in reports
        ],
    )


@app.post("/plot", response_model=PlotResponse)
def plot(req: PlotRequest) -> PlotResponse:
    f = _plf(req.function)
    e = _expr(req.expr, req.delta)
    g = apply_pipeline(e, f)
    return PlotResponse(
        svg=overlay_svg(f, g, req.samples), csv=curves_csv(f, g, req.samples)
    )
