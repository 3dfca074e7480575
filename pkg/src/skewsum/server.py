"""HTTP JSON API backing the browser calculator.

Every response is an envelope with exactly one of ``result`` or ``error``:

    {"ok": true,  "result": {...}}
    {"ok": false, "error": {"code": "...", "message": "...", "field": null}}

The service is stateless; meta requests carry their full study list.
"""

import dataclasses
from typing import Optional

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field

from .critical import critical_value
from .errors import SkewsumError
from .estimators import estimate_moments
from .meta import StudyRecord, forest_data, load_vitamin_d, meta_analyze
from .skewtests import run_test
from .sources import parse_source, source_label
from .summaries import Scenario, SummaryRecord


class SummaryBody(BaseModel):
    scenario: str
    n: int
    a: Optional[float] = None
    q1: Optional[float] = None
    m: Optional[float] = None
    q3: Optional[float] = None
    b: Optional[float] = None
    mean: Optional[float] = None
    sd: Optional[float] = None

    def to_record(self) -> SummaryRecord:
        return SummaryRecord(scenario=Scenario.parse(self.scenario), n=self.n,
                             a=self.a, q1=self.q1, m=self.m, q3=self.q3, b=self.b,
                             mean=self.mean, sd=self.sd)


class TestBody(SummaryBody):
    alpha: float = 0.05
    source: str = "approx"
    mc_reps: int = 100_000
    mc_seed: int = 0


class StudyBody(BaseModel):
    id: str
    label: Optional[str] = None
    cases: SummaryBody
    controls: SummaryBody

    def to_record(self) -> StudyRecord:
        return StudyRecord(id=self.id, label=self.label or self.id,
                           cases=self.cases.to_record(),
                           controls=self.controls.to_record())


class MetaBody(BaseModel):
    studies: list[StudyBody] = Field(min_length=1)
    alpha: float = 0.05
    source: str = "approx"
    mc_reps: int = 100_000
    mc_seed: int = 0
    force_include: list[str] = Field(default_factory=list)


def _ok(result) -> JSONResponse:
    return JSONResponse({"ok": True, "result": result})


def _err(status: int, code: str, message: str, field: str | None = None) -> JSONResponse:
    return JSONResponse(
        {"ok": False, "error": {"code": code, "message": message, "field": field}},
        status_code=status)


def _summary_payload(record: SummaryRecord) -> dict:
    return {"scenario": record.scenario.value, "n": record.n, "a": record.a,
            "q1": record.q1, "m": record.m, "q3": record.q3, "b": record.b,
            "mean": record.mean, "sd": record.sd}


def _test_payload(result) -> dict:
    return {
        "scenario": result.scenario.value,
        "statistic": result.statistic,
        "critical_value": result.critical_value,
        "critical": result.critical_value,
        "alpha": result.alpha,
        "source": source_label(result.source),
        "reject": result.reject,
        "verdict": result.verdict,
        "theta1_hat": result.theta1_hat,
        "theta2_hat": result.theta2_hat,
    }


def _meta_payload(result) -> dict:
    return {
        "model": result.model,
        "pooled_md": result.pooled_md,
        "ci_low": result.ci_low,
        "ci_high": result.ci_high,
        "se": result.se,
        "q_stat": result.q_stat,
        "tau2": result.tau2,
        "i2": result.i2,
        "per_study": [dataclasses.asdict(e) for e in result.per_study],
    }


def create_app() -> FastAPI:
    app = FastAPI(title="skewsum", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(RequestValidationError)
    async def on_validation(request: Request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        field = ".".join(str(p) for p in first.get("loc", []) if p != "body") or None
        return _err(400, "validation_error", first.get("msg", "invalid request"), field)

    @app.exception_handler(SkewsumError)
    async def on_domain_error(request: Request, exc: SkewsumError):
        return _err(400, type(exc).__name__, str(exc))

    @app.exception_handler(Exception)
    async def on_internal(request: Request, exc: Exception):
        return _err(500, "internal_error", "internal server error")

    @app.get("/healthz", response_class=PlainTextResponse)
    async def healthz() -> str:
        return "ok"

    @app.post("/api/test")
    async def api_test(body: TestBody):
        source = parse_source(body.source, reps=body.mc_reps, seed=body.mc_seed)
        result = run_test(body.to_record(), body.alpha, source)
        return _ok(_test_payload(result))

    @app.post("/api/estimate")
    async def api_estimate(body: SummaryBody):
        record = body.to_record()
        est = estimate_moments(record)
        return _ok({"scenario": record.scenario.value, "n": record.n,
                    "mean": est.mean, "sd": est.sd,
                    "mean_method": est.mean_method, "sd_method": est.sd_method})

    @app.get("/api/critical-value")
    async def api_critical(
        scenario: str,
        n: int,
        alpha: float = Query(default=0.05),
        source: str = Query(default="table"),
        mc_reps: int = Query(default=100_000),
        mc_seed: int = Query(default=0),
    ):
        src = parse_source(source, reps=mc_reps, seed=mc_seed)
        value = critical_value(Scenario.parse(scenario), n, alpha, src)
        return _ok({"scenario": Scenario.parse(scenario).value, "n": n,
                    "alpha": alpha, "source": source_label(src), "value": value})

    @app.post("/api/meta")
    async def api_meta(body: MetaBody):
        source = parse_source(body.source, reps=body.mc_reps, seed=body.mc_seed)
        studies = [s.to_record() for s in body.studies]
        result = meta_analyze(studies, body.alpha, source,
                              force_include=tuple(body.force_include))
        decisions = []
        for decision in result.decisions:
            arms = {}
            for arm_name in ("cases", "controls"):
                arm = getattr(decision, arm_name)
                arms[arm_name] = {
                    "test": _test_payload(arm.test) if arm.test else None,
                    "moments": dataclasses.asdict(arm.moments) if arm.moments else None,
                }
            decisions.append({"study_id": decision.study_id,
                              "included": decision.included,
                              "exclusion_reason": decision.exclusion_reason,
                              **arms})
        return _ok({
            "decisions": decisions,
            "fixed": _meta_payload(result.fixed),
            "random": _meta_payload(result.random),
            "forest": [dataclasses.asdict(r)
                       for r in forest_data([result.fixed, result.random])],
        })

    @app.get("/api/dataset/vitamind")
    async def api_dataset():
        studies = load_vitamin_d()
        return _ok({"studies": [
            {"id": s.id, "label": s.label,
             "cases": _summary_payload(s.cases),
             "controls": _summary_payload(s.controls)}
            for s in studies
        ]})

    return app


app = create_app()
