"""HTTP front of the verification library.

All state lives in the request: endpoints are pure functions of their
payload, so responses are deterministic and safe to run concurrently.
Config-level problems map to 400, resource caps to 413.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from .. import __version__, reports, suite
from ..errors import IndexBudgetError, SizeLimitError, UrwordError
from ..families import generate_word, hypothesis_check, prefix_stream
from ..suite import rational_json
from ..words import parikh
from .schemas import (
    GenerateRequest,
    GenerateResponse,
    HealthResponse,
    HypothesisRequest,
    ParikhModel,
    ReportRequest,
    VerifyRequest,
)

_RESOURCE_ERRORS = (SizeLimitError, IndexBudgetError)


async def _domain_error(request: Request, exc: Exception) -> JSONResponse:
    if isinstance(exc, _RESOURCE_ERRORS):
        return JSONResponse(
            status_code=413, content={"kind": "resource", "detail": str(exc)}
        )
    return JSONResponse(
        status_code=400, content={"kind": "config", "detail": str(exc)}
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="urword",
        version=__version__,
        description="Exact verification of a binary substitution-tower word.",
    )
    app.add_exception_handler(UrwordError, _domain_error)
    app.add_exception_handler(ValueError, _domain_error)

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/hypothesis")
    def hypothesis(req: HypothesisRequest) -> dict:
        fam = req.family.to_family()
        top = fam.max_level_defined(req.max_level)
        levels = []
        for i in range(top + 1):
            rep = hypothesis_check(fam, i)
            levels.append(
                {
                    "level": rep.level,
                    "structural_ok": rep.structural_ok,
                    "ratio_growth_ok": rep.ratio_growth_ok,
                    "vector_lemma_ok": rep.vector_lemma_ok,
                    "min_growth_factor": rational_json(rep.min_growth_factor),
                    "details": [
                        {"name": d.name, "ok": d.ok, "note": d.note}
                        for d in rep.details
                    ],
                }
            )
        return {"family": fam.describe(), "levels": levels}

    @app.post("/verify")
    def verify(req: VerifyRequest) -> dict:
        fam = req.family.to_family()
        result = suite.run_suite(fam, req.params.to_params(), names=req.checks)
        return reports.suite_json(result)

    @app.post("/generate", response_model=GenerateResponse)
    def generate(req: GenerateRequest) -> GenerateResponse:
        fam = req.family.to_family()
        if req.which == "prefix":
            word = prefix_stream(fam, req.level, req.length)
        else:
            word = generate_word(fam, req.level, req.rank, req.which)
        p = parikh(word)
        return GenerateResponse(
            which=req.which,
            level=req.level,
            rank=req.rank,
            length=len(word),
            parikh=ParikhModel(zeros=str(p.zeros), ones=str(p.ones)),
            word01=word.to01(),
        )

    @app.post("/report")
    def report(req: ReportRequest) -> PlainTextResponse:
        fam = req.family.to_family()
        text = reports.render_report(
            fam,
            req.kind,
            n_max=req.n_max,
            rank_max=req.rank_max,
            oracle_prefix=req.oracle_prefix,
            check_budget=req.check_budget,
        )
        return PlainTextResponse(content=text, media_type="text/csv")

    return app


app = create_app()
