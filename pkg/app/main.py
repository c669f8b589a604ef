from datetime import datetime, timezone
from typing import List

import structlog
import uvicorn
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from config.settings import settings
from monitoring.logger import configure_logging
from src.documents import list_fixtures
from src.schemas import (
    AnaRequest,
    AnaResult,
    ApRequest,
    ApResult,
    CheckRequest,
    ClosureReport,
    CorpusResult,
    CountermodelRequest,
    CountermodelResult,
    HealthResponse,
    InferRequest,
    MuRequest,
    MuResult,
    TBoxReport,
    ValidateRequest,
    ValidityReport,
    WorkbenchInfo,
)
from src.workbench import workbench

configure_logging(settings.LOG_LEVEL, settings.LOG_FORMAT)
logger = structlog.get_logger(__name__)

app = FastAPI(
    title="Analogy Reasoning Workbench API",
    description="Model checking, analogy assertions, plausible inference and countermodel search "
                "for description logic interpretations enriched with features",
    version=settings.VERSION,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.CORS_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _run(endpoint: str, call):
    """Bad input is a 400; anything else is logged and becomes a 500"""
    try:
        return call()
    except ValueError as e:
        logger.warning("request_rejected", endpoint=endpoint, error=str(e))
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error("request_failed", endpoint=endpoint, error=str(e))
        raise HTTPException(status_code=500, detail=f"{endpoint} failed")


@app.get("/", include_in_schema=False)
async def root():
    return {"message": "Analogy Reasoning Workbench API", "docs": "/docs", "timestamp": _now()}


@app.get("/health", response_model=HealthResponse)
async def health_check():
    """Health check endpoint"""
    try:
        return HealthResponse(status="healthy", fixtures_loaded=len(list_fixtures()),
                              version=settings.VERSION, timestamp=_now())
    except Exception as e:
        logger.error("health_check_failed", error=str(e))
        return HealthResponse(status="unhealthy", fixtures_loaded=0, version=settings.VERSION, timestamp=_now())


@app.get("/info", response_model=WorkbenchInfo)
async def info():
    return workbench.info()


@app.post("/validate", response_model=ValidityReport)
def validate(body: ValidateRequest):
    return _run("validate", lambda: workbench.validate(body.interpretation))


@app.post("/check", response_model=TBoxReport)
def check(body: CheckRequest):
    return _run("check", lambda: workbench.check(body.interpretation, body.tbox))


@app.post("/mu", response_model=MuResult)
def mu(body: MuRequest):
    return _run("mu", lambda: workbench.mu(body.interpretation, body.source, body.target))


@app.post("/ana", response_model=AnaResult)
def ana(body: AnaRequest):
    return _run("ana", lambda: workbench.ana(body.interpretation, body.assertion, strong=body.strong))


@app.post("/ap", response_model=ApResult)
def ap(body: ApRequest):
    return _run("ap", lambda: workbench.ap(body.arguments, body.interpretation, level=body.level))


@app.post("/infer", response_model=ClosureReport)
def infer(body: InferRequest):
    """Closure of the TBox with a provenance trace per fact (sound, not complete)"""
    return _run("infer", lambda: workbench.infer(body.tbox, body.witness, depth=body.depth, mode=body.mode).report())


@app.post("/countermodel", response_model=CountermodelResult)
def countermodel(body: CountermodelRequest):
    return _run("countermodel", lambda: workbench.countermodel(
        body.tbox, body.query, body.max_features, body.max_atoms, body.mode
    ).result())


@app.get("/fixtures", response_model=List[CorpusResult])
def fixtures():
    return _run("fixtures", workbench.fixtures)


if __name__ == "__main__":
    uvicorn.run(
        "app.main:app",
        host=settings.API_HOST,
        port=settings.API_PORT,
        reload=False,
        workers=1,
        access_log=True,
    )
