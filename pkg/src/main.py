"""
Main entry point for the Belavin-Drinfeld cohomology FastAPI application.

The HTTP surface is a read-only mirror of the CLI: every endpoint builds a
`RunConfig` from its request body and hands it to the shared `RunService`.
"""

import logging
import time
import uuid
from contextlib import asynccontextmanager
from typing import AsyncIterator, Callable, Dict, List

from fastapi import Depends, FastAPI, Request, status
from fastapi.responses import JSONResponse
from starlette.middleware.base import BaseHTTPMiddleware

from src.config import config
from src.core.lie_algebra import build_algebra
from src.core.root_system import Series
from src.dependencies import get_default_policy, get_run_service
from src.error_handler_app import register_exception_handlers
from src.interfaces.field_policy_interface import IFieldPolicy
from src.models.api_models import (
    ClassifyRequest,
    RunConfig,
    TableRequest,
    TriplesRequest,
    VerifyRequest,
)
from src.models.data_models import (
    ClassificationRecord,
    TableReport,
    TriplesListing,
    VerificationReport,
)
from src.services.orchestration.run_service import RunService
from src.utils.logging_config import command_var, run_id_var, setup_logging

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI) -> AsyncIterator[None]:
    """Configures logging and warms the smallest algebra of each series."""
    setup_logging()
    logger.info("Application starting up...")
    for series in Series:
        build_algebra(series, 2)
    yield
    logger.info("Application shutdown complete.")


app = FastAPI(
    title="Belavin-Drinfeld Cohomology API",
    description="Exact r-matrices and cohomology sets for the B, C and D series",
    version="0.1.0",
    lifespan=lifespan,
)


class LoggingMiddleware(BaseHTTPMiddleware):
    """Middleware to inject a unique run ID and endpoint path into logs."""

    async def dispatch(self, request: Request, call_next: Callable) -> JSONResponse:
        run_id = uuid.uuid4().hex
        run_id_var.set(run_id)
        command_var.set(request.url.path)

        logger.info(f"{request.method} {request.url.path} started")
        started = time.perf_counter()

        try:
            response = await call_next(request)
            response.headers["X-Request-ID"] = run_id
            elapsed = time.perf_counter() - started
            logger.info(f"Finished with status {response.status_code} in {elapsed:.3f}s")
            return response
        except Exception:
            logger.critical("Unhandled exception caught in middleware", exc_info=True)
            return JSONResponse(
                status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
                content={"detail": "An unexpected internal server error occurred."},
            )


app.add_middleware(LoggingMiddleware)

register_exception_handlers(app)


@app.post(
    "/triples",
    summary="List admissible Belavin-Drinfeld triples",
    response_model=List[TriplesListing],
)
async def list_triples(
    request: TriplesRequest,
    run_service: RunService = Depends(get_run_service),
) -> List[TriplesListing]:
    logger.info(f"Received /triples request for {request.series}_{request.rank}")
    run_config = RunConfig(
        series=request.series,
        min_rank=request.rank,
        max_rank=request.rank,
        twistable_only=request.twistable_only,
    )
    return await run_service.list_triples(run_config)


@app.post(
    "/verify",
    summary="Run the exact identity checks",
    response_model=VerificationReport,
)
async def verify(
    request: VerifyRequest,
    run_service: RunService = Depends(get_run_service),
) -> VerificationReport:
    """Failed checks are reported in the body; the status stays 200."""
    run_config = RunConfig(
        series=request.series,
        min_rank=request.rank,
        max_rank=request.rank,
        level=request.level,
    )
    report = await run_service.verify(run_config)
    logger.info(f"Verification passed: {report.passed}")
    return report


@app.post(
    "/classify",
    summary="Classify the cohomology set of each triple",
    response_model=List[ClassificationRecord],
)
async def classify(
    request: ClassifyRequest,
    run_service: RunService = Depends(get_run_service),
) -> List[ClassificationRecord]:
    logger.info(
        f"Received /classify request: {request.kind} "
        f"for {request.series}_{request.rank}"
    )
    run_config = RunConfig(
        series=request.series,
        min_rank=request.rank,
        max_rank=request.rank,
        kind=request.kind,
        policy=request.policy,
        triple=request.triple,
    )
    return await run_service.classify(run_config)


@app.post(
    "/table",
    summary="Aggregate class counts into a summary table",
    response_model=TableReport,
)
async def table(
    request: TableRequest,
    run_service: RunService = Depends(get_run_service),
) -> TableReport:
    run_config = RunConfig(
        min_rank=request.min_rank,
        max_rank=request.max_rank,
        kind=request.kind,
        policy=request.policy,
    )
    return await run_service.table(run_config)


@app.get("/", include_in_schema=False)
async def read_root() -> Dict[str, str]:
    """Provides a simple welcome message at the root URL."""
    return {
        "message": "Welcome to the Belavin-Drinfeld Cohomology API. "
        "Visit /docs for API documentation."
    }


@app.get("/health", status_code=status.HTTP_200_OK)
async def health_check() -> Dict[str, str]:
    """Provides a liveness probe endpoint."""
    return {"status": "ok", "detail": "Application is alive."}


@app.get("/ready", status_code=status.HTTP_200_OK)
async def readiness_check(
    policy: IFieldPolicy = Depends(get_default_policy),
) -> Dict[str, str]:
    """Provides a readiness probe endpoint."""
    logger.info("Performing readiness check...")
    return {
        "status": "ready",
        "detail": "Application and dependencies are ready.",
        "policy": policy.name,
        "schema_version": config.SCHEMA_VERSION,
    }
