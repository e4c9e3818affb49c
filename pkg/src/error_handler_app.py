# File: src/error_handler_app.py

"""
Centralized exception handlers for the FastAPI application.

Every handler maps one branch of the `BDCohomologyError` hierarchy to an
HTTP status; the handlers are registered with the app in main.py.
"""

import logging

from fastapi import FastAPI, Request, status
from fastapi.responses import JSONResponse

from src.exceptions import (
    AlgebraError,
    BDCohomologyError,
    BudgetExceeded,
    CohomologyError,
    FieldParseError,
    MalformedBijection,
)

logger = logging.getLogger(__name__)


def register_exception_handlers(app: FastAPI) -> None:
    """
    Registers all custom exception handlers with the FastAPI app.

    Starlette resolves handlers along the exception's MRO, so the specific
    classes win over the catch-all `BDCohomologyError` handler.

    Args:
        app: The FastAPI application instance.
    """
    app.add_exception_handler(BudgetExceeded, budget_exceeded_handler)  # type: ignore[arg-type]
    app.add_exception_handler(MalformedBijection, malformed_input_handler)  # type: ignore[arg-type]
    app.add_exception_handler(FieldParseError, malformed_input_handler)  # type: ignore[arg-type]
    app.add_exception_handler(AlgebraError, invalid_input_error_handler)  # type: ignore[arg-type]
    app.add_exception_handler(CohomologyError, invalid_input_error_handler)  # type: ignore[arg-type]
    app.add_exception_handler(ValueError, value_error_handler)  # type: ignore[arg-type]
    app.add_exception_handler(BDCohomologyError, general_computation_error_handler)  # type: ignore[arg-type]


async def budget_exceeded_handler(
    request: Request, exc: BudgetExceeded
) -> JSONResponse:
    """Handles ranks above the enumeration budget."""
    logger.warning(f"Budget exceeded: {exc}")
    return JSONResponse(
        status_code=status.HTTP_413_REQUEST_ENTITY_TOO_LARGE,
        content={"detail": str(exc), "rank": exc.rank, "budget": exc.budget},
    )


async def malformed_input_handler(
    request: Request, exc: BDCohomologyError
) -> JSONResponse:
    """Handles triples and field elements that cannot be parsed."""
    logger.warning(f"Malformed input: {exc}")
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        content={"detail": f"Malformed input: {exc}"},
    )


async def invalid_input_error_handler(
    request: Request, exc: BDCohomologyError
) -> JSONResponse:
    """Handles inputs outside the supported domain (ranks, non-cocycles, ...)."""
    logger.warning(f"Invalid input provided: {exc}", exc_info=True)
    return JSONResponse(
        status_code=status.HTTP_400_BAD_REQUEST,
        content={"detail": f"Invalid input: {exc}"},
    )


async def value_error_handler(request: Request, exc: ValueError) -> JSONResponse:
    """Handles unknown series, kinds and policy names."""
    logger.warning(f"Invalid value: {exc}")
    return JSONResponse(
        status_code=status.HTTP_400_BAD_REQUEST,
        content={"detail": f"Invalid input: {exc}"},
    )


async def general_computation_error_handler(
    request: Request, exc: BDCohomologyError
) -> JSONResponse:
    """A final catch-all for internal consistency failures."""
    logger.critical(f"An unexpected computation error occurred: {exc}", exc_info=True)
    return JSONResponse(
        status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
        content={"detail": f"An unexpected internal error occurred: {exc}"},
    )
