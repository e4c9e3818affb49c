"""
Manages dependency injection for the FastAPI application.

Services are created once per process through `functools.lru_cache`, so
every request shares the same orchestration service, verifier and default
field policy. The CLI builds its own instances through the same providers.
"""

import logging
from functools import lru_cache

from fastapi import Depends

from src.config import config
from src.interfaces.field_policy_interface import IFieldPolicy
from src.services.business.field_policy import policy_by_name
from src.services.orchestration.run_service import RunService
from src.services.orchestration.verify_service import VerifyService

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def get_default_policy() -> IFieldPolicy:
    """Provides the field policy named by BD_FIELD_POLICY."""
    logger.debug(f"Default field policy: {config.FIELD_POLICY}")
    return policy_by_name(config.FIELD_POLICY)


@lru_cache(maxsize=None)
def get_verify_service() -> VerifyService:
    """Provides a singleton instance of the VerifyService."""
    return VerifyService(max_concurrency=config.MAX_CONCURRENCY)


@lru_cache(maxsize=None)
def get_run_service(
    verifier: VerifyService = Depends(get_verify_service),
) -> RunService:
    """Provides a singleton instance of the RunService."""
    return RunService(verifier=verifier, max_concurrency=config.MAX_CONCURRENCY)
