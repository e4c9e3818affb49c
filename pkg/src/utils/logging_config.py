"""JSON logging shared by the CLI and the HTTP service.

Every record carries the run id, the command (CLI subcommand or request
path) and, while an algebra is being processed, its target label such as
``D_4``.
"""

import json
import logging
import logging.handlers
import os
import sys
from contextlib import contextmanager
from contextvars import ContextVar
from datetime import datetime
from typing import Iterator, Optional

from src.config import config

LOG_FILE_NAME = "bd_cohomology_log.json"
MAX_LOG_BYTES = 10 * 1024 * 1024
LOG_BACKUPS = 5

run_id_var: ContextVar[Optional[str]] = ContextVar("run_id", default=None)
command_var: ContextVar[Optional[str]] = ContextVar("command", default=None)
target_var: ContextVar[Optional[str]] = ContextVar("target", default=None)

for _noisy, _env in (
    ("httpx", "HTTPX_LOG_LEVEL"),
    ("asyncio", "ASYNCIO_LOG_LEVEL"),
    ("uvicorn.access", "UVICORN_ACCESS_LOG_LEVEL"),
):
    logging.getLogger(_noisy).setLevel(os.getenv(_env, "WARNING").upper())


@contextmanager
def log_target(label: str) -> Iterator[None]:
    """Tags records emitted inside the block with an algebra label."""
    token = target_var.set(label)
    try:
        yield
    finally:
        target_var.reset(token)


class RunContextFilter(logging.Filter):
    """Copies the run context variables onto each record."""

    def filter(self, record: logging.LogRecord) -> bool:
        record.run_id = run_id_var.get()
        record.command = command_var.get()
        record.target = target_var.get()
        return True


class JsonFormatter(logging.Formatter):
    """One JSON object per line; the message and traceback come last."""

    def format(self, record: logging.LogRecord) -> str:
        payload = {
            "timestamp": datetime.fromtimestamp(record.created).isoformat(),
            "level": record.levelname,
            "run_id": getattr(record, "run_id", None) or "N/A",
            "command": getattr(record, "command", None) or "N/A",
            "target": getattr(record, "target", None),
            "source": f"{record.filename}:{record.lineno}",
            "function": record.funcName,
            "message": record.getMessage(),
        }
        if record.exc_info:
            payload["exception"] = self.formatException(record.exc_info)
        return json.dumps(payload, default=str)


def _resolve_level(name: str) -> int:
    level = logging.getLevelNamesMapping().get(name.upper())
    return level if level is not None else logging.INFO


def _stream_handler(
    stream, formatter: logging.Formatter, context: logging.Filter
) -> logging.StreamHandler:
    handler = logging.StreamHandler(stream)
    handler.setFormatter(formatter)
    handler.addFilter(context)
    return handler


def setup_logging(console_to_stdout: bool = True) -> None:
    """
    Configures the root logger once at startup.

    Records go to a rotating JSON file under ``config.LOG_DIR`` and to the
    console.

    Args:
        console_to_stdout (bool): Service mode. Records up to WARNING go to
            stdout and errors to stderr. The CLI passes False so stdout only
            carries command output; console records at WARNING and above
            then go to stderr.
    """
    level = _resolve_level(config.LOG_LEVEL)
    root_logger = logging.getLogger()
    if root_logger.hasHandlers():
        root_logger.handlers.clear()
    root_logger.setLevel(level)

    os.makedirs(config.LOG_DIR, exist_ok=True)
    log_file_path = os.path.join(config.LOG_DIR, LOG_FILE_NAME)

    formatter = JsonFormatter()
    context = RunContextFilter()

    file_handler = logging.handlers.RotatingFileHandler(
        log_file_path, maxBytes=MAX_LOG_BYTES, backupCount=LOG_BACKUPS, encoding="utf-8"
    )
    file_handler.setFormatter(formatter)
    file_handler.addFilter(context)
    root_logger.addHandler(file_handler)

    stderr_handler = _stream_handler(sys.stderr, formatter, context)
    if console_to_stdout:
        stdout_handler = _stream_handler(sys.stdout, formatter, context)
        stdout_handler.setLevel(logging.DEBUG)
        stdout_handler.addFilter(lambda record: record.levelno <= logging.WARNING)
        root_logger.addHandler(stdout_handler)
        stderr_handler.setLevel(logging.ERROR)
    else:
        stderr_handler.setLevel(logging.WARNING)
    root_logger.addHandler(stderr_handler)

    root_logger.info(
        f"Logging at {logging.getLevelName(level)} to {log_file_path}"
    )
