"""
Application-wide configuration settings.

This module centralizes the tunables of the library, the CLI and the HTTP
service. Values come from environment variables, loaded from `.env.dev` via
`dotenv` when running outside a container, so a run can be reproduced by
exporting the same variables.
"""

import os
import sys

from dotenv import load_dotenv

# Only load the .env file if we're NOT running in Docker.
if not os.getenv("RUNNING_IN_CONTAINER"):
    print("--- Running locally: loading .env.dev file ---", file=sys.stderr)
    load_dotenv(dotenv_path=".env.dev")

LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
LOG_DIR: str = os.getenv("LOG_DIR", "./logs")

# Largest rank accepted by commands that enumerate triples exhaustively.
RANK_BUDGET: int = int(os.getenv("BD_RANK_BUDGET", 5))

# "laurent" models C((h)); "rational" models C(h), computed over Q(i)(h).
FIELD_POLICY: str = os.getenv("BD_FIELD_POLICY", "laurent").lower()

VERIFY_LEVEL: str = os.getenv("BD_VERIFY_LEVEL", "fast").lower()

MAX_CONCURRENCY: int = int(os.getenv("BD_MAX_CONCURRENCY", 4))

PROBE_SEED: int = int(os.getenv("BD_PROBE_SEED", 20240521))
PROBE_COUNT: int = int(os.getenv("BD_PROBE_COUNT", 8))

# Ranks up to this bound get the full CYBE check even at the "fast" level.
FAST_CYBE_MAX_RANK: int = int(os.getenv("BD_FAST_CYBE_MAX_RANK", 3))

SCHEMA_VERSION: str = "1.0"
