# File: tests/test_error_handler_app.py

import pytest
from fastapi import FastAPI
from fastapi.testclient import TestClient

from src.error_handler_app import register_exception_handlers
from src.exceptions import (
    BDCohomologyError,
    BudgetExceeded,
    FieldParseError,
    IndexOutOfRange,
    Inconsistent,
    MalformedBijection,
    NotTwistedCocycle,
)


@pytest.fixture(name="client")
def client_fixture():
    """A bare app whose single route raises whatever the test asks for."""
    app = FastAPI()
    register_exception_handlers(app)
    state = {}

    @app.get("/raise")
    async def raise_error():
        raise state["error"]

    client = TestClient(app, raise_server_exceptions=False)
    client.state = state
    return client


@pytest.mark.parametrize(
    "error, status_code, fragment",
    [
        (BudgetExceeded("rank 7 exceeds budget 5", rank=7, budget=5), 413, "exceeds"),
        (MalformedBijection("tau is not injective"), 422, "Malformed input"),
        (FieldParseError("cannot parse '{1/0}'"), 422, "Malformed input"),
        (IndexOutOfRange("index 9 out of range"), 400, "Invalid input"),
        (NotTwistedCocycle("X is not a twisted cocycle."), 400, "Invalid input"),
        (ValueError("Unknown field policy 'padic'"), 400, "Invalid input"),
        (Inconsistent("r0 system has no solution"), 500, "unexpected internal"),
        (BDCohomologyError("generic"), 500, "unexpected internal"),
    ],
)
def test_errors_map_to_status_codes(client, error, status_code, fragment):
    client.state["error"] = error
    response = client.get("/raise")
    assert response.status_code == status_code
    assert fragment in response.json()["detail"]


def test_budget_response_carries_rank_and_budget(client):
    client.state["error"] = BudgetExceeded("too big", rank=7, budget=5)
    body = client.get("/raise").json()
    assert (body["rank"], body["budget"]) == (7, 5)
