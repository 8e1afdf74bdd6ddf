"""HTTP front end exposing the solvers as a FastAPI service.

Each endpoint wraps one dispatch verb; request bodies carry the same JSON
documents the CLI reads from files.  Typed solver errors map to HTTP
statuses: malformed input is 400, violated feasibility conditions are 422,
and blown enumeration caps are 413.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import dispatch
from .errors import ConditionsViolated, InputError, ResourceLimitExceeded
from .serialize import EMPTY_KEY, condition_report_json

app = FastAPI(
    title="chainflow",
    description=(
        "Subset distributions on posets under chain constraints, and"
        " equilibria of the flow interdiction game."
    ),
    version="0.1.0",
)


class SolveOptions(BaseModel):
    affine: bool = False
    trace: bool = False
    oracle: bool = False
    chain_cap: int | None = Field(default=None, ge=1)
    pretty: bool = False
    empty_key: str = EMPTY_KEY


class PosetSolveRequest(BaseModel):
    problem: dict
    options: SolveOptions = SolveOptions()


class PosetVerifyRequest(BaseModel):
    problem: dict
    options: SolveOptions = SolveOptions()


class GameSolveRequest(BaseModel):
    network: dict
    options: SolveOptions = SolveOptions()


class GameVerifyRequest(BaseModel):
    network: dict
    equilibrium: dict
    options: SolveOptions = SolveOptions()


def _guard(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except ConditionsViolated as exc:
        detail = {"error": "conditions-violated"}
        if hasattr(exc.report, "necessary_ok"):
            detail["report"] = condition_report_json(exc.report)
        else:
            detail["message"] = str(exc)
        raise HTTPException(status_code=422, detail=detail) from exc
    except ResourceLimitExceeded as exc:
        raise HTTPException(status_code=413, detail={"error": "resource-limit", "message": str(exc)}) from exc
    except InputError as exc:
        raise HTTPException(status_code=400, detail={"error": "bad-input", "message": str(exc)}) from exc


@app.get("/healthz")
def healthz() -> dict:
    return {"status": "ok"}


@app.post("/poset/solve")
def poset_solve(request: PosetSolveRequest) -> dict:
    o = request.options
    return _guard(
        dispatch.poset_solve,
        request.problem,
        force_affine=o.affine,
        trace=o.trace,
        oracle=o.oracle,
        chain_cap=o.chain_cap,
        pretty=o.pretty,
        empty_key=o.empty_key,
    )


@app.post("/poset/verify")
def poset_verify(request: PosetVerifyRequest) -> dict:
    o = request.options
    return _guard(dispatch.poset_verify, request.problem, chain_cap=o.chain_cap, pretty=o.pretty)


@app.post("/game/solve")
def game_solve(request: GameSolveRequest) -> dict:
    o = request.options
    return _guard(dispatch.game_solve, request.network, oracle=o.oracle, pretty=o.pretty, empty_key=o.empty_key)


@app.post("/game/verify")
def game_verify(request: GameVerifyRequest) -> dict:
    o = request.options
    payload = {"network": request.network, "equilibrium": request.equilibrium}
    return _guard(dispatch.game_verify, payload, pretty=o.pretty, empty_key=o.empty_key)


@app.post("/game/critical")
def game_critical(request: GameSolveRequest) -> dict:
    return _guard(dispatch.game_critical, request.network, pretty=request.options.pretty)


@app.post("/game/quantities")
def game_quantities(request: GameSolveRequest) -> dict:
    return _guard(dispatch.game_quantities, request.network, pretty=request.options.pretty)


@app.post("/game/pure-ne")
def game_pure_ne(request: GameSolveRequest) -> dict:
    o = request.options
    return _guard(dispatch.pure_ne, request.network, pretty=o.pretty, empty_key=o.empty_key)
