"""Verb implementations shared by the CLI and the HTTP service.

Each function takes decoded JSON payloads and returns a JSON-able dict;
typed errors propagate to the caller, which maps them to exit codes or HTTP
statuses.
"""

from __future__ import annotations

from . import affine, greedy
from .errors import InputError
from .game import (
    StrategyProfile,
    compute_equilibrium,
    critical_components,
    equilibrium_quantities,
    pure_equilibrium,
    verify_equilibrium,
)
from .oracle import brute_force_minimum
from .problem import verify_conditions
from .serialize import (
    EMPTY_KEY,
    condition_report_json,
    equilibrium_json,
    fmt,
    parse_interdiction,
    parse_network,
    parse_problem,
    parse_routing,
    routing_json,
    solve_result_json,
)


def poset_solve(
    data,
    force_affine: bool = False,
    trace: bool = False,
    oracle: bool = False,
    chain_cap: int | None = None,
    pretty: bool = False,
    empty_key: str = EMPTY_KEY,
) -> dict:
    problem = parse_problem(data, chain_cap)
    if problem.is_affine:
        result = affine.solve(
            problem.poset, problem.rho, problem.pi.alpha, problem.pi.beta, trace=trace
        )
    else:
        if force_affine:
            raise InputError("affine mode was forced but the problem has explicit chain values")
        result = greedy.solve(problem, trace=trace)
    out = solve_result_json(result, pretty=pretty, empty_key=empty_key, include_trace=trace)
    if oracle:
        reference = brute_force_minimum(problem)
        out["oracle"] = {
            "optimum": fmt(reference.optimum, pretty),
            "agrees": reference.optimum == result.total,
        }
    return out


def poset_verify(data, chain_cap: int | None = None, pretty: bool = False) -> dict:
    problem = parse_problem(data, chain_cap)
    report = verify_conditions(problem)
    return condition_report_json(report, pretty=pretty)


def game_solve(data, oracle: bool = False, pretty: bool = False, empty_key: str = EMPTY_KEY) -> dict:
    network = parse_network(data)
    eq = compute_equilibrium(network)
    out = equilibrium_json(eq, network, pretty=pretty, empty_key=empty_key)
    if oracle:
        report = verify_equilibrium(network, eq.profile)
        out["oracle"] = {
            "is_ne": report.is_ne,
            "p1_gap": fmt(report.p1_gap, pretty),
            "p2_gap": fmt(report.p2_gap, pretty),
        }
    return out


def game_verify(data, pretty: bool = False, empty_key: str = EMPTY_KEY) -> dict:
    if not isinstance(data, dict) or "network" not in data:
        raise InputError('game-verify input needs a "network" field')
    network = parse_network(data["network"])
    payload = data.get("equilibrium", data)
    if "flow" not in payload or "interdiction" not in payload:
        raise InputError('game-verify input needs "flow" and "interdiction"')
    profile = StrategyProfile(
        routing=parse_routing(network, payload["flow"]),
        interdiction=parse_interdiction(network, payload["interdiction"], empty_key),
    )
    report = verify_equilibrium(network, profile)
    return {
        "is_ne": report.is_ne,
        "p1_gap": fmt(report.p1_gap, pretty),
        "p2_gap": fmt(report.p2_gap, pretty),
        "p1_witness": routing_json(network, report.p1_witness, pretty),
        "p2_witness": sorted(network.edge_id(e) for e in report.p2_witness),
    }


def game_critical(data, pretty: bool = False) -> dict:
    network = parse_network(data)
    paths, edges = critical_components(network)
    return {
        "critical_edges": sorted(network.edge_id(e) for e in edges),
        "critical_paths": sorted(network.path_key(lam) for lam in paths),
    }


def game_quantities(data, pretty: bool = False) -> dict:
    network = parse_network(data)
    eq = compute_equilibrium(network)
    values = equilibrium_quantities(eq, network)
    return {name: fmt(value, pretty) for name, value in values.items()}


def pure_ne(data, pretty: bool = False, empty_key: str = EMPTY_KEY) -> dict:
    network = parse_network(data)
    profile = pure_equilibrium(network)
    if profile is None:
        return {"pure_ne": None}
    return {
        "pure_ne": {
            "flow": routing_json(network, profile.routing, pretty),
            "interdiction_set": [],
        }
    }
