"""JSON codecs for problems, networks, and solver outputs.

All rationals serialize as ``"num/den"`` strings (or bare integer strings);
the pretty style renders floats instead.  Keys are deterministic: chains are
dash-joined id sequences, subsets are sorted dash-joined id lists with a
configurable empty-subset key, and paths are arrow-joined node sequences.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InputError
from .greedy import SolveResult
from .network import FlowNetwork, Path
from .poset import Chain, ElementId, Poset, build_poset, id_key
from .problem import (
    AffinePi,
    ChainConstraintProblem,
    ConditionReport,
    ExplicitPi,
    SubsetDistribution,
)
from .rational import format_fraction, to_fraction

EMPTY_KEY = "∅"


def loads(text: str):
    """Decode JSON keeping decimal literals exact."""
    try:
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def dumps(data, pretty: bool = False) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------- keys

def element_label(x: ElementId) -> str:
    label = str(x)
    if "-" in label:
        raise InputError(f"element id {x!r} cannot contain '-' in serialized keys")
    return label


def chain_key(chain: Chain) -> str:
    return "-".join(element_label(x) for x in chain)


def subset_key(subset, empty_key: str = EMPTY_KEY) -> str:
    ordered = sorted(subset, key=id_key)
    if not ordered:
        return empty_key
    return "-".join(element_label(x) for x in ordered)


def path_key(network: FlowNetwork, path: Path) -> str:
    return network.path_key(path)


# ---------------------------------------------------------------- parsing

def parse_poset(data) -> Poset:
    if not isinstance(data, dict) or "elements" not in data:
        raise InputError('poset JSON needs an "elements" array')
    elements = data["elements"]
    relations = data.get("relations", [])
    if not isinstance(elements, list) or not isinstance(relations, list):
        raise InputError('"elements" and "relations" must be arrays')
    by_label = {}
    for x in elements:
        if not isinstance(x, (int, str)) or isinstance(x, bool):
            raise InputError(f"element ids must be strings or integers, got {x!r}")
        label = str(x)
        if label in by_label:
            raise InputError(f"element ids {by_label[label]!r} and {x!r} collide as {label!r}")
        by_label[label] = x
    pairs = []
    for entry in relations:
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise InputError(f"relation {entry!r} must be a pair")
        pairs.append((_lookup(by_label, entry[0]), _lookup(by_label, entry[1])))
    return build_poset(elements, pairs)


def _lookup(by_label: dict, raw) -> ElementId:
    label = str(raw)
    if label not in by_label:
        raise InputError(f"unknown element {raw!r}")
    return by_label[label]


def parse_problem(data, chain_cap: int | None = None) -> ChainConstraintProblem:
    if not isinstance(data, dict) or "poset" not in data:
        raise InputError('problem JSON needs "poset", "rho" and "pi" fields')
    poset = parse_poset(data["poset"])
    by_label = {str(x): x for x in poset.elements}
    rho = {
        _lookup(by_label, key): to_fraction(value)
        for key, value in data.get("rho", {}).items()
    }
    pi_data = data.get("pi")
    if not isinstance(pi_data, dict) or len(pi_data) != 1:
        raise InputError('"pi" must be {"explicit": {...}} or {"affine": {...}}')
    if "explicit" in pi_data:
        cap = chain_cap if chain_cap is not None else 10**6
        chains = poset.maximal_chains(cap)
        by_key = {chain_key(c): c for c in chains}
        values = {}
        for key, value in pi_data["explicit"].items():
            if key not in by_key:
                raise InputError(f"pi key {key!r} is not a maximal chain")
            values[by_key[key]] = to_fraction(value)
        pi = ExplicitPi(values)
    elif "affine" in pi_data:
        spec = pi_data["affine"]
        if not isinstance(spec, dict) or "alpha" not in spec:
            raise InputError('affine pi needs {"alpha": v, "beta": {...}}')
        beta = {
            _lookup(by_label, key): to_fraction(value)
            for key, value in spec.get("beta", {}).items()
        }
        pi = AffinePi(to_fraction(spec["alpha"]), beta)
    else:
        raise InputError('"pi" must contain "explicit" or "affine"')
    kwargs = {"chain_cap": chain_cap} if chain_cap is not None else {}
    return ChainConstraintProblem(poset, rho, pi, **kwargs)


def parse_network(data) -> FlowNetwork:
    if not isinstance(data, dict):
        raise InputError("network JSON must be an object")
    for field in ("nodes", "s", "t", "edges", "p1", "p2"):
        if field not in data:
            raise InputError(f'network JSON is missing "{field}"')
    nodes = data["nodes"]
    by_label = {str(v): v for v in nodes}
    if len(by_label) != len(nodes):
        raise InputError("node ids collide when rendered as strings")
    edges = []
    capacity = {}
    transport = {}
    interdiction = {}
    for entry in data["edges"]:
        if not isinstance(entry, dict):
            raise InputError(f"edge {entry!r} must be an object")
        for field in ("from", "to", "c", "b", "d"):
            if field not in entry:
                raise InputError(f'edge {entry!r} is missing "{field}"')
        e = (_lookup(by_label, entry["from"]), _lookup(by_label, entry["to"]))
        edges.append(e)
        capacity[e] = to_fraction(entry["c"])
        transport[e] = to_fraction(entry["b"])
        interdiction[e] = to_fraction(entry["d"])
    return FlowNetwork(
        nodes=nodes,
        s=_lookup(by_label, data["s"]),
        t=_lookup(by_label, data["t"]),
        edges=edges,
        capacity=capacity,
        transport_cost=transport,
        interdiction_cost=interdiction,
        p1=to_fraction(data["p1"]),
        p2=to_fraction(data["p2"]),
    )


def parse_path(network: FlowNetwork, key: str) -> Path:
    labels = key.split("->")
    by_label = {str(v): v for v in network.nodes}
    try:
        nodes = [by_label[l] for l in labels]
    except KeyError as exc:
        raise InputError(f"path key {key!r} uses unknown node {exc.args[0]!r}") from None
    path = tuple(zip(nodes, nodes[1:]))
    if not path:
        raise InputError(f"path key {key!r} is too short")
    return path


def parse_edge_subset(network: FlowNetwork, key: str, empty_key: str = EMPTY_KEY) -> frozenset:
    if key in (empty_key, EMPTY_KEY, ""):
        return frozenset()
    return frozenset(network.edge_from_id(part) for part in key.split("-"))


def parse_interdiction(network: FlowNetwork, data, empty_key: str = EMPTY_KEY) -> SubsetDistribution:
    dist = SubsetDistribution()
    for key, value in data.items():
        subset = parse_edge_subset(network, key, empty_key)
        dist.weights[subset] = dist.weights.get(subset, Fraction(0)) + to_fraction(value)
    return dist


def parse_routing(network: FlowNetwork, data) -> dict[Path, Fraction]:
    return {parse_path(network, key): to_fraction(value) for key, value in data.items()}


# ---------------------------------------------------------------- formatting

def fmt(value: Fraction, pretty: bool = False):
    return format_fraction(value, "pretty" if pretty else "exact")


def solve_result_json(result: SolveResult, pretty: bool = False, empty_key: str = EMPTY_KEY, include_trace: bool = False) -> dict:
    sigma = {}
    for subset in result.sigma.support():
        sigma[subset_key(subset, empty_key)] = fmt(result.sigma.weights[frozenset(subset)], pretty)
    out = {
        "sigma": sigma,
        "total": fmt(result.total, pretty),
        "iterations": result.iterations,
    }
    if include_trace:
        out["trace"] = [
            {
                "k": state.k,
                "elements": list(state.elements),
                "selected": list(state.selected),
                "weight": fmt(state.weight, pretty),
            }
            for state in result.trace
        ]
    return out


def condition_report_json(report: ConditionReport, pretty: bool = False) -> dict:
    violations = []
    for v in report.violations:
        if v["type"] == "necessary":
            violations.append(
                {"type": "necessary", "chain": chain_key(v["chain"]), "delta": fmt(v["delta"], pretty)}
            )
        else:
            violations.append(
                {
                    "type": "conservation",
                    "chains": [chain_key(c) for c in v["chains"]],
                    "element": element_label(v["element"]),
                    "lhs": fmt(v["lhs"], pretty),
                    "rhs": fmt(v["rhs"], pretty),
                }
            )
    return {
        "necessary_ok": report.necessary_ok,
        "conservation_ok": report.conservation_ok,
        "violations": violations,
    }


def network_json(network: FlowNetwork, pretty: bool = False) -> dict:
    return {
        "nodes": list(network.nodes),
        "s": network.s,
        "t": network.t,
        "edges": [
            {
                "from": e[0],
                "to": e[1],
                "c": fmt(network.capacity[e], pretty),
                "b": fmt(network.transport_cost[e], pretty),
                "d": fmt(network.interdiction_cost[e], pretty),
            }
            for e in network.edges
        ],
        "p1": fmt(network.p1, pretty),
        "p2": fmt(network.p2, pretty),
    }


def interdiction_json(network: FlowNetwork, dist: SubsetDistribution, pretty: bool = False, empty_key: str = EMPTY_KEY) -> dict:
    out = {}
    for subset, weight in dist.weights.items():
        key = subset_key({network.edge_id(e) for e in subset}, empty_key)
        out[key] = fmt(weight, pretty)
    return out


def routing_json(network: FlowNetwork, flow: dict[Path, Fraction], pretty: bool = False) -> dict:
    return {network.path_key(lam): fmt(v, pretty) for lam, v in flow.items()}


def equilibrium_json(eq, network: FlowNetwork, pretty: bool = False, empty_key: str = EMPTY_KEY) -> dict:
    return {
        "network": network_json(network, pretty),
        "flow": routing_json(network, eq.profile.routing, pretty),
        "interdiction": interdiction_json(network, eq.profile.interdiction, pretty, empty_key),
        "rho": {network.edge_id(e): fmt(v, pretty) for e, v in eq.dual.rho.items()},
        "mu": {network.edge_id(e): fmt(v, pretty) for e, v in eq.dual.mu.items()},
        "u1": fmt(eq.u1, pretty),
        "u2": fmt(eq.u2, pretty),
    }
