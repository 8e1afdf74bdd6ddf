"""Routing program behind the interdiction game, in exact arithmetic.

The program maximizes routed value net of transportation cost while keeping
every edge's flow below both its capacity and the level at which inspecting
the edge would start paying for the inspector.  It is solved in its
polynomial edge form; path solutions come from flow decomposition, and dual
multipliers on the two cap families drive the equilibrium construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonConserving, UnknownEdge
from .network import Edge, FlowNetwork, Path
from .poset import id_key
from .simplex import OPTIMAL, solve_lp

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class DualSolution:
    """Multipliers on the inspection caps (rho), capacities (mu), and node potentials."""

    rho: dict[Edge, Fraction]
    mu: dict[Edge, Fraction]
    y: dict[object, Fraction]


@dataclass
class CirculationSolution:
    flow: dict[Edge, Fraction]
    dual: DualSolution
    objective: Fraction


def inspection_cap(network: FlowNetwork, edge: Edge) -> Fraction:
    """Flow level on an edge beyond which inspecting it has positive payoff."""
    return network.interdiction_cost[edge] / network.p2


def solve_circulation(network: FlowNetwork) -> CirculationSolution:
    """Optimal edge flow and duals for the capped routing program.

    Strong duality and complementary slackness hold exactly between the
    returned flow and multipliers.
    """
    edges = network.edges
    n = len(edges)
    t = network.t
    col = {e: i for i, e in enumerate(edges)}
    obj = [
        (ONE if e[1] == t else ZERO) - network.transport_cost[e] / network.p1
        for e in edges
    ]

    interior = [v for v in network.nodes if v not in (network.s, t)]
    A_ub: list[list[Fraction]] = []
    b_ub: list[Fraction] = []
    # conservation as paired inequalities keeps the slack basis feasible
    for v in interior:
        row = [ZERO] * n
        for e in edges:
            if e[0] == v:
                row[col[e]] += ONE
            if e[1] == v:
                row[col[e]] -= ONE
        A_ub.append(row)
        b_ub.append(ZERO)
        A_ub.append([-x for x in row])
        b_ub.append(ZERO)
    cap_base = len(A_ub)
    for e in edges:
        row = [ZERO] * n
        row[col[e]] = ONE
        A_ub.append(row)
        b_ub.append(network.capacity[e])
    for e in edges:
        row = [ZERO] * n
        row[col[e]] = ONE
        A_ub.append(row)
        b_ub.append(inspection_cap(network, e))

    result = solve_lp(obj, A_ub=A_ub, b_ub=b_ub)
    assert result.status == OPTIMAL  # the zero flow is always feasible
    flow = {e: result.x[col[e]] for e in edges}
    y = {}
    for i, v in enumerate(interior):
        y[v] = result.duals_ub[2 * i] - result.duals_ub[2 * i + 1]
    mu = {e: result.duals_ub[cap_base + i] for i, e in enumerate(edges)}
    rho = {e: result.duals_ub[cap_base + n + i] for i, e in enumerate(edges)}
    return CirculationSolution(flow=flow, dual=DualSolution(rho=rho, mu=mu, y=y), objective=result.objective)


def decompose_flow(flow: dict[Edge, Fraction], network: FlowNetwork) -> dict[Path, Fraction]:
    """Split a conserving edge flow into s-t path flows.

    Peels the lexicographically smallest positive path each round, so the
    decomposition is deterministic; at most one path per edge is produced.
    """
    residual = {e: Fraction(flow.get(e, ZERO)) for e in network.edges}
    for e in flow:
        if e not in residual:
            raise UnknownEdge(f"flow on unknown edge {e!r}")
        if flow[e] < 0:
            raise NonConserving(f"negative flow on {e!r}")
    for v in network.nodes:
        if v in (network.s, network.t):
            continue
        inflow = sum((residual[e] for e in network.edges if e[1] == v), ZERO)
        outflow = sum((residual[e] for e in network.edges if e[0] == v), ZERO)
        if inflow != outflow:
            raise NonConserving(f"conservation fails at node {v!r}: in {inflow} != out {outflow}")

    paths: dict[Path, Fraction] = {}
    while True:
        trail: list[Edge] = []
        v = network.s
        while v != network.t:
            step = next(
                (
                    (v, w)
                    for w in sorted({e[1] for e in network.edges if e[0] == v and residual[e] > 0}, key=id_key)
                ),
                None,
            )
            if step is None:
                break
            trail.append(step)
            v = step[1]
        if v != network.t or not trail:
            break
        bottleneck = min(residual[e] for e in trail)
        paths[tuple(trail)] = paths.get(tuple(trail), ZERO) + bottleneck
        for e in trail:
            residual[e] -= bottleneck
    if any(value != 0 for value in residual.values()):
        # conservation guarantees full peeling on a DAG
        raise NonConserving("flow could not be fully decomposed into s-t paths")
    return paths


@dataclass
class ComplementaryPair:
    """Primal path flow and dual pair from the relative interiors of both optimal faces."""

    flow: dict[Path, Fraction]
    rho: dict[Edge, Fraction]
    mu: dict[Edge, Fraction]
    objective: Fraction


def strictly_complementary_pair(network: FlowNetwork, path_cap: int | None = None) -> ComplementaryPair:
    """Optimal primal-dual pair in which every inequality is slack on exactly one side.

    Averages the maximizers of each variable and each constraint slack over
    the optimal faces of the path-form programs; by convexity the averages
    sit in the relative interiors, which are strictly complementary.
    """
    paths = network.paths() if path_cap is None else network.paths(path_cap)
    edges = network.edges
    np_, ne = len(paths), len(edges)
    pi0 = [network.clearing_threshold(lam) for lam in paths]

    base_rows: list[list[Fraction]] = []
    base_rhs: list[Fraction] = []
    for e in edges:
        row = [ONE if e in lam else ZERO for lam in paths]
        base_rows.append(row)
        base_rhs.append(inspection_cap(network, e))
    for e in edges:
        row = [ONE if e in lam else ZERO for lam in paths]
        base_rows.append(row)
        base_rhs.append(network.capacity[e])

    first = solve_lp(pi0, A_ub=base_rows, b_ub=base_rhs)
    assert first.status == OPTIMAL
    z_star = first.objective

    face_rows = base_rows + [list(pi0), [-v for v in pi0]]
    face_rhs = base_rhs + [z_star, -z_star]

    primal_points: list[list[Fraction]] = []
    for k in range(np_):
        goal = [ZERO] * np_
        goal[k] = ONE
        r = solve_lp(goal, A_ub=face_rows, b_ub=face_rhs)
        assert r.status == OPTIMAL
        primal_points.append(r.x)
    for e in edges:
        goal = [Fraction(-1) if e in lam else ZERO for lam in paths]
        r = solve_lp(goal, A_ub=face_rows, b_ub=face_rhs)
        assert r.status == OPTIMAL
        primal_points.append(r.x)
    f_dag = _average(primal_points)

    # dual variables: rho per edge then mu per edge
    def dual_row(lam) -> list[Fraction]:
        row = [ZERO] * (2 * ne)
        for i, e in enumerate(edges):
            if e in lam:
                row[i] = -ONE
                row[ne + i] = -ONE
        return row

    dual_rows = [dual_row(lam) for lam in paths]
    dual_rhs = [-v for v in pi0]
    dual_cost = [inspection_cap(network, e) for e in edges] + [network.capacity[e] for e in edges]
    dual_rows.append(list(dual_cost))
    dual_rhs.append(z_star)
    dual_rows.append([-v for v in dual_cost])
    dual_rhs.append(-z_star)

    dual_points: list[list[Fraction]] = []
    for k in range(2 * ne):
        goal = [ZERO] * (2 * ne)
        goal[k] = ONE
        r = solve_lp(goal, A_ub=dual_rows, b_ub=dual_rhs)
        assert r.status == OPTIMAL
        dual_points.append(r.x)
    for lam in paths:
        goal = [-v for v in dual_row(lam)]
        r = solve_lp(goal, A_ub=dual_rows, b_ub=dual_rhs)
        assert r.status == OPTIMAL
        dual_points.append(r.x)
    d_dag = _average(dual_points)

    flow = {lam: f_dag[i] for i, lam in enumerate(paths) if f_dag[i] != 0}
    rho = {e: d_dag[i] for i, e in enumerate(edges)}
    mu = {e: d_dag[ne + i] for i, e in enumerate(edges)}
    return ComplementaryPair(flow=flow, rho=rho, mu=mu, objective=z_star)


def induced_edge_flow(flow: dict[Path, Fraction], network: FlowNetwork) -> dict[Edge, Fraction]:
    out = {e: ZERO for e in network.edges}
    for lam, value in flow.items():
        for e in lam:
            if e not in out:
                raise UnknownEdge(f"path uses unknown edge {e!r}")
            out[e] += value
    return out


def _average(points: list[list[Fraction]]) -> list[Fraction]:
    count = Fraction(len(points))
    return [sum((p[i] for p in points), ZERO) / count for i in range(len(points[0]))]
