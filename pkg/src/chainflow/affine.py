"""Polynomial solver for affine chain values, avoiding chain enumeration.

With chain values ``alpha - sum(beta)``, the slack of a chain equals the
length of its source-sink path in the augmented cover DAG once every edge
into an element ``y`` is given length ``rho[y] + beta[y]`` and every edge
into the sink carries the running offset.  Shortest-path passes then replace
both the tight-chain subposet construction and the weight computation of the
general solver, iteration for iteration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import InputError, NecessaryConditionViolated, PiAboveOne
from .greedy import SolveResult
from .poset import ElementId, Poset, id_key
from .problem import SubsetDistribution

ZERO = Fraction(0)
ONE = Fraction(1)


class _Marker:
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name


SOURCE = _Marker("source")
SINK = _Marker("sink")


class AugmentedCoverGraph:
    """Cover DAG of a poset with an artificial source below and sink above.

    Source-sink paths correspond one-to-one to maximal chains.  Edge lengths
    depend only on the target node and are set per solver iteration.
    """

    def __init__(self, poset: Poset):
        self.poset = poset
        order = _topo_elements(poset)
        self.labels: tuple = (SOURCE, *order, SINK)
        self.index = {x: i for i, x in enumerate(self.labels)}
        n = len(self.labels)
        edges: list[tuple[int, int]] = []
        for x in order:
            if not poset._pred[x]:
                edges.append((0, self.index[x]))
            for y in poset._succ[x]:
                edges.append((self.index[x], self.index[y]))
            if not poset._succ[x]:
                edges.append((self.index[x], n - 1))
        self.edges = sorted(edges)
        self.in_edges: list[list[int]] = [[] for _ in range(n)]
        self.out_edges: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            self.in_edges[v].append(u)
            self.out_edges[u].append(v)
        self.lengths: list[Fraction] = [ZERO] * n  # length of any edge into node i

    def set_lengths(self, rho: dict[ElementId, Fraction], beta: dict[ElementId, Fraction], beta_sink: Fraction) -> None:
        for i, label in enumerate(self.labels):
            if label is SOURCE:
                continue
            if label is SINK:
                self.lengths[i] = beta_sink
            else:
                self.lengths[i] = rho.get(label, ZERO) + beta.get(label, ZERO)

    def forward_distances(self) -> list[Fraction]:
        n = len(self.labels)
        dist: list[Fraction | None] = [None] * n
        dist[0] = ZERO
        for v in range(1, n):
            best = None
            for u in self.in_edges[v]:
                if dist[u] is None:
                    continue
                cand = dist[u] + self.lengths[v]
                if best is None or cand < best:
                    best = cand
            dist[v] = best
        return dist

    def backward_distances(self) -> list[Fraction]:
        n = len(self.labels)
        dist: list[Fraction | None] = [None] * n
        dist[n - 1] = ZERO
        for u in range(n - 2, -1, -1):
            best = None
            for v in self.out_edges[u]:
                if dist[v] is None:
                    continue
                cand = self.lengths[v] + dist[v]
                if best is None or cand < best:
                    best = cand
            dist[u] = best
        return dist


@dataclass
class DistanceMatrix:
    """All-pairs shortest distances; None encodes unreachable."""

    labels: tuple
    rows: list[list[Fraction | None]]

    def distance(self, u, v) -> Fraction | None:
        index = {x: i for i, x in enumerate(self.labels)}
        return self.rows[index[u]][index[v]]


def all_pairs_dag_shortest(graph: AugmentedCoverGraph) -> DistanceMatrix:
    """One topological relaxation per source node."""
    n = len(graph.labels)
    rows: list[list[Fraction | None]] = []
    for source in range(n):
        dist: list[Fraction | None] = [None] * n
        dist[source] = ZERO
        for v in range(source + 1, n):
            best = None
            for u in graph.in_edges[v]:
                if dist[u] is None:
                    continue
                cand = dist[u] + graph.lengths[v]
                if best is None or cand < best:
                    best = cand
            dist[v] = best
        rows.append(dist)
    return DistanceMatrix(graph.labels, rows)


def constrained_hop_shortest(
    edges: Iterable[tuple],
    selected: Iterable,
    source=SOURCE,
    sink=SINK,
) -> dict[int, Fraction]:
    """Shortest source-sink distance per exact count of selected nodes visited.

    `edges` is an iterable of ``(u, v, length)`` triples forming a DAG.  The
    result maps each count q to the minimum total length over source-sink
    paths that visit exactly q nodes of `selected`; counts with no path are
    absent (conceptually infinite).
    """
    from .errors import NotAcyclic

    edge_list = [(u, v, Fraction(w)) for u, v, w in edges]
    nodes: list = []
    index: dict = {}
    for u, v, _ in edge_list:
        for x in (u, v):
            if x not in index:
                index[x] = len(nodes)
                nodes.append(x)
    n = len(nodes)
    out_edges: list[list[tuple[int, Fraction]]] = [[] for _ in range(n)]
    indeg = [0] * n
    for u, v, w in edge_list:
        out_edges[index[u]].append((index[v], w))
        indeg[index[v]] += 1
    order = [i for i in range(n) if indeg[i] == 0]
    head = 0
    countdown = list(indeg)
    while head < len(order):
        i = order[head]
        head += 1
        for j, _ in out_edges[i]:
            countdown[j] -= 1
            if countdown[j] == 0:
                order.append(j)
    if len(order) != n:
        raise NotAcyclic("the hop-constrained graph contains a cycle")

    if source not in index or sink not in index:
        return {}
    selected_set = set(selected)
    counted = [nodes[i] in selected_set for i in range(n)]
    q_cap = sum(counted)
    best: list[list[Fraction | None]] = [[None] * (q_cap + 1) for _ in range(n)]
    start = [None] * (q_cap + 1)
    start[1 if counted[index[source]] else 0] = ZERO
    best[index[source]] = start
    for i in order:
        row = best[i]
        for j, w in out_edges[i]:
            bump = 1 if counted[j] else 0
            target = best[j]
            for q in range(q_cap + 1 - bump):
                if row[q] is None:
                    continue
                cand = row[q] + w
                if target[q + bump] is None or cand < target[q + bump]:
                    target[q + bump] = cand
    return {q: v for q, v in enumerate(best[index[sink]]) if v is not None}


@dataclass
class AffineIterationState:
    k: int
    elements: tuple[ElementId, ...]
    selected: tuple[ElementId, ...]
    weight: Fraction
    rho: dict[ElementId, Fraction]
    order_pairs: frozenset | None = None  # strict pairs of the tight-chain subposet


def solve(
    poset: Poset,
    rho: dict[ElementId, Fraction],
    alpha: Fraction,
    beta: dict[ElementId, Fraction],
    trace: bool = False,
) -> SolveResult:
    """Affine-case solver; output matches the general solver exactly."""
    for name, table in (("rho", rho), ("beta", beta)):
        for x in table:
            if x not in poset:
                raise InputError(f"{name} references unknown element {x!r}")
    rho = {x: Fraction(rho.get(x, ZERO)) for x in poset.elements}
    for x, value in rho.items():
        if not ZERO <= value <= ONE:
            raise InputError(f"rho[{x!r}] = {value} is outside [0, 1]")
    alpha = Fraction(alpha)
    beta = {x: Fraction(beta.get(x, ZERO)) for x in poset.elements}

    graph = AugmentedCoverGraph(poset)
    n = len(graph.labels)
    sink = n - 1

    # every chain value must stay at most 1: alpha - min over chains of
    # the beta sum gives the largest chain value
    graph.set_lengths({x: ZERO for x in poset.elements}, beta, ZERO)
    min_beta = graph.forward_distances()[sink]
    if alpha - min_beta > ONE:
        raise PiAboveOne(f"largest chain value {alpha - min_beta} exceeds 1")

    beta_sink = -alpha
    alive = sorted((x for x in poset.elements if rho[x] > 0), key=id_key)
    sigma = SubsetDistribution()
    states: list[AffineIterationState] = []
    k = 0
    while True:
        graph.set_lengths(rho, beta, beta_sink)
        ahead = graph.forward_distances()
        if k == 0 and ahead[sink] < 0:
            raise NecessaryConditionViolated(
                f"some chain has slack {ahead[sink]} < 0"
            )
        if not alive:
            break
        k += 1
        behind = graph.backward_distances()
        assert ahead[sink] >= 0

        alive_idx = {graph.index[x] for x in alive}
        selected_idx, order_pairs = _select_minimal(graph, ahead, behind, alive_idx, trace)
        selected = sorted((graph.labels[i] for i in selected_idx), key=id_key)

        weight = min(rho[x] for x in selected)
        hop_costs = constrained_hop_shortest(
            ((graph.labels[u], graph.labels[v], graph.lengths[v]) for u, v in graph.edges),
            selected,
        )
        for q, cost in hop_costs.items():
            if q >= 2:
                weight = min(weight, cost / (q - 1))

        if trace:
            states.append(
                AffineIterationState(
                    k=k,
                    elements=tuple(alive),
                    selected=tuple(selected),
                    weight=weight,
                    rho={x: rho[x] for x in alive},
                    order_pairs=order_pairs,
                )
            )

        sigma.add(frozenset(selected), weight)
        for x in selected:
            rho[x] -= weight
        beta_sink += weight
        alive = [x for x in alive if rho[x] > 0]

    total = sigma.total()
    return SolveResult(sigma=sigma, total=total, iterations=k, trace=states)


def _select_minimal(graph: AugmentedCoverGraph, ahead, behind, alive_idx, want_pairs):
    """Minimal elements of the zero-slack-chain subposet on the live elements.

    Two live elements are ordered iff a zero-length source-sink path visits
    both in order; since no path has negative length here, that holds iff
    both lie on zero paths linked by tight edges.
    """
    n = len(graph.labels)
    live = [False] * n
    for v in range(n):
        if ahead[v] is not None and behind[v] is not None and ahead[v] + behind[v] == 0:
            live[v] = True
    tainted = [False] * n  # a zero prefix reaches the node through a live element
    anc: list[set] | None = [set() for _ in range(n)] if want_pairs else None
    for (u, v) in graph.edges:
        if ahead[u] is None or behind[v] is None:
            continue
        if ahead[u] + graph.lengths[v] + behind[v] != 0:
            continue
        if tainted[u] or (u in alive_idx and live[u]):
            tainted[v] = True
        if anc is not None:
            anc[v] |= anc[u]
            if u in alive_idx and live[u]:
                anc[v].add(u)
    selected = {v for v in alive_idx if not (live[v] and tainted[v])}
    pairs = None
    if anc is not None:
        pairs = frozenset(
            (graph.labels[a], graph.labels[v])
            for v in alive_idx
            if live[v]
            for a in anc[v]
        )
    return selected, pairs


def _topo_elements(poset: Poset) -> list[ElementId]:
    indeg = {x: len(poset._pred[x]) for x in poset.elements}
    ready = sorted((x for x in poset.elements if indeg[x] == 0), key=id_key)
    order = []
    while ready:
        x = ready.pop()
        order.append(x)
        for y in poset._succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                ready.append(y)
    return order
