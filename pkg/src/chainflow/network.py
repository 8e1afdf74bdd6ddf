"""Capacitated s-t flow networks with interdiction data.

A network is a simple connected acyclic digraph with a source and a sink.
Every edge carries a capacity, a marginal transportation cost, an
interdiction cost, and the two players' marginal valuations live on the
network itself.  "Connected" is enforced in the strong sense the edge-order
construction needs: every edge must lie on at least one s-t path.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import Disconnected, InputError, NotAcyclic, PathLimitExceeded
from .poset import ElementId, id_key

Edge = tuple[ElementId, ElementId]
Path = tuple[Edge, ...]

DEFAULT_PATH_CAP = 10**4


class FlowNetwork:
    def __init__(
        self,
        nodes: Iterable[ElementId],
        s: ElementId,
        t: ElementId,
        edges: Iterable[Edge],
        capacity: dict[Edge, Fraction],
        transport_cost: dict[Edge, Fraction],
        interdiction_cost: dict[Edge, Fraction],
        p1: Fraction,
        p2: Fraction,
    ):
        self.nodes = tuple(sorted(set(nodes), key=id_key))
        self.s = s
        self.t = t
        self.edges: tuple[Edge, ...] = tuple(sorted(set(edges), key=lambda e: (id_key(e[0]), id_key(e[1]))))
        self.capacity = dict(capacity)
        self.transport_cost = dict(transport_cost)
        self.interdiction_cost = dict(interdiction_cost)
        self.p1 = Fraction(p1)
        self.p2 = Fraction(p2)
        self._validate()
        self._succ: dict[ElementId, tuple[ElementId, ...]] = {v: () for v in self.nodes}
        out: dict[ElementId, list[ElementId]] = {v: [] for v in self.nodes}
        for i, j in self.edges:
            out[i].append(j)
        for v in self.nodes:
            self._succ[v] = tuple(sorted(out[v], key=id_key))

    def _validate(self) -> None:
        node_set = set(self.nodes)
        if len(node_set) != len(self.nodes):
            raise InputError("duplicate node ids")
        for v in self.nodes:
            id_key(v)
            if isinstance(v, str) and any(ch in v for ch in ",()-"):
                raise InputError(f"node id {v!r} may not contain ',', '(', ')' or '-'")
        if self.s not in node_set or self.t not in node_set:
            raise InputError("source and sink must be network nodes")
        if self.s == self.t:
            raise InputError("source and sink must differ")
        seen = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise NotAcyclic(f"self loop on {i!r}")
            if i not in node_set or j not in node_set:
                raise InputError(f"edge {e!r} references unknown nodes")
            if e in seen:
                raise InputError(f"duplicate edge {e!r}")
            seen.add(e)
        for name, table in (
            ("capacity", self.capacity),
            ("transport cost", self.transport_cost),
            ("interdiction cost", self.interdiction_cost),
        ):
            for e in self.edges:
                value = table.get(e)
                if value is None:
                    raise InputError(f"missing {name} for edge {e!r}")
                if value <= 0:
                    raise InputError(f"{name} of {e!r} must be positive, got {value}")
        if self.p1 <= 0 or self.p2 <= 0:
            raise InputError("marginal valuations p1, p2 must be positive")
        self._topo = self._topological_order()
        off = self.edges_off_paths()
        if off:
            raise Disconnected(f"edges on no s-t path: {sorted(off)[:4]}")

    def _topological_order(self) -> tuple[ElementId, ...]:
        indeg = {v: 0 for v in self.nodes}
        out: dict[ElementId, list[ElementId]] = {v: [] for v in self.nodes}
        for i, j in self.edges:
            out[i].append(j)
            indeg[j] += 1
        ready = sorted((v for v in self.nodes if indeg[v] == 0), key=id_key)
        order = []
        while ready:
            v = ready.pop()
            order.append(v)
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        if len(order) != len(self.nodes):
            raise NotAcyclic("the network contains a directed cycle")
        return tuple(order)

    def topological_order(self) -> tuple[ElementId, ...]:
        return self._topo

    def node_reachability(self) -> dict[ElementId, frozenset]:
        """Strictly reachable node sets, per node."""
        reach: dict[ElementId, set] = {v: set() for v in self.nodes}
        order = self._topo
        for v in reversed(order):
            for w in self._succ_of(v):
                reach[v].add(w)
                reach[v] |= reach[w]
        return {v: frozenset(r) for v, r in reach.items()}

    def _succ_of(self, v: ElementId) -> list[ElementId]:
        return [j for i, j in self.edges if i == v]

    def edges_off_paths(self) -> set[Edge]:
        """Edges not lying on any s-t path."""
        from_s = {self.s}
        for v in self._topo:
            if v in from_s:
                for w in self._succ_of(v):
                    from_s.add(w)
        to_t = {self.t}
        for v in reversed(self._topo):
            if any(j in to_t for i, j in self.edges if i == v):
                to_t.add(v)
        return {e for e in self.edges if e[0] not in from_s or e[1] not in to_t}

    def edge_id(self, edge: Edge) -> str:
        return f"({edge[0]},{edge[1]})"

    def edge_from_id(self, edge_id: str) -> Edge:
        for e in self.edges:
            if self.edge_id(e) == edge_id:
                return e
        raise InputError(f"unknown edge id {edge_id!r}")

    def paths(self, cap: int = DEFAULT_PATH_CAP) -> list[Path]:
        """All s-t paths as edge sequences, lexicographic by node ids."""
        paths: list[Path] = []
        trail: list[Edge] = []

        def walk(v: ElementId) -> None:
            if v == self.t:
                if len(paths) >= cap:
                    raise PathLimitExceeded(f"more than {cap} s-t paths")
                paths.append(tuple(trail))
                return
            for w in self._succ[v]:
                trail.append((v, w))
                walk(w)
                trail.pop()

        walk(self.s)
        return paths

    def path_nodes(self, path: Path) -> tuple[ElementId, ...]:
        if not path:
            return ()
        return (path[0][0],) + tuple(e[1] for e in path)

    def path_key(self, path: Path) -> str:
        return "->".join(str(v) for v in self.path_nodes(path))

    def path_transport_cost(self, path: Path) -> Fraction:
        return sum((self.transport_cost[e] for e in path), Fraction(0))

    def clearing_threshold(self, path: Path) -> Fraction:
        """Interdiction probability above which routing on `path` stops paying."""
        return 1 - self.path_transport_cost(path) / self.p1
