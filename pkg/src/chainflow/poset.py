"""Finite posets stored as cover-edge DAGs.

A poset is built from an arbitrary DAG of order assertions: the reflexive
transitive closure defines the order, and only the transitive reduction (the
Hasse diagram's cover edges) is stored.  Maximal chains are enumerated as
cover paths from minimal to maximal elements, in lexicographic id order.
"""

from __future__ import annotations

from typing import Iterable

from .errors import (
    ChainLimitExceeded,
    CycleDetected,
    Disconnected,
    EmptyPoset,
    UnknownElement,
)

ElementId = int | str
Chain = tuple[ElementId, ...]

DEFAULT_CHAIN_CAP = 10**6


def id_key(x):
    """Total order on labels: integers first, then strings, then tuples."""
    if isinstance(x, bool):
        raise UnknownElement(f"element ids must be int or str, got {x!r}")
    if isinstance(x, int):
        return (0, x, "")
    if isinstance(x, str):
        return (1, 0, x)
    if isinstance(x, tuple):
        return (2, 0, tuple(id_key(c) for c in x))
    raise UnknownElement(f"element ids must be int or str, got {x!r}")


class Poset:
    """Immutable finite poset; construct via :func:`build_poset`."""

    def __init__(self, elements: tuple[ElementId, ...], covers: tuple[tuple[ElementId, ElementId], ...], desc: dict[ElementId, frozenset]):
        self.elements = elements
        self.covers = covers
        self.cover_set = frozenset(covers)
        self._desc = desc  # strict descendants per element
        self._succ: dict[ElementId, tuple[ElementId, ...]] = {x: () for x in elements}
        self._pred: dict[ElementId, tuple[ElementId, ...]] = {x: () for x in elements}
        succ: dict[ElementId, list[ElementId]] = {x: [] for x in elements}
        pred: dict[ElementId, list[ElementId]] = {x: [] for x in elements}
        for a, b in covers:
            succ[a].append(b)
            pred[b].append(a)
        for x in elements:
            self._succ[x] = tuple(sorted(succ[x], key=id_key))
            self._pred[x] = tuple(sorted(pred[x], key=id_key))

    def __contains__(self, x: ElementId) -> bool:
        return x in self._desc

    def __len__(self) -> int:
        return len(self.elements)

    def less(self, a: ElementId, b: ElementId) -> bool:
        """Strict order: a < b."""
        return b in self._desc[a]

    def leq(self, a: ElementId, b: ElementId) -> bool:
        return a == b or b in self._desc[a]

    def comparable(self, a: ElementId, b: ElementId) -> bool:
        return a == b or b in self._desc[a] or a in self._desc[b]

    def cover_successors(self, x: ElementId) -> tuple[ElementId, ...]:
        return self._succ[x]

    def minimal_elements(self) -> frozenset:
        """Elements with no incoming cover edge.

        The result is an antichain and meets every maximal chain.
        """
        return frozenset(x for x in self.elements if not self._pred[x])

    def maximal_elements(self) -> frozenset:
        return frozenset(x for x in self.elements if not self._succ[x])

    def maximal_chains(self, cap: int = DEFAULT_CHAIN_CAP) -> list[Chain]:
        """Every maximal chain exactly once, lexicographically by id sequence.

        Raises ChainLimitExceeded when more than `cap` chains exist.
        """
        chains: list[Chain] = []
        stack: list[ElementId] = []

        def extend(x: ElementId) -> None:
            stack.append(x)
            nxt = self._succ[x]
            if not nxt:
                if len(chains) >= cap:
                    raise ChainLimitExceeded(
                        f"more than {cap} maximal chains; raise the cap or use the affine solver"
                    )
                chains.append(tuple(stack))
            else:
                for y in nxt:
                    extend(y)
            stack.pop()

        for x in sorted(self.minimal_elements(), key=id_key):
            extend(x)
        return chains

    def restrict_chain(self, chain: Chain, keep: frozenset) -> Chain:
        """Subsequence of `chain` whose elements lie in `keep`."""
        return tuple(x for x in chain if x in keep)


def build_poset(elements: Iterable[ElementId], relations: Iterable[tuple[ElementId, ElementId]]) -> Poset:
    """Build a poset from order assertions.

    The order is the reflexive transitive closure of `relations`; stored
    cover edges are its transitive reduction.  Rejects inputs whose closure
    violates antisymmetry.
    """
    elems = list(elements)
    if not elems:
        raise EmptyPoset("a poset needs at least one element")
    for x in elems:
        if isinstance(x, bool) or not isinstance(x, (int, str)):
            raise UnknownElement(f"element ids must be int or str, got {x!r}")
    if len(set(elems)) != len(elems):
        raise UnknownElement("duplicate element ids")
    universe = set(elems)
    adj: dict[ElementId, set[ElementId]] = {x: set() for x in elems}
    for pair in relations:
        a, b = pair
        if a not in universe or b not in universe:
            raise UnknownElement(f"relation {pair!r} references unknown elements")
        if a == b:
            raise CycleDetected(f"relation {pair!r} makes {a!r} strictly below itself")
        adj[a].add(b)

    order = _topological_order(elems, adj)

    # strict descendants, accumulated in reverse topological order
    desc: dict[ElementId, set[ElementId]] = {x: set() for x in elems}
    for x in reversed(order):
        for y in adj[x]:
            desc[x].add(y)
            desc[x] |= desc[y]

    covers = []
    for a in elems:
        for b in desc[a]:
            if not any(b in desc[z] for z in desc[a]):
                covers.append((a, b))

    elems_sorted = tuple(sorted(elems, key=id_key))
    covers_sorted = tuple(sorted(covers, key=lambda e: (id_key(e[0]), id_key(e[1]))))
    return Poset(elems_sorted, covers_sorted, {x: frozenset(d) for x, d in desc.items()})


def _topological_order(elems: list[ElementId], adj: dict[ElementId, set[ElementId]]) -> list[ElementId]:
    indeg = {x: 0 for x in elems}
    for x in elems:
        for y in adj[x]:
            indeg[y] += 1
    ready = sorted((x for x in elems if indeg[x] == 0), key=id_key)
    order = []
    while ready:
        x = ready.pop()
        order.append(x)
        for y in adj[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                ready.append(y)
    if len(order) != len(elems):
        cyclic = sorted((x for x in elems if indeg[x] > 0), key=id_key)
        raise CycleDetected(f"order assertions contain a cycle through {cyclic[:4]}")
    return order


def subposet_from_chains(poset: Poset, restricted_elements: frozenset, chain_subset: Iterable[Chain]) -> Poset:
    """Subposet (X', <=_C') generated by a subset of maximal chains.

    Two restricted elements are ordered iff some chain in `chain_subset`
    contains both.  The caller must pass a chain subset that preserves the
    decomposition of maximal chains intersecting in `restricted_elements`;
    under that contract the relation is a partial order and every maximal
    chain of the result of size >= 2 is the restriction of a subset chain.
    """
    for x in restricted_elements:
        if x not in poset:
            raise UnknownElement(f"{x!r} is not an element of the poset")
    relations = []
    for chain in chain_subset:
        inside = [x for x in chain if x in restricted_elements]
        relations.extend(zip(inside, inside[1:]))
    return build_poset(restricted_elements, relations)


def edge_poset_from_network(network) -> Poset:
    """Order the edges of an acyclic s-t network by path precedence.

    Edge u precedes edge v iff some s-t path traverses u then v; maximal
    chains of the result are exactly the edge sets of s-t paths.  Requires
    every edge to lie on at least one s-t path.
    """
    on_path = network.edges_off_paths()
    if on_path:
        raise Disconnected(f"edges on no s-t path: {sorted(on_path)[:4]}")
    reach = network.node_reachability()
    relations = []
    for u in network.edges:
        for v in network.edges:
            if u != v and (u[1] == v[0] or v[0] in reach[u[1]]):
                relations.append((network.edge_id(u), network.edge_id(v)))
    return build_poset([network.edge_id(e) for e in network.edges], relations)
