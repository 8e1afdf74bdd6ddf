"""Combinatorial solver for the minimum-total-weight subset problem.

Each round restricts attention to the maximal chains whose slack is zero,
forms the subposet they generate on the elements with remaining value,
assigns weight to its minimal-element antichain, and prunes the chains whose
earliest remaining element was not selected.  The total weight assigned
equals ``max(max(rho), max(pi), 0)``, and the weights satisfy the element
marginals exactly while respecting every chain's slack budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConditionsViolated, TotalExceedsOne
from .poset import Chain, ElementId, id_key, subposet_from_chains
from .problem import (
    ChainConstraintProblem,
    SubsetDistribution,
    compute_delta,
    verify_conditions,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class IterationState:
    """Snapshot of one solver round, kept when tracing is enabled."""

    k: int
    elements: tuple[ElementId, ...]
    chains: tuple[Chain, ...]
    tight_chains: tuple[Chain, ...]
    loose_chains: tuple[Chain, ...]
    rho: dict[ElementId, Fraction]
    delta: dict[Chain, Fraction]
    selected: tuple[ElementId, ...]
    weight: Fraction
    pi: dict[Chain, Fraction] | None = None


@dataclass
class SolveResult:
    sigma: SubsetDistribution
    total: Fraction
    iterations: int
    trace: list[IterationState]


def solve(problem: ChainConstraintProblem, trace: bool = False) -> SolveResult:
    """Assign subset weights matching rho with minimum total weight.

    Requires the slack and conservation conditions to hold; raises
    ConditionsViolated (carrying the report) otherwise.
    """
    report = verify_conditions(problem)
    if not report.ok:
        raise ConditionsViolated(report)

    chains = problem.maximal_chains()
    rho = dict(problem.rho)
    delta = {c: compute_delta(problem, c) for c in chains}
    pi = {c: problem.chain_value(c) for c in chains} if trace else None

    surviving = list(chains)
    alive = sorted((x for x in problem.poset.elements if rho[x] > 0), key=id_key)
    sigma = SubsetDistribution()
    states: list[IterationState] = []
    k = 0
    while alive:
        k += 1
        tight = [c for c in surviving if delta[c] == 0]
        loose = [c for c in surviving if delta[c] > 0]
        alive_set = frozenset(alive)
        level = subposet_from_chains(problem.poset, alive_set, tight)
        selected = sorted(level.minimal_elements(), key=id_key)
        selected_set = frozenset(selected)

        weight = min(rho[x] for x in selected)
        for c in loose:
            hits = len(selected_set & set(c))
            if hits >= 2:
                weight = min(weight, delta[c] / (hits - 1))

        if trace:
            states.append(
                IterationState(
                    k=k,
                    elements=tuple(alive),
                    chains=tuple(surviving),
                    tight_chains=tuple(tight),
                    loose_chains=tuple(loose),
                    rho={x: rho[x] for x in alive},
                    delta={c: delta[c] for c in surviving},
                    selected=tuple(selected),
                    weight=weight,
                    pi=dict(pi) if pi is not None else None,
                )
            )

        sigma.add(selected_set, weight)
        for x in selected:
            rho[x] -= weight
        for c in chains:
            hits = len(selected_set & set(c))
            if hits >= 2:
                delta[c] -= weight * (hits - 1)
            if pi is not None and hits >= 1:
                pi[c] -= weight
        if pi is not None:
            # cross-check the incremental slack against its definition
            for c in surviving:
                assert delta[c] == sum((rho[x] for x in c), ZERO) - pi[c]

        surviving = [
            c
            for c in surviving
            if _first_alive(c, alive_set) in selected_set
        ]
        alive = [x for x in alive if rho[x] > 0]

    total = sigma.total()
    return SolveResult(sigma=sigma, total=total, iterations=k, trace=states)


def _first_alive(chain: Chain, alive: frozenset) -> ElementId | None:
    """Earliest element of the chain still carrying value; None if none."""
    for x in chain:
        if x in alive:
            return x
    return None


def lift_to_distribution(sigma: SubsetDistribution, total: Fraction) -> SubsetDistribution:
    """Turn a weight assignment of total at most 1 into a distribution.

    The missing mass goes to the empty subset.
    """
    if total > ONE:
        raise TotalExceedsOne(f"total weight {total} exceeds 1")
    lifted = SubsetDistribution(dict(sigma.weights))
    lifted.weights[frozenset()] = lifted.weights.get(frozenset(), ZERO) + (ONE - total)
    return lifted
