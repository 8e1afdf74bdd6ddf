"""Brute-force verifiers used to ground the combinatorial solvers.

The subset-weight problem is solved as an explicit LP over all element
subsets, and best responses in the interdiction game are computed by path
LP and subset enumeration.  Nothing here shares logic with the greedy or
affine solvers; agreement between the two routes is what the test suites
check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EnumerationLimitExceeded, TooLarge
from .network import FlowNetwork, Path
from .problem import ChainConstraintProblem, SubsetDistribution, compute_delta
from .simplex import OPTIMAL, solve_lp

ZERO = Fraction(0)
ONE = Fraction(1)

MAX_ELEMENTS = 16
MAX_ENUM_EDGES = 20


@dataclass
class OracleResult:
    optimum: Fraction
    witness: SubsetDistribution
    method: str


def brute_force_minimum(problem: ChainConstraintProblem) -> OracleResult:
    """Exact optimum of the subset-weight LP over all 2^|X| subsets."""
    elements = problem.poset.elements
    n = len(elements)
    if n > MAX_ELEMENTS:
        raise TooLarge(f"{n} elements means 2^{n} LP columns; refusing above {MAX_ELEMENTS}")
    chains = problem.maximal_chains()
    subsets = list(range(1, 2**n))  # the empty subset never helps the minimum
    pos = {x: i for i, x in enumerate(elements)}

    cost = [ONE] * len(subsets)
    A_eq = []
    b_eq = []
    for x in elements:
        A_eq.append([ONE if mask >> pos[x] & 1 else ZERO for mask in subsets])
        b_eq.append(problem.rho[x])
    A_ub = []
    b_ub = []
    for chain in chains:
        chain_mask = 0
        for x in chain:
            chain_mask |= 1 << pos[x]
        row = []
        for mask in subsets:
            hits = (mask & chain_mask).bit_count()
            row.append(Fraction(hits - 1) if hits >= 2 else ZERO)
        A_ub.append(row)
        b_ub.append(compute_delta(problem, chain))

    result = solve_lp(cost, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, maximize=False)
    assert result.status == OPTIMAL  # singletons at rho are always feasible
    witness = SubsetDistribution()
    for mask, value in zip(subsets, result.x):
        if value > 0:
            witness.add(frozenset(x for x in elements if mask >> pos[x] & 1), value)

    # feasibility of the witness is re-checked without the LP
    for x in elements:
        assert witness.marginal(x) == problem.rho[x]
    for chain in chains:
        assert witness.excess(chain) <= compute_delta(problem, chain)
    return OracleResult(optimum=result.objective, witness=witness, method="exhaustive-subset-lp")


def best_response_value_p1(network: FlowNetwork, interdiction: SubsetDistribution) -> tuple[Fraction, dict[Path, Fraction]]:
    """Best payoff the router can reach against a fixed interdiction mix.

    Maximizes over all capacity-feasible path flows; the inspection caps do
    not bind the router's own action set.
    """
    paths = network.paths()
    hit = {lam: _hit_probability(interdiction, lam) for lam in paths}
    gain = [network.p1 * (network.clearing_threshold(lam) - hit[lam]) for lam in paths]
    A_ub = []
    b_ub = []
    for e in network.edges:
        A_ub.append([ONE if e in lam else ZERO for lam in paths])
        b_ub.append(network.capacity[e])
    result = solve_lp(gain, A_ub=A_ub, b_ub=b_ub)
    assert result.status == OPTIMAL
    witness = {lam: v for lam, v in zip(paths, result.x) if v != 0}
    return result.objective, witness


def best_response_value_p2(network: FlowNetwork, routing: dict[Path, Fraction]) -> tuple[Fraction, frozenset]:
    """Best payoff the inspector can reach against a fixed expected flow."""
    if len(network.edges) > MAX_ENUM_EDGES:
        raise EnumerationLimitExceeded(
            f"subset enumeration over {len(network.edges)} edges exceeds {MAX_ENUM_EDGES}"
        )
    carried = [(set(lam), value) for lam, value in routing.items() if value != 0]
    best = ZERO  # the empty interdiction always scores 0
    best_set: frozenset = frozenset()
    edges = network.edges
    for mask in range(1, 2 ** len(edges)):
        subset = {edges[i] for i in range(len(edges)) if mask >> i & 1}
        caught = sum((value for lam, value in carried if lam & subset), ZERO)
        value = network.p2 * caught - sum((network.interdiction_cost[e] for e in subset), ZERO)
        if value > best:
            best = value
            best_set = frozenset(subset)
    return best, best_set


def best_responses(network: FlowNetwork, profile) -> dict[str, Fraction]:
    """Both players' exhaustive best-response values against a profile.

    `profile` carries ``routing`` (expected path flow) and ``interdiction``
    (a subset distribution over edges).
    """
    p1_best, _ = best_response_value_p1(network, profile.interdiction)
    p2_best, _ = best_response_value_p2(network, profile.routing)
    return {"p1_best": p1_best, "p2_best": p2_best}


def _hit_probability(interdiction: SubsetDistribution, path: Path) -> Fraction:
    members = set(path)
    return sum((w for s, w in interdiction.weights.items() if s & members), ZERO)
