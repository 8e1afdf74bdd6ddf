"""Equilibria of the routing-versus-interdiction game.

An equilibrium couples an optimal flow of the capped routing program with an
interdiction mix whose edge marginals equal the inspection-cap multipliers
and whose path coverage meets the per-path targets.  The interdiction mix is
produced by the affine-case subset solver on the network's edge order, the
router's payoff is the capacity rent, and the inspector nets zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import affine
from .circulation import (
    DualSolution,
    decompose_flow,
    induced_edge_flow,
    inspection_cap,
    solve_circulation,
    strictly_complementary_pair,
)
from .errors import InputError, UnknownEdge
from .greedy import lift_to_distribution
from .network import FlowNetwork, Path
from .oracle import best_response_value_p1, best_response_value_p2
from .poset import edge_poset_from_network
from .problem import SubsetDistribution

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class StrategyProfile:
    """Expected routing flow and an interdiction mix over edge subsets."""

    routing: dict[Path, Fraction]
    interdiction: SubsetDistribution


@dataclass
class EquilibriumProfile:
    profile: StrategyProfile
    primal: dict[Path, Fraction]
    dual: DualSolution
    pi_star: dict[Path, Fraction]
    u1: Fraction
    u2: Fraction


@dataclass
class VerificationReport:
    is_ne: bool
    p1_gap: Fraction
    p2_gap: Fraction
    p1_witness: dict[Path, Fraction]
    p2_witness: frozenset


def payoffs(network: FlowNetwork, flow: dict[Path, Fraction], interdiction_set) -> tuple[Fraction, Fraction]:
    """Both players' payoffs for a pure flow against a pure interdiction."""
    subset = frozenset(interdiction_set)
    for e in subset:
        if e not in network.capacity:
            raise UnknownEdge(f"unknown edge {e!r} in interdiction set")
    _check_flow(network, flow)
    total = sum(flow.values(), ZERO)
    surviving = sum((v for lam, v in flow.items() if not subset & set(lam)), ZERO)
    transport = sum((network.path_transport_cost(lam) * v for lam, v in flow.items()), ZERO)
    inspect_cost = sum((network.interdiction_cost[e] for e in subset), ZERO)
    u1 = network.p1 * surviving - transport
    u2 = network.p2 * (total - surviving) - inspect_cost
    return u1, u2


def expected_payoffs(network: FlowNetwork, profile: StrategyProfile) -> tuple[Fraction, Fraction]:
    """Expected payoffs of a profile, by linearity over the interdiction support."""
    u1 = ZERO
    u2 = ZERO
    for subset, weight in profile.interdiction.weights.items():
        a, b = payoffs(network, profile.routing, subset)
        u1 += weight * a
        u2 += weight * b
    return u1, u2


def compute_equilibrium(network: FlowNetwork) -> EquilibriumProfile:
    """Construct an equilibrium from the routing program's optimal pair."""
    sol = solve_circulation(network)
    f_star = decompose_flow(sol.flow, network)

    order = edge_poset_from_network(network)
    by_id = {network.edge_id(e): e for e in network.edges}
    rho = {network.edge_id(e): sol.dual.rho[e] for e in network.edges}
    beta = {
        network.edge_id(e): network.transport_cost[e] / network.p1 + sol.dual.mu[e]
        for e in network.edges
    }
    result = affine.solve(order, rho, ONE, beta)
    lifted = lift_to_distribution(result.sigma, result.total)
    interdiction = SubsetDistribution()
    interdiction.weights = {
        frozenset(by_id[i] for i in subset): weight
        for subset, weight in lifted.weights.items()
    }

    pi_star = {
        lam: network.clearing_threshold(lam) - sum((sol.dual.mu[e] for e in lam), ZERO)
        for lam in network.paths()
    }
    u1 = network.p1 * sum((network.capacity[e] * sol.dual.mu[e] for e in network.edges), ZERO)
    return EquilibriumProfile(
        profile=StrategyProfile(routing=f_star, interdiction=interdiction),
        primal=f_star,
        dual=sol.dual,
        pi_star=pi_star,
        u1=u1,
        u2=ZERO,
    )


def verify_equilibrium(network: FlowNetwork, profile: StrategyProfile) -> VerificationReport:
    """Compare the profile against exhaustive best responses for both players."""
    _check_flow(network, profile.routing)
    total_mass = profile.interdiction.total()
    if total_mass != 1:
        raise InputError(f"interdiction weights sum to {total_mass}, not 1")
    u1, u2 = expected_payoffs(network, profile)
    p1_best, p1_witness = best_response_value_p1(network, profile.interdiction)
    p2_best, p2_witness = best_response_value_p2(network, profile.routing)
    p1_gap = p1_best - u1
    p2_gap = p2_best - u2
    return VerificationReport(
        is_ne=(p1_gap == 0 and p2_gap == 0),
        p1_gap=p1_gap,
        p2_gap=p2_gap,
        p1_witness=p1_witness,
        p2_witness=p2_witness,
    )


def equilibrium_quantities(eq: EquilibriumProfile, network: FlowNetwork) -> dict[str, Fraction]:
    """Closed-form expected quantities of the equilibrium."""
    flow_value = sum(eq.primal.values(), ZERO)
    transport = sum((network.path_transport_cost(lam) * v for lam, v in eq.primal.items()), ZERO)
    inspect_cost = sum((network.interdiction_cost[e] * eq.dual.rho[e] for e in network.edges), ZERO)
    interdicted = sum((inspection_cap(network, e) * eq.dual.rho[e] for e in network.edges), ZERO)
    return {
        "flow_value": flow_value,
        "transport_cost": transport,
        "interdiction_cost": inspect_cost,
        "interdicted_flow": interdicted,
        "effective_flow": flow_value - interdicted,
    }


def critical_components(network: FlowNetwork) -> tuple[frozenset, frozenset]:
    """Paths and edges used with positive probability in at least one equilibrium."""
    pair = strictly_complementary_pair(network)
    paths = frozenset(lam for lam, v in pair.flow.items() if v > 0)
    edges = frozenset(e for e, v in pair.rho.items() if v > 0)
    return paths, edges


def pure_equilibrium(network: FlowNetwork) -> StrategyProfile | None:
    """The no-interdiction equilibrium, when one exists.

    A pure equilibrium exists exactly when some optimal dual puts no weight
    on the inspection caps, which the strictly complementary dual decides.
    """
    pair = strictly_complementary_pair(network)
    if any(v > 0 for v in pair.rho.values()):
        return None
    sol = solve_circulation(network)
    routing = decompose_flow(sol.flow, network)
    interdiction = SubsetDistribution({frozenset(): ONE})
    return StrategyProfile(routing=routing, interdiction=interdiction)


def zero_sum_value(network: FlowNetwork, flow: dict[Path, Fraction], interdiction_set) -> Fraction:
    """Payoff of the strategically equivalent zero-sum game."""
    subset = frozenset(interdiction_set)
    total_surviving = sum((v for lam, v in flow.items() if not subset & set(lam)), ZERO)
    transport = sum((network.path_transport_cost(lam) * v for lam, v in flow.items()), ZERO)
    inspect_cost = sum((network.interdiction_cost[e] for e in subset), ZERO)
    return total_surviving - transport / network.p1 + inspect_cost / network.p2


def _check_flow(network: FlowNetwork, flow: dict[Path, Fraction]) -> None:
    for lam, value in flow.items():
        if value < 0:
            raise InputError(f"negative flow {value} on path {lam!r}")
        nodes = network.path_nodes(lam)
        if not lam or nodes[0] != network.s or nodes[-1] != network.t:
            raise InputError(f"{lam!r} is not an s-t path")
        for e in lam:
            if e not in network.capacity:
                raise UnknownEdge(f"path uses unknown edge {e!r}")
        for a, b in zip(lam, lam[1:]):
            if a[1] != b[0]:
                raise InputError(f"{lam!r} is not a connected path")
    for e, used in induced_edge_flow(flow, network).items():
        if used > network.capacity[e]:
            raise InputError(f"flow {used} exceeds capacity {network.capacity[e]} on {e!r}")
