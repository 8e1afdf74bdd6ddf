"""Exact solvers for chain-constrained subset distributions on posets and
equilibria of the flow interdiction game."""

from .errors import (
    ChainflowError,
    ChainLimitExceeded,
    ConditionsViolated,
    CycleDetected,
    Disconnected,
    EmptyPoset,
    EnumerationLimitExceeded,
    InputError,
    NecessaryConditionViolated,
    NonConserving,
    NotAcyclic,
    PathLimitExceeded,
    PiAboveOne,
    ResourceLimitExceeded,
    TooLarge,
    TotalExceedsOne,
    UnknownChain,
    UnknownEdge,
    UnknownElement,
)
from .poset import Poset, build_poset, edge_poset_from_network, subposet_from_chains
from .problem import (
    AffinePi,
    ChainConstraintProblem,
    ExplicitPi,
    SubsetDistribution,
    compute_delta,
    verify_conditions,
)
from .greedy import lift_to_distribution, solve as solve_general
from .affine import (
    AugmentedCoverGraph,
    all_pairs_dag_shortest,
    constrained_hop_shortest,
    solve as solve_affine,
)
from .network import FlowNetwork
from .circulation import (
    decompose_flow,
    solve_circulation,
    strictly_complementary_pair,
)
from .game import (
    EquilibriumProfile,
    StrategyProfile,
    compute_equilibrium,
    critical_components,
    equilibrium_quantities,
    payoffs,
    pure_equilibrium,
    verify_equilibrium,
)
from .oracle import OracleResult, brute_force_minimum

__version__ = "0.1.0"

__all__ = [
    "AffinePi",
    "AugmentedCoverGraph",
    "ChainConstraintProblem",
    "ChainflowError",
    "ChainLimitExceeded",
    "ConditionsViolated",
    "CycleDetected",
    "Disconnected",
    "EmptyPoset",
    "EnumerationLimitExceeded",
    "EquilibriumProfile",
    "ExplicitPi",
    "FlowNetwork",
    "InputError",
    "NecessaryConditionViolated",
    "NonConserving",
    "NotAcyclic",
    "OracleResult",
    "PathLimitExceeded",
    "PiAboveOne",
    "Poset",
    "ResourceLimitExceeded",
    "StrategyProfile",
    "SubsetDistribution",
    "TooLarge",
    "TotalExceedsOne",
    "UnknownChain",
    "UnknownEdge",
    "UnknownElement",
    "all_pairs_dag_shortest",
    "build_poset",
    "brute_force_minimum",
    "compute_delta",
    "compute_equilibrium",
    "constrained_hop_shortest",
    "critical_components",
    "decompose_flow",
    "edge_poset_from_network",
    "equilibrium_quantities",
    "lift_to_distribution",
    "payoffs",
    "pure_equilibrium",
    "solve_affine",
    "solve_circulation",
    "solve_general",
    "strictly_complementary_pair",
    "subposet_from_chains",
    "verify_conditions",
    "verify_equilibrium",
]
