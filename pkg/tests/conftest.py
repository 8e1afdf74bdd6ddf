"""Shared instance generators for the test suites.

Random chain-value data is produced through the affine form, which satisfies
the conservation law by construction; explicit problems are the expansion of
such data over the enumerated chains, with alpha shifted so every chain
keeps nonnegative slack and values at most 1.
"""

import random
from fractions import Fraction

import pytest

from chainflow.errors import Disconnected, InputError, NotAcyclic
from chainflow.network import FlowNetwork
from chainflow.poset import build_poset
from chainflow.problem import AffinePi, ChainConstraintProblem, ExplicitPi

ZERO = Fraction(0)


def random_poset(rng: random.Random, n: int, density: float = 0.4):
    relations = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if rng.random() < density
    ]
    return build_poset(list(range(1, n + 1)), relations)


def random_affine_data(rng: random.Random, poset, denominator: int = 8):
    """rho, alpha, beta with rho in [0,1], every chain value <= 1 and slack >= 0."""
    rho = {x: Fraction(rng.randint(0, denominator), denominator) for x in poset.elements}
    beta = {x: Fraction(rng.randint(-denominator, denominator), denominator) for x in poset.elements}
    alpha = Fraction(rng.randint(-denominator, 2 * denominator), denominator)
    chains = poset.maximal_chains()
    top = max(alpha - sum((beta[x] for x in c), ZERO) for c in chains)
    if top > 1:
        alpha -= top - 1
    slack = min(sum(((rho[x] + beta[x]) for x in c), ZERO) - alpha for c in chains)
    if slack < 0:
        alpha += slack
    return rho, alpha, beta


def expand_to_explicit(poset, rho, alpha, beta) -> ChainConstraintProblem:
    values = {
        c: alpha - sum((beta[x] for x in c), ZERO)
        for c in poset.maximal_chains()
    }
    return ChainConstraintProblem(poset, rho, ExplicitPi(values))


def random_explicit_problem(rng: random.Random, n: int) -> ChainConstraintProblem:
    poset = random_poset(rng, n)
    rho, alpha, beta = random_affine_data(rng, poset)
    return expand_to_explicit(poset, rho, alpha, beta)


def random_affine_problem(rng: random.Random, n: int) -> ChainConstraintProblem:
    poset = random_poset(rng, n)
    rho, alpha, beta = random_affine_data(rng, poset)
    return ChainConstraintProblem(poset, rho, AffinePi(alpha, beta))


def random_network(rng: random.Random, max_edges: int = 6) -> FlowNetwork:
    while True:
        n_mid = rng.randint(0, 3)
        nodes = ["s"] + [str(i) for i in range(1, n_mid + 1)] + ["t"]
        order = {v: i for i, v in enumerate(nodes)}
        candidates = [(a, b) for a in nodes for b in nodes if order[a] < order[b]]
        rng.shuffle(candidates)
        edges = candidates[: rng.randint(1, min(max_edges, len(candidates)))]

        def value():
            return Fraction(rng.randint(1, 12), rng.randint(1, 4))

        try:
            return FlowNetwork(
                nodes=nodes,
                s="s",
                t="t",
                edges=edges,
                capacity={e: value() for e in edges},
                transport_cost={e: value() for e in edges},
                interdiction_cost={e: value() for e in edges},
                p1=value(),
                p2=value(),
            )
        except (Disconnected, NotAcyclic, InputError):
            continue


def figure_network() -> FlowNetwork:
    """Four-edge network whose equilibrium interdicts two comparable edges."""
    edges = [("s", "1"), ("s", "2"), ("2", "1"), ("1", "t")]
    return FlowNetwork(
        nodes=["s", "1", "2", "t"],
        s="s",
        t="t",
        edges=edges,
        capacity={("s", "1"): Fraction(2), ("s", "2"): Fraction(2), ("2", "1"): Fraction(2), ("1", "t"): Fraction(3)},
        transport_cost={e: Fraction(1) for e in edges},
        interdiction_cost={("s", "1"): Fraction(1), ("s", "2"): Fraction(2), ("2", "1"): Fraction(2), ("1", "t"): Fraction(2)},
        p1=Fraction(10),
        p2=Fraction(1),
    )


def worked_problem() -> ChainConstraintProblem:
    """Five-element instance with a fully written-out solver trace."""
    poset = build_poset([1, 2, 3, 4, 5], [(1, 3), (2, 3), (3, 4), (3, 5)])
    rho = {
        1: Fraction(2, 5),
        2: Fraction(3, 10),
        3: Fraction(1, 2),
        4: Fraction(1, 2),
        5: Fraction(7, 10),
    }
    pi = ExplicitPi(
        {
            (1, 3, 4): Fraction(4, 5),
            (1, 3, 5): Fraction(4, 5),
            (2, 3, 4): Fraction(3, 5),
            (2, 3, 5): Fraction(3, 5),
        }
    )
    return ChainConstraintProblem(poset, rho, pi)


def crossing_violation_problem() -> ChainConstraintProblem:
    """Five-chain poset whose chain values break the conservation law."""
    poset = build_poset([1, 2, 3, 4, 5, 6], [(1, 3), (1, 4), (2, 4), (3, 5), (4, 5), (4, 6)])
    rho = {1: Fraction(2, 5), 4: Fraction(2, 5), 5: Fraction(2, 5)}
    pi = ExplicitPi(
        {
            (1, 3, 5): Fraction(4, 5),
            (1, 4, 5): Fraction(4, 5),
            (1, 4, 6): Fraction(4, 5),
            (2, 4, 5): Fraction(4, 5),
            (2, 4, 6): Fraction(2, 5),
        }
    )
    return ChainConstraintProblem(poset, rho, pi)


@pytest.fixture
def fig_net():
    return figure_network()


@pytest.fixture
def worked():
    return worked_problem()
