import random
from fractions import Fraction as F

import pytest

from chainflow.errors import EnumerationLimitExceeded, TooLarge
from chainflow.greedy import solve
from chainflow.game import compute_equilibrium
from chainflow.oracle import (
    best_response_value_p1,
    best_response_value_p2,
    best_responses,
    brute_force_minimum,
)
from chainflow.poset import build_poset
from chainflow.problem import ChainConstraintProblem, ExplicitPi, SubsetDistribution, compute_delta
from chainflow.circulation import induced_edge_flow, solve_circulation
from chainflow.network import FlowNetwork
from conftest import random_explicit_problem


class TestBruteForceMinimum:
    def test_worked_instance(self, worked):
        result = brute_force_minimum(worked)
        assert result.optimum == F(4, 5)
        assert result.witness.total() == F(4, 5)

    def test_all_rho_zero(self):
        poset = build_poset([1, 2], [(1, 2)])
        problem = ChainConstraintProblem(poset, {}, ExplicitPi({(1, 2): F(-1)}))
        assert brute_force_minimum(problem).optimum == 0

    def test_agrees_with_solver_on_six_element_poset(self):
        poset_relations = [(1, 3), (2, 3), (3, 4), (3, 5), (5, 6)]
        for seed in range(30):
            rng = random.Random(seed)
            poset = build_poset([1, 2, 3, 4, 5, 6], poset_relations)
            rho = {x: F(rng.randint(0, 6), 12) for x in poset.elements}
            beta = {x: F(rng.randint(0, 4), 12) for x in poset.elements}
            alpha = min(
                min(
                    sum(((rho[x] + beta[x]) for x in c), F(0))
                    for c in poset.maximal_chains()
                ),
                1 + min(
                    sum((beta[x] for x in c), F(0)) for c in poset.maximal_chains()
                ),
            )
            pi = ExplicitPi(
                {c: alpha - sum((beta[x] for x in c), F(0)) for c in poset.maximal_chains()}
            )
            problem = ChainConstraintProblem(poset, rho, pi)
            assert brute_force_minimum(problem).optimum == solve(problem).total

    def test_size_guard(self):
        poset = build_poset(list(range(17)), [(i, i + 1) for i in range(16)])
        problem = ChainConstraintProblem(
            poset, {}, ExplicitPi({tuple(range(17)): F(0)})
        )
        with pytest.raises(TooLarge):
            brute_force_minimum(problem)

    def test_witness_feasible(self):
        for seed in range(40):
            rng = random.Random(3000 + seed)
            problem = random_explicit_problem(rng, rng.randint(1, 5))
            result = brute_force_minimum(problem)
            for x in problem.poset.elements:
                assert result.witness.marginal(x) == problem.rho[x]
            for chain in problem.maximal_chains():
                assert result.witness.excess(chain) <= compute_delta(problem, chain)


class TestBestResponses:
    def test_equilibrium_has_no_profitable_deviation(self, fig_net):
        eq = compute_equilibrium(fig_net)
        values = best_responses(fig_net, eq.profile)
        assert values == {"p1_best": F(0), "p2_best": F(0)}

    def test_idle_inspector_lets_router_take_capacity(self, fig_net):
        idle = SubsetDistribution({frozenset(): F(1)})
        p1_best, witness = best_response_value_p1(fig_net, idle)
        # router saturates (s,1) beyond the inspection cap once inspection
        # stops; the (1,t) capacity of 3 limits the second path to 1 unit
        usage = induced_edge_flow(witness, fig_net)
        assert usage[("s", "1")] == fig_net.capacity[("s", "1")] == F(2)
        assert p1_best == F(10) * (F(4, 5) * 2 + F(7, 10) * 1)  # 23

    def test_saturating_flow_invites_interdiction(self, fig_net):
        # the optimal flow keeps the inspector indifferent; capacity-saturating
        # flow on (s,1) hands the inspector a strict profit
        routing = {(("s", "1"), ("1", "t")): F(2)}
        p2_best, subset = best_response_value_p2(fig_net, routing)
        assert p2_best == F(1) * 2 - F(1)  # interdict (s,1): p2*f - d
        assert subset == frozenset({("s", "1")})

    def test_optimal_flow_keeps_inspector_at_zero(self, fig_net):
        sol = solve_circulation(fig_net)
        from chainflow.circulation import decompose_flow

        p2_best, _ = best_response_value_p2(fig_net, decompose_flow(sol.flow, fig_net))
        assert p2_best == 0

    def test_zero_flow_best_responses(self, fig_net):
        p2_best, subset = best_response_value_p2(fig_net, {})
        assert p2_best == 0 and subset == frozenset()
        idle = SubsetDistribution({frozenset(): F(1)})
        p1_best, _ = best_response_value_p1(fig_net, idle)
        assert p1_best > 0

    def test_enumeration_guard(self):
        nodes = ["s"] + [str(i) for i in range(1, 22)] + ["t"]
        edges = [("s", str(i)) for i in range(1, 22)]
        edges += [(str(i), "t") for i in range(1, 22)]
        net = FlowNetwork(
            nodes, "s", "t", edges,
            {e: F(1) for e in edges}, {e: F(1) for e in edges}, {e: F(1) for e in edges},
            F(10), F(1),
        )
        with pytest.raises(EnumerationLimitExceeded):
            best_response_value_p2(net, {})
