import random
from fractions import Fraction as F

import pytest

from chainflow.errors import InputError, PiAboveOne, UnknownChain
from chainflow.poset import build_poset
from chainflow.problem import (
    AffinePi,
    ChainConstraintProblem,
    ExplicitPi,
    SubsetDistribution,
    compute_delta,
    verify_conditions,
)
from conftest import (
    crossing_violation_problem,
    expand_to_explicit,
    random_affine_data,
    random_poset,
)


class TestComputeDelta:
    def test_worked_instance(self, worked):
        assert compute_delta(worked, (1, 3, 4)) == F(3, 5)
        assert compute_delta(worked, (2, 3, 5)) == F(9, 10)
        assert compute_delta(worked, (1, 3, 5)) == F(4, 5)
        assert compute_delta(worked, (2, 3, 4)) == F(7, 10)

    def test_tight_chain(self):
        poset = build_poset([1, 2], [(1, 2)])
        problem = ChainConstraintProblem(
            poset, {1: F(1, 4), 2: F(1, 4)}, ExplicitPi({(1, 2): F(1, 2)})
        )
        assert compute_delta(problem, (1, 2)) == 0

    def test_negative_pi(self):
        poset = build_poset(["x"], [])
        problem = ChainConstraintProblem(poset, {}, ExplicitPi({("x",): F(-1)}))
        assert compute_delta(problem, ("x",)) == 1

    def test_unknown_chain(self, worked):
        with pytest.raises(UnknownChain):
            compute_delta(worked, (1, 3))
        with pytest.raises(UnknownChain):
            compute_delta(worked, (3, 1, 4))

    def test_affine_matches_explicit(self):
        for seed in range(40):
            rng = random.Random(seed)
            poset = random_poset(rng, rng.randint(1, 6))
            rho, alpha, beta = random_affine_data(rng, poset)
            explicit = expand_to_explicit(poset, rho, alpha, beta)
            affine = ChainConstraintProblem(poset, rho, AffinePi(alpha, beta))
            for chain in poset.maximal_chains():
                assert compute_delta(explicit, chain) == compute_delta(affine, chain)


class TestVerifyConditions:
    def test_worked_instance_ok(self, worked):
        report = verify_conditions(worked)
        assert report.necessary_ok and report.conservation_ok
        assert report.violations == []

    def test_conservation_violation_quadruple(self):
        report = verify_conditions(crossing_violation_problem())
        assert report.necessary_ok
        assert not report.conservation_ok
        witnessed = {
            (v["chains"], v["lhs"], v["rhs"])
            for v in report.violations
            if v["type"] == "conservation"
        }
        assert (
            ((1, 4, 5), (2, 4, 6), (1, 4, 6), (2, 4, 5)),
            F(6, 5),
            F(8, 5),
        ) in witnessed

    def test_necessary_violation_names_chain(self):
        poset = build_poset([1, 2], [(1, 2)])
        problem = ChainConstraintProblem(
            poset, {1: F(1, 4)}, ExplicitPi({(1, 2): F(1, 2)})
        )
        report = verify_conditions(problem)
        assert not report.necessary_ok
        assert report.violations[0]["type"] == "necessary"
        assert report.violations[0]["chain"] == (1, 2)

    def test_affine_mode_skips_conservation(self):
        poset = build_poset([1, 2], [(1, 2)])
        problem = ChainConstraintProblem(poset, {1: F(1, 2)}, AffinePi(F(1, 4), {}))
        report = verify_conditions(problem)
        assert report.conservation_ok and report.necessary_ok

    def test_affine_necessary_violation(self):
        poset = build_poset([1, 2], [(1, 2)])
        problem = ChainConstraintProblem(poset, {}, AffinePi(F(1, 2), {}))
        report = verify_conditions(problem)
        assert not report.necessary_ok
        assert report.violations[0]["delta"] == F(-1, 2)

    def test_affine_expansion_passes_explicit_scan(self):
        for seed in range(60):
            rng = random.Random(1000 + seed)
            poset = random_poset(rng, rng.randint(1, 6))
            rho, alpha, beta = random_affine_data(rng, poset)
            report = verify_conditions(expand_to_explicit(poset, rho, alpha, beta))
            assert report.necessary_ok and report.conservation_ok


class TestProblemValidation:
    def test_rho_bounds(self):
        poset = build_poset([1], [])
        with pytest.raises(InputError):
            ChainConstraintProblem(poset, {1: F(3, 2)}, ExplicitPi({(1,): F(0)}))
        with pytest.raises(InputError):
            ChainConstraintProblem(poset, {1: F(-1, 2)}, ExplicitPi({(1,): F(0)}))

    def test_explicit_pi_above_one(self):
        poset = build_poset([1], [])
        with pytest.raises(PiAboveOne):
            ChainConstraintProblem(poset, {}, ExplicitPi({(1,): F(3, 2)}))

    def test_affine_pi_above_one_lazy(self):
        poset = build_poset([1], [])
        problem = ChainConstraintProblem(poset, {}, AffinePi(F(2), {}))
        with pytest.raises(PiAboveOne):
            problem.chain_value((1,))

    def test_explicit_pi_must_cover_chains(self):
        poset = build_poset([1, 2], [])
        with pytest.raises(InputError):
            ChainConstraintProblem(poset, {}, ExplicitPi({(1,): F(0)}))

    def test_unknown_rho_key(self):
        poset = build_poset([1], [])
        with pytest.raises(InputError):
            ChainConstraintProblem(poset, {7: F(0)}, ExplicitPi({(1,): F(0)}))


class TestSubsetDistribution:
    def test_negative_weight_rejected(self):
        with pytest.raises(InputError):
            SubsetDistribution({frozenset({1}): F(-1, 2)})

    def test_marginal_coverage_excess(self):
        dist = SubsetDistribution({frozenset({1, 2}): F(1, 2), frozenset({2}): F(1, 4)})
        assert dist.marginal(2) == F(3, 4)
        assert dist.marginal(1) == F(1, 2)
        assert dist.coverage((1, 2)) == F(3, 4)
        assert dist.excess((1, 2)) == F(1, 2)
        assert dist.total() == F(3, 4)

    def test_equality_ignores_zero_entries(self):
        a = SubsetDistribution({frozenset({1}): F(1, 2), frozenset({2}): F(0)})
        b = SubsetDistribution({frozenset({1}): F(1, 2)})
        assert a == b
