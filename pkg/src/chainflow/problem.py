"""Element and chain value data for the subset-distribution problems.

A problem instance pairs a poset with a value ``rho`` in [0, 1] per element
and a value ``pi`` at most 1 per maximal chain.  Chain values are given
either explicitly per chain or as an affine function ``alpha - sum(beta)``
of the chain's elements.  The feasibility conditions are the per-chain
inequality ``sum(rho) >= pi`` and the conservation law under swapping chain
tails at a shared element.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError, PiAboveOne, UnknownChain
from .poset import DEFAULT_CHAIN_CAP, Chain, ElementId, Poset, id_key

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class ExplicitPi:
    values: dict[Chain, Fraction]


@dataclass(frozen=True)
class AffinePi:
    alpha: Fraction
    beta: dict[ElementId, Fraction]


class ChainConstraintProblem:
    """A poset with element values rho and chain values pi."""

    def __init__(self, poset: Poset, rho: dict[ElementId, Fraction], pi: ExplicitPi | AffinePi, chain_cap: int = DEFAULT_CHAIN_CAP):
        self.poset = poset
        self.chain_cap = chain_cap
        self.rho = {x: Fraction(rho.get(x, ZERO)) for x in poset.elements}
        for x, value in self.rho.items():
            if not ZERO <= value <= ONE:
                raise InputError(f"rho[{x!r}] = {value} is outside [0, 1]")
        for x in rho:
            if x not in poset:
                raise InputError(f"rho references unknown element {x!r}")
        self.pi = pi
        if isinstance(pi, ExplicitPi):
            chains = set(self.maximal_chains())
            if set(pi.values) != chains:
                missing = chains - set(pi.values)
                extra = set(pi.values) - chains
                raise InputError(
                    f"explicit pi must cover exactly the maximal chains"
                    f" (missing {sorted(missing)[:3]}, extra {sorted(extra)[:3]})"
                )
            for chain, value in pi.values.items():
                if value > ONE:
                    raise PiAboveOne(f"pi[{chain}] = {value} exceeds 1")
        elif isinstance(pi, AffinePi):
            for x in pi.beta:
                if x not in poset:
                    raise InputError(f"beta references unknown element {x!r}")
        else:
            raise InputError(f"unsupported pi specification {pi!r}")

    @property
    def is_affine(self) -> bool:
        return isinstance(self.pi, AffinePi)

    def maximal_chains(self) -> list[Chain]:
        return self.poset.maximal_chains(self.chain_cap)

    def beta_of(self, x: ElementId) -> Fraction:
        assert isinstance(self.pi, AffinePi)
        return self.pi.beta.get(x, ZERO)

    def chain_value(self, chain: Chain) -> Fraction:
        """pi of one maximal chain; affine values are checked lazily."""
        if isinstance(self.pi, ExplicitPi):
            try:
                return self.pi.values[chain]
            except KeyError:
                raise UnknownChain(f"{chain} is not a maximal chain of the poset") from None
        self._require_maximal(chain)
        value = self.pi.alpha - sum((self.beta_of(x) for x in chain), ZERO)
        if value > ONE:
            raise PiAboveOne(f"affine pi of {chain} is {value} > 1")
        return value

    def _require_maximal(self, chain: Chain) -> None:
        if not chain:
            raise UnknownChain("the empty sequence is not a chain")
        for a, b in zip(chain, chain[1:]):
            if (a, b) not in self.poset.cover_set:
                raise UnknownChain(f"{chain} is not a cover chain ({a!r} !<: {b!r})")
        if chain[0] not in self.poset.minimal_elements() or chain[-1] not in self.poset.maximal_elements():
            raise UnknownChain(f"{chain} is not maximal")


def compute_delta(problem: ChainConstraintProblem, chain: Chain) -> Fraction:
    """Chain slack: sum of rho over the chain minus the chain value."""
    value = problem.chain_value(chain)
    return sum((problem.rho[x] for x in chain), ZERO) - value


@dataclass
class ConditionReport:
    necessary_ok: bool
    conservation_ok: bool
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.necessary_ok and self.conservation_ok

    def __str__(self) -> str:
        if self.ok:
            return "necessary and conservation conditions hold"
        parts = []
        if not self.necessary_ok:
            parts.append("necessary condition violated")
        if not self.conservation_ok:
            parts.append("conservation law violated")
        return "; ".join(parts) + f" ({len(self.violations)} witnesses)"


def verify_conditions(problem: ChainConstraintProblem) -> ConditionReport:
    """Check the feasibility conditions on the problem data.

    Affine chain values satisfy the conservation law identically, so for
    affine problems only the slack inequality is checked (via a shortest
    path over the cover DAG, without enumerating chains).
    """
    if problem.is_affine:
        slack, chain = _min_affine_slack(problem)
        violations = []
        if slack < 0:
            violations.append(
                {
                    "type": "necessary",
                    "chain": chain,
                    "delta": slack,
                }
            )
        return ConditionReport(slack >= 0, True, violations)

    chains = problem.maximal_chains()
    violations = []
    delta = {}
    for chain in chains:
        delta[chain] = compute_delta(problem, chain)
        if delta[chain] < 0:
            violations.append({"type": "necessary", "chain": chain, "delta": delta[chain]})
    necessary_ok = all(d >= 0 for d in delta.values())

    chain_index = {c: True for c in chains}
    pi = {c: problem.chain_value(c) for c in chains}
    conservation_ok = True
    for i, c1 in enumerate(chains):
        set1 = set(c1)
        for c2 in chains[i + 1 :]:
            shared = [x for x in c2 if x in set1]
            for x in shared:
                c12 = c1[: c1.index(x)] + c2[c2.index(x) :]
                c21 = c2[: c2.index(x)] + c1[c1.index(x) :]
                if c12 not in chain_index or c21 not in chain_index:
                    raise InputError(
                        f"recombination of {c1} and {c2} at {x!r} is not a maximal chain;"
                        " the order relation is not a poset"
                    )
                lhs = pi[c1] + pi[c2]
                rhs = pi[c12] + pi[c21]
                if lhs != rhs:
                    conservation_ok = False
                    violations.append(
                        {
                            "type": "conservation",
                            "chains": (c1, c2, c12, c21),
                            "element": x,
                            "lhs": lhs,
                            "rhs": rhs,
                        }
                    )
    return ConditionReport(necessary_ok, conservation_ok, violations)


def _min_affine_slack(problem: ChainConstraintProblem) -> tuple[Fraction, Chain]:
    """Minimum chain slack of an affine problem, with a witnessing chain.

    The slack of a chain is the length of the matching source-sink path in
    the augmented cover DAG under lengths rho + beta, minus alpha; one
    topological relaxation finds the minimum.
    """
    poset = problem.poset
    assert isinstance(problem.pi, AffinePi)
    weight = {x: problem.rho[x] + problem.beta_of(x) for x in poset.elements}
    dist: dict[ElementId, Fraction] = {}
    pred: dict[ElementId, ElementId | None] = {}
    for x in _topo_elements(poset):
        best, best_pred = None, None
        if not poset._pred[x]:
            best = weight[x]
        for p in poset._pred[x]:
            cand = dist[p] + weight[x]
            if best is None or cand < best:
                best, best_pred = cand, p
        dist[x] = best
        pred[x] = best_pred
    terminal = min(
        (x for x in poset.elements if not poset._succ[x]),
        key=lambda x: (dist[x], id_key(x)),
    )
    slack = dist[terminal] - problem.pi.alpha
    chain = [terminal]
    while pred[chain[-1]] is not None:
        chain.append(pred[chain[-1]])
    return slack, tuple(reversed(chain))


def _topo_elements(poset: Poset):
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


class SubsetDistribution:
    """Sparse nonnegative weights on element subsets."""

    def __init__(self, weights: dict[frozenset, Fraction] | None = None):
        self.weights: dict[frozenset, Fraction] = {}
        for subset, value in (weights or {}).items():
            value = Fraction(value)
            if value < 0:
                raise InputError(f"negative weight {value} on {sorted(subset, key=id_key)}")
            self.weights[frozenset(subset)] = value

    def add(self, subset: frozenset, value: Fraction) -> None:
        assert value > 0
        self.weights[subset] = self.weights.get(subset, ZERO) + value

    def total(self) -> Fraction:
        return sum(self.weights.values(), ZERO)

    def marginal(self, x: ElementId) -> Fraction:
        return sum((w for s, w in self.weights.items() if x in s), ZERO)

    def coverage(self, chain: Chain) -> Fraction:
        members = set(chain)
        return sum((w for s, w in self.weights.items() if s & members), ZERO)

    def excess(self, chain: Chain) -> Fraction:
        """Weight counted against the chain's slack constraint."""
        members = set(chain)
        out = ZERO
        for s, w in self.weights.items():
            hits = len(s & members)
            if hits >= 2:
                out += w * (hits - 1)
        return out

    def support(self) -> list[tuple[ElementId, ...]]:
        return sorted((tuple(sorted(s, key=id_key)) for s in self.weights), key=lambda t: (len(t), [id_key(x) for x in t]))

    def items_sorted(self):
        for subset in self.support():
            yield subset, self.weights[frozenset(subset)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubsetDistribution):
            return NotImplemented
        a = {s: w for s, w in self.weights.items() if w != 0}
        b = {s: w for s, w in other.weights.items() if w != 0}
        return a == b

    def __repr__(self) -> str:
        inner = ", ".join(f"{set(k) or '{}'}: {v}" for k, v in self.items_sorted())
        return f"SubsetDistribution({inner})"
