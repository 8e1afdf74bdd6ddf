from fractions import Fraction as F

import pytest

from chainflow.errors import InputError
from chainflow.serialize import (
    EMPTY_KEY,
    chain_key,
    dumps,
    loads,
    parse_edge_subset,
    parse_network,
    parse_path,
    parse_poset,
    parse_problem,
    subset_key,
)
from conftest import figure_network


def network_payload():
    return {
        "nodes": ["s", "1", "2", "t"],
        "s": "s",
        "t": "t",
        "edges": [
            {"from": "s", "to": "1", "c": 2, "b": 1, "d": 1},
            {"from": "s", "to": "2", "c": 2, "b": 1, "d": 2},
            {"from": "2", "to": "1", "c": 2, "b": 1, "d": 2},
            {"from": "1", "to": "t", "c": 3, "b": 1, "d": 2},
        ],
        "p1": 10,
        "p2": 1,
    }


class TestNumbers:
    def test_decimal_literals_are_exact(self):
        data = loads('{"x": 0.4, "y": 0.1}')
        assert data["x"] == F(2, 5)
        assert data["y"] == F(1, 10)

    def test_fraction_strings(self):
        problem = parse_problem(
            {
                "poset": {"elements": [1], "relations": []},
                "rho": {"1": "3/7"},
                "pi": {"explicit": {"1": "-2/3"}},
            }
        )
        assert problem.rho[1] == F(3, 7)
        assert problem.chain_value((1,)) == F(-2, 3)

    def test_bad_number(self):
        with pytest.raises(InputError):
            parse_problem(
                {
                    "poset": {"elements": [1], "relations": []},
                    "rho": {"1": "x/y"},
                    "pi": {"explicit": {"1": 0}},
                }
            )


class TestPosetParsing:
    def test_round_trip_ids(self):
        poset = parse_poset({"elements": [2, 1, "a"], "relations": [[1, "a"]]})
        assert poset.elements == (1, 2, "a")
        assert poset.less(1, "a")

    def test_string_keys_map_to_int_ids(self):
        problem = parse_problem(
            {
                "poset": {"elements": [1, 2], "relations": [[1, 2]]},
                "rho": {"1": 0.25, "2": 0},
                "pi": {"explicit": {"1-2": 0.25}},
            }
        )
        assert problem.rho[1] == F(1, 4)

    def test_colliding_labels_rejected(self):
        with pytest.raises(InputError):
            parse_poset({"elements": [1, "1"], "relations": []})

    def test_unknown_chain_key(self):
        with pytest.raises(InputError):
            parse_problem(
                {
                    "poset": {"elements": [1, 2], "relations": [[1, 2]]},
                    "rho": {},
                    "pi": {"explicit": {"2-1": 0}},
                }
            )

    def test_affine_branch(self):
        problem = parse_problem(
            {
                "poset": {"elements": [1], "relations": []},
                "rho": {"1": 1},
                "pi": {"affine": {"alpha": 1, "beta": {"1": 0.5}}},
            }
        )
        assert problem.is_affine
        assert problem.chain_value((1,)) == F(1, 2)


class TestKeys:
    def test_chain_and_subset_keys(self):
        assert chain_key((1, 3, 4)) == "1-3-4"
        assert subset_key({3, 1}) == "1-3"
        assert subset_key(set()) == EMPTY_KEY
        assert subset_key(set(), empty_key="") == ""

    def test_dash_in_id_rejected(self):
        with pytest.raises(InputError):
            chain_key(("a-b",))


class TestNetworkParsing:
    def test_parse_matches_fixture(self):
        net = parse_network(network_payload())
        fixture = figure_network()
        assert net.edges == fixture.edges
        assert net.capacity == fixture.capacity
        assert net.p1 == fixture.p1

    def test_missing_field(self):
        bad = network_payload()
        del bad["edges"][0]["d"]
        with pytest.raises(InputError):
            parse_network(bad)

    def test_path_and_subset_round_trip(self):
        net = parse_network(network_payload())
        path = parse_path(net, "s->2->1->t")
        assert path == (("s", "2"), ("2", "1"), ("1", "t"))
        assert net.path_key(path) == "s->2->1->t"
        subset = parse_edge_subset(net, "(1,t)-(s,1)")
        assert subset == {("1", "t"), ("s", "1")}
        assert parse_edge_subset(net, EMPTY_KEY) == frozenset()

    def test_unknown_path_node(self):
        net = parse_network(network_payload())
        with pytest.raises(InputError):
            parse_path(net, "s->9->t")


def test_dumps_is_deterministic():
    payload = {"b": F(1, 3), "a": [1, 2]}
    rendered = dumps({k: str(v) for k, v in payload.items()})
    assert rendered == dumps({k: str(v) for k, v in reversed(payload.items())})
