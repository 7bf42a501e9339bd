import random

import pytest

from gammoids.bruteforce import brute_max_routing_size
from gammoids.digraph import Digraph
from gammoids.representation import Representation
from gammoids.routing import Routing, is_independent, max_routing, routable, validate_routing


def test_bottleneck_target_admits_only_one_path():
    # X = {a, b}, T = {t}, arcs a->t and b->t: both paths would need t
    d = Digraph.build(["a", "b", "t"], [(0, 2), (1, 2)])
    r = max_routing(d, {0, 1}, {2})
    assert r.size == 1
    assert brute_max_routing_size(d, {0, 1}, {2}) == 1
    # deterministic: the smaller source wins the augmentation race
    assert r.paths == ((0, 2),)


def test_single_vertex_path_for_source_in_targets():
    d = Digraph.build(2, [])
    r = max_routing(d, {0}, {0, 1})
    assert r.paths == ((0,),)


def test_complete_bipartite_three_into_two():
    arcs = [(x, t) for x in (0, 1, 2) for t in (3, 4)]
    d = Digraph.build(5, arcs)
    assert max_routing(d, {0, 1, 2}, {3, 4}).size == 2
    assert brute_max_routing_size(d, {0, 1, 2}, {3, 4}) == 2


def test_paths_stop_at_the_first_target():
    # a -> t1 -> t2 with both targets: the path must end at t1
    d = Digraph.build(3, [(0, 1), (1, 2)])
    r = max_routing(d, {0}, {1, 2})
    assert r.paths == ((0, 1),)


def test_sources_in_targets_stay_single_vertex():
    d = Digraph.build(3, [(1, 0), (0, 2)])
    r = max_routing(d, {0, 1}, {0, 2})
    assert (0,) in r.paths


def test_rerouting_through_residual_arcs():
    # greedy routing of 0 through t would block t in T = {t, w}; the
    # augmentation must reroute 0 to w so that t routes itself
    d = Digraph.build(["x", "t", "w"], [(0, 1), (0, 2)])
    r = max_routing(d, {0, 1}, {1, 2})
    assert r.size == 2
    assert set(r.paths) == {(0, 2), (1,)}


def test_empty_routing_is_valid():
    d = Digraph.build(2, [])
    assert max_routing(d, {0}, {1}).size == 0
    assert max_routing(d, set(), {1}).size == 0


def test_vertex_out_of_range_rejected():
    d = Digraph.build(2, [])
    with pytest.raises(ValueError):
        max_routing(d, {5}, {0})


def test_loops_are_ignored():
    d = Digraph.build(2, [(0, 0), (0, 1)])
    assert routable(d, {0}, {1})
    assert max_routing(d, {0}, {1}).paths == ((0, 1),)


def test_validate_routing_flags_violations():
    d = Digraph.build(3, [(0, 1)])
    validate_routing(d, Routing(((0, 1),), frozenset({1})))
    with pytest.raises(ValueError):
        validate_routing(d, Routing(((0, 2),), frozenset({2})))  # missing arc
    with pytest.raises(ValueError):
        validate_routing(d, Routing(((0, 1),), frozenset({2})))  # wrong end
    with pytest.raises(ValueError):
        validate_routing(d, Routing(((0, 1), (1,)), frozenset({1})))  # overlap


def test_is_independent_on_uniform_representation():
    from gammoids.complexity import uniform_rep

    rep = uniform_rep(2, 4)
    assert is_independent(rep, set())
    for pair in [(0, 1), (0, 3), (2, 3)]:
        assert is_independent(rep, set(pair))
    for triple in [(0, 1, 2), (1, 2, 3)]:
        assert not is_independent(rep, set(triple))


def test_is_independent_rejects_foreign_elements():
    from gammoids.complexity import uniform_rep

    rep = uniform_rep(1, 2)
    with pytest.raises(ValueError):
        is_independent(rep, {7})


def test_deterministic_routing_output():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randint(1, 6)
        arcs = {(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < 0.4}
        d = Digraph.build(n, arcs)
        xs = {v for v in range(n) if rng.random() < 0.5}
        ts = {v for v in range(n) if rng.random() < 0.4}
        first = max_routing(d, xs, ts)
        again = max_routing(Digraph.build(n, sorted(arcs)), xs, ts)
        assert first == again


def test_monotonicity_of_independence():
    rng = random.Random(5)
    for _ in range(80):
        n = rng.randint(2, 6)
        arcs = {(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < 0.35}
        d = Digraph.build(n, arcs)
        ground = frozenset(range(n))
        ts = frozenset(v for v in range(n) if rng.random() < 0.4)
        rep = Representation(d, ts, ground)
        big = {v for v in range(n) if rng.random() < 0.6}
        if is_independent(rep, big):
            for drop in sorted(big):
                assert is_independent(rep, big - {drop})


def test_max_routing_against_oracle_randomized():
    rng = random.Random(99)
    for _ in range(150):
        n = rng.randint(1, 5)
        arcs = {(u, v) for u in range(n) for v in range(n) if rng.random() < 0.35}
        d = Digraph.build(n, arcs)
        xs = {v for v in range(n) if rng.random() < 0.5}
        ts = {v for v in range(n) if rng.random() < 0.5}
        got = max_routing(d, xs, ts)
        validate_routing(d, got)
        assert got.starts() <= xs
        assert got.size == brute_max_routing_size(d, xs, ts)
