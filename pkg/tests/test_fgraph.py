"""Cycle census and rho walks against naive oracles."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fqdyn.ffield import make_field
from fqdyn.fgraph import brent_rho, build_graph, cycle_census, graph_from_succ, rho_length
from fqdyn.fmaps import CONSTANT_INFINITY, canonicalize_rational, enumerate_polys, enumerate_rationals

from oracles import oracle_components, oracle_cycle_lengths, oracle_periodic_points, oracle_rho

F3 = make_field(3)
F5 = make_field(5)


def test_build_graph_examples():
    g = build_graph(F5, (0, 0, 1))  # x^2
    assert g.size == 5 and g.succ == (0, 1, 4, 4, 1)
    r = canonicalize_rational(F3, (1,), (0, 1))  # 1/x
    gr = build_graph(F3, r)
    assert gr.size == 4 and gr.succ == (3, 1, 2, 0)
    gi = build_graph(F5, CONSTANT_INFINITY)
    assert gi.succ == (5, 5, 5, 5, 5, 5)


def test_graph_from_succ_validates():
    with pytest.raises(ValueError):
        graph_from_succ([0, 3])


def test_cycle_census_examples():
    st_ = cycle_census(build_graph(F5, (0, 0, 1)))
    assert st_.component_count == 2
    assert st_.cycle_lengths == (1, 1)
    assert st_.periodic_count == 2
    assert st_.k_cycle_counts == {1: 2}
    assert st_.max_tail == 2  # 3 -> 4 -> 1

    st_ = cycle_census(build_graph(F3, (1, 1)))  # x + 1, one 3-cycle
    assert st_.component_count == 1
    assert st_.cycle_lengths == (3,)
    assert st_.periodic_count == 3
    assert st_.max_tail == 0

    st_ = cycle_census(build_graph(F5, (2,)))  # constant
    assert st_.component_count == 1
    assert st_.cycle_lengths == (1,)
    assert st_.periodic_count == 1


def test_rho_length_examples():
    g = build_graph(F5, (0, 0, 1))
    # start 3: 3 -> 4 -> 1 -> 1 gives tail 2, cycle 1 (confirmed by the
    # brute-force walker, which is the oracle for this value)
    assert rho_length(g, 3) == (2, 1)
    assert rho_length(g, 0) == (0, 1)  # already periodic
    gc = build_graph(F5, (2,))
    assert rho_length(gc, 0) == (1, 1)
    assert rho_length(gc, 2) == (0, 1)
    with pytest.raises(ValueError):
        rho_length(g, 5)


def test_stats_internal_invariants_exhaustive_small():
    # every polynomial map for q <= 5, d <= 2, and every rational map at q = 3, d = 1
    for ctx in (make_field(2), F3, make_field(2, 2), F5):
        for d in (0, 1, 2):
            for f in enumerate_polys(ctx, d, "exactly"):
                s = cycle_census(build_graph(ctx, f))
                assert s.periodic_count == sum(s.cycle_lengths)
                assert s.component_count == len(s.cycle_lengths)
                assert sum(k * c for k, c in s.k_cycle_counts.items()) == s.periodic_count
    for r in enumerate_rationals(F3, 1, "at_most"):
        s = cycle_census(build_graph(F3, r))
        assert s.component_count == len(s.cycle_lengths)


def test_census_matches_oracles_exhaustive():
    for ctx in (F3, F5):
        for f in enumerate_polys(ctx, 2, "exactly"):
            g = build_graph(ctx, f)
            s = cycle_census(g)
            succ = list(g.succ)
            assert s.component_count == oracle_components(succ)
            assert s.periodic_count == len(oracle_periodic_points(succ))
            assert s.k_cycle_counts == oracle_cycle_lengths(succ)


def test_census_matches_oracles_random_graphs():
    rng = random.Random(2024)
    for _ in range(200):
        size = rng.randrange(1, 64)
        succ = [rng.randrange(size) for _ in range(size)]
        g = graph_from_succ(succ)
        s = cycle_census(g)
        assert s.component_count == oracle_components(succ)
        periodic = oracle_periodic_points(succ)
        assert s.periodic_count == len(periodic)
        assert s.k_cycle_counts == oracle_cycle_lengths(succ)
        start = rng.randrange(size)
        assert rho_length(g, start) == oracle_rho(succ, start)
        tail, cyc = rho_length(g, start)
        assert brent_rho(lambda v: succ[v], start) == (tail, cyc)


def test_max_tail_via_rho():
    rng = random.Random(99)
    for _ in range(50):
        size = rng.randrange(1, 40)
        succ = [rng.randrange(size) for _ in range(size)]
        g = graph_from_succ(succ)
        s = cycle_census(g)
        assert s.max_tail == max(rho_length(g, v)[0] for v in range(size))


def test_permutation_graphs_fully_periodic():
    rng = random.Random(5)
    for _ in range(30):
        size = rng.randrange(1, 50)
        perm = list(range(size))
        rng.shuffle(perm)
        s = cycle_census(graph_from_succ(perm))
        assert s.periodic_count == size
        assert s.max_tail == 0


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 200), min_size=1, max_size=48), st.data())
def test_rho_tail_plus_cycle_is_distinct_visits(raw: list[int], data):
    size = len(raw)
    succ = [v % size for v in raw]
    start = data.draw(st.integers(0, size - 1))
    g = graph_from_succ(succ)
    tail, cyc = rho_length(g, start)
    seen = set()
    v = start
    while v not in seen:
        seen.add(v)
        v = succ[v]
    assert tail + cyc == len(seen)
    assert (tail, cyc) == oracle_rho(succ, start)


def test_serialization():
    g = build_graph(F3, (1, 1))
    assert g.to_jsonable() == [1, 2, 0]
    s = cycle_census(g)
    js = s.to_jsonable()
    assert js == {
        "components": 1,
        "cycle_lengths": [3],
        "periodic": 3,
        "k_cycles": {"3": 1},
        "max_tail": 0,
    }
