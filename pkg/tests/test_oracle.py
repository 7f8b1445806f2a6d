"""oracle: exhaustive references keep themselves honest."""
from __future__ import annotations

import pytest

from conftest import PARALLEL_CHAINS, TRIANGLE, build_graph
from nextpath import (
    ForwardDag,
    SharedTerminalError,
    exhaustive_next_to_shortest,
    exhaustive_two_disjoint_paths,
    parse_graph,
    random_digraph,
    validate_path,
)
from nextpath.oracle import BudgetExceeded, simple_paths


def test_triangle_two_paths():
    g = parse_graph(TRIANGLE)
    out = exhaustive_next_to_shortest(g)
    assert out.path == (0, 1, 2) and out.weight == 2


def test_single_edge_has_no_second_path():
    g = build_graph(2, {(0, 1): 1})
    assert not exhaustive_next_to_shortest(g).found


def test_parallel_chains_weight():
    # three simple s-t paths: 3 (top), 3 (bottom), 5 (crossover)
    g = build_graph(6, PARALLEL_CHAINS, s=0, t=5)
    paths = sorted(w for _p, w in simple_paths(g, 0, 5))
    assert paths == [3, 3, 5]
    out = exhaustive_next_to_shortest(g)
    assert out.weight == 5


def test_budget_exceeded_is_loud():
    g = random_digraph(8, 0.9, 1, 3)
    with pytest.raises(BudgetExceeded):
        exhaustive_next_to_shortest(g, budget=10)


def test_oracle_weight_invariant_under_relabeling():
    import random

    for seed in range(6):
        g = random_digraph(7, 0.45, 4, seed)
        rng = random.Random(seed + 99)
        perm = list(range(7))
        rng.shuffle(perm)
        relabeled = build_graph(
            7,
            {(perm[u], perm[v]): w for (u, v), w in g.edges.items()},
            s=perm[0],
            t=perm[6],
        )
        a, b = exhaustive_next_to_shortest(g), exhaustive_next_to_shortest(relabeled)
        assert a.found == b.found
        if a.found:
            assert a.weight == b.weight


def test_oracle_witness_is_always_valid():
    for seed in range(10):
        g = random_digraph(7, 0.5, 3, seed)
        out = exhaustive_next_to_shortest(g)
        if out.found:
            check = validate_path(g, out.path)
            assert check.simple and check.weight == out.weight


def test_exhaustive_disjoint_pairs():
    dag = ForwardDag(range(4), {0: [1], 1: [], 2: [3], 3: []})
    pair = exhaustive_two_disjoint_paths(dag, (0, 1), (2, 3))
    assert pair.p1 == (0, 1) and pair.p2 == (2, 3)

    x_gadget = ForwardDag(range(5), {0: [2], 1: [2], 2: [3, 4], 3: [], 4: []})
    assert exhaustive_two_disjoint_paths(x_gadget, (0, 3), (1, 4)) is None
    with pytest.raises(SharedTerminalError):
        exhaustive_two_disjoint_paths(x_gadget, (0, 3), (0, 4))
