"""End-to-end pipeline behavior beyond what the CLI tests cover."""
from __future__ import annotations

from conftest import PARALLEL_CHAINS, TRIANGLE, build_graph
from nextpath import (
    exhaustive_next_to_shortest,
    parse_graph,
    random_digraph,
    shortest_distances,
    solve,
    solve_detailed,
    validate_path,
)


def test_triangle_answer():
    assert solve(parse_graph(TRIANGLE)).path == (0, 1, 2)


def test_no_path_resolves_to_none_immediately():
    g = build_graph(3, {(1, 0): 1, (2, 1): 1}, s=0, t=2)
    result = solve_detailed(g)
    assert not result.outcome.found
    assert result.layered_graph is None


def test_layered_answer_survives_lifting():
    g = build_graph(6, PARALLEL_CHAINS, s=0, t=5)
    result = solve_detailed(g)
    assert result.outcome.path == (0, 3, 4, 1, 2, 5)
    assert result.layered_outcome.found


def test_outcome_always_validates():
    for seed in range(40):
        g = random_digraph(8, 0.45, 4, seed)
        out = solve(g)
        if not out.found:
            continue
        d = shortest_distances(g)
        check = validate_path(g, out.path, d)
        assert check.simple
        assert check.weight == out.weight > d.from_s[g.t]
        assert check.uses_back_edge


def test_deterministic_across_runs_and_threads():
    for seed in (2, 8, 21):
        g = random_digraph(9, 0.5, 5, seed)
        first = solve(g)
        assert first == solve(g)
        assert first == solve(g, threads=4)


def test_matches_oracle_including_none_cases():
    for seed in range(50):
        g = random_digraph(6, 0.35, 2, seed)
        want = exhaustive_next_to_shortest(g)
        got = solve(g)
        assert want.found == got.found
        if want.found:
            assert want.weight == got.weight
