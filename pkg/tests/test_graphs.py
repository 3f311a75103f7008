import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pentgeom.core import PentError, RegularGraph, SearchFailed
from pentgeom.graphs import (
    GraphGenParams,
    complement,
    complete_graph,
    components,
    cycle_graph,
    girth,
    hoffman_singleton,
    is_connected,
    petersen,
    random_regular_girth,
    regularity_degree,
    shift_automorphism,
)
from pentgeom.params import PreconditionViolated


def brute_girth(g: RegularGraph) -> float:
    # Shortest cycle via BFS from every vertex, written independently.
    best = float("inf")
    for s in range(g.v):
        dist = {s: 0}
        parent = {s: -1}
        queue = [s]
        for x in queue:
            for y in g.adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def test_petersen():
    g = petersen()
    assert g.v == 10 and regularity_degree(g) == 3 and girth(g) == 5 and g.edge_count == 15


def test_hoffman_singleton():
    g = hoffman_singleton()
    assert g.v == 50 and regularity_degree(g) == 7 and girth(g) == 5 and g.edge_count == 175
    assert is_connected(g)


@given(st.integers(3, 40))
def test_cycle_girth(n):
    assert girth(cycle_graph(n)) == n


def test_complete_graph_girth_and_complement():
    assert girth(complete_graph(5)) == 3
    assert complement(complete_graph(5)).edge_count == 0
    assert girth(RegularGraph.from_edges(4, [])) == float("inf")


def test_components():
    g = RegularGraph.from_edges(6, [(0, 1), (1, 2), (3, 4)])
    assert sorted(map(sorted, components(g))) == [[0, 1, 2], [3, 4], [5]]
    assert not is_connected(g)


def test_shift_automorphism():
    assert shift_automorphism(cycle_graph(7)) == 1
    assert shift_automorphism(petersen()) is None or petersen().v % shift_automorphism(petersen()) == 0


@pytest.mark.parametrize("v,w", [(10, 3), (74, 7), (124, 9)])
def test_random_regular_girth(v, w):
    g = random_regular_girth(GraphGenParams(v, w, 5, seed=1))
    assert g.v == v and regularity_degree(g) == w
    assert girth(g) >= 5 and brute_girth(g) == girth(g)
    assert is_connected(g)


def test_random_regular_girth_deterministic():
    a = random_regular_girth(GraphGenParams(74, 7, 5, seed=3))
    b = random_regular_girth(GraphGenParams(74, 7, 5, seed=3))
    assert a == b


def test_lift_has_shift():
    g = random_regular_girth(GraphGenParams(74, 7, 5, seed=2, orbits=2))
    assert shift_automorphism(g) in (1, 2)


def test_swap_repair_small():
    g = random_regular_girth(GraphGenParams(30, 3, 5, seed=1, orbits=1))
    assert regularity_degree(g) == 3 and girth(g) >= 5


def test_below_moore_bound_rejected():
    with pytest.raises(PreconditionViolated):
        random_regular_girth(GraphGenParams(48, 7, 5))


def test_moore_bound_search_fails():
    with pytest.raises(SearchFailed) as info:
        random_regular_girth(GraphGenParams(50, 7, 5, seed=1, max_attempts=2))
    assert info.value.diagnostics["attempts"] == 2


def test_params_validation():
    with pytest.raises(PentError):
        GraphGenParams(11, 3)
    with pytest.raises(PentError):
        GraphGenParams(74, 7, orbits=3)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_generated_girth_matches_brute_force(seed):
    g = random_regular_girth(GraphGenParams(30, 3, 5, seed=seed))
    assert brute_girth(g) == girth(g) >= 5
