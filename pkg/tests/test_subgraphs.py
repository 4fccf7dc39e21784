import itertools
import random

import pytest

from cyclebalance.graph import SignedDigraph, complete_graph, parse_edge_list
from cyclebalance.subgraphs import (connected_induced_subgraphs,
                                    enumerate_connected_induced_subgraphs)
from _util import random_signed_digraph


def _brute_connected_subsets(g, max_size):
    """All weakly connected vertex subsets, by exhaustive check."""
    found = set()
    for k in range(1, max_size + 1):
        for subset in itertools.combinations(range(g.vertex_count), k):
            inside = set(subset)
            seen = {subset[0]}
            frontier = [subset[0]]
            while frontier:
                v = frontier.pop()
                for w in g.undirected_neighbours(v):
                    if w in inside and w not in seen:
                        seen.add(w)
                        frontier.append(w)
            if seen == inside:
                found.add(subset)
    return found


def test_path_graph_example():
    path = parse_edge_list("0 1 1\n1 2 1", undirected=True)
    visits = list(connected_induced_subgraphs(path, 3))
    got = sorted(tuple(sorted(v.vertices)) for v in visits)
    assert got == [(0,), (0, 1), (0, 1, 2), (1,), (1, 2), (2,)]


def test_complete_graph_all_subsets():
    k4 = complete_graph(4)
    assert enumerate_connected_induced_subgraphs(k4, 4) == 2 ** 4 - 1


def test_directed_chain_weak_connectivity():
    chain = parse_edge_list("0 1 1\n1 2 1")
    got = sorted(tuple(sorted(v.vertices))
                 for v in connected_induced_subgraphs(chain, 2))
    assert got == [(0,), (0, 1), (1,), (1, 2), (2,)]


def test_neighbour_counts_match_definition(rng):
    for _ in range(30):
        g = random_signed_digraph(rng, max_vertices=8, edge_prob=0.35)
        for visit in connected_induced_subgraphs(g, g.vertex_count):
            assert visit.neighbour_count == len(g.neighbourhood(visit.vertices))


def test_each_subgraph_visited_exactly_once(rng):
    for _ in range(25):
        g = random_signed_digraph(rng, max_vertices=9, edge_prob=0.3)
        max_size = rng.randint(1, g.vertex_count)
        seen = [tuple(sorted(v.vertices))
                for v in connected_induced_subgraphs(g, max_size)]
        assert len(seen) == len(set(seen))
        assert set(seen) == _brute_connected_subsets(g, max_size)


def test_empty_graph_yields_nothing():
    g = SignedDigraph(0, {})
    assert enumerate_connected_induced_subgraphs(g, 3) == 0


def test_max_size_validation():
    with pytest.raises(ValueError):
        enumerate_connected_induced_subgraphs(complete_graph(3), 0)


def test_sparse_count_respects_degree_bound():
    # visit count <= N * Delta^l / ((Delta-1) l^2) * safety slack, Delta >= 2
    rng = random.Random(5)
    for _ in range(10):
        g = random_signed_digraph(rng, max_vertices=12, edge_prob=0.18,
                                  undirected=True)
        delta = max((len(g.undirected_neighbours(v))
                     for v in range(g.vertex_count)), default=0)
        if delta < 2:
            continue
        ell = 5
        count = enumerate_connected_induced_subgraphs(g, ell)
        bound = g.vertex_count * delta ** ell / ((delta - 1) * ell ** 2)
        assert count <= 40 * bound


def test_deterministic_order(rng):
    g = random_signed_digraph(rng, max_vertices=8, edge_prob=0.4)
    first = [v.vertices for v in connected_induced_subgraphs(g, 4)]
    second = [v.vertices for v in connected_induced_subgraphs(g, 4)]
    assert first == second
