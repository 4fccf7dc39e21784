import numpy as np
import pytest

from cyclebalance.engine import cycle_census
from cyclebalance.graph import SignedDigraph, complete_graph, parse_edge_list
from cyclebalance.montecarlo import (MonteCarloConfig, convergence_loop,
                                     run_monte_carlo,
                                     sample_connected_vertex_set)
from _util import random_signed_digraph

TRIAD = parse_edge_list("0 1 1\n0 2 1\n1 2 -1", undirected=True)


def test_config_validation():
    with pytest.raises(ValueError):
        MonteCarloConfig(0, 2, 5, 5)
    with pytest.raises(ValueError):
        MonteCarloConfig(1, 1, 5, 5)
    with pytest.raises(ValueError):
        MonteCarloConfig(1, 2, 4, 5)   # sample_size < max_length
    with pytest.raises(ValueError):
        MonteCarloConfig(1, 2, 5, 5, aggregation="median")


def test_snowball_forced_path():
    rng = np.random.default_rng(1)
    path = parse_edge_list("0 1 1\n1 2 1", undirected=True)
    vs, short = sample_connected_vertex_set(path, rng, 3)
    assert vs == (0, 1, 2) and not short


def test_snowball_short_component():
    rng = np.random.default_rng(2)
    g = parse_edge_list("0 1 1\n1 0 1\n2 3 1\n3 2 1")
    vs, short = sample_connected_vertex_set(g, rng, 4)
    assert short and len(vs) == 2


def test_snowball_connected_and_sized(rng):
    for _ in range(25):
        g = random_signed_digraph(rng, max_vertices=12, edge_prob=0.25)
        if g.vertex_count == 0:
            continue
        gen = np.random.default_rng(rng.randint(0, 2**32))
        size = rng.randint(1, g.vertex_count)
        vs, short = sample_connected_vertex_set(g, gen, size)
        assert len(vs) <= size
        if not short:
            assert len(vs) == size
        sub, _ = g.induced_subgraph(vs)
        # weak connectivity check by traversal
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in sub.undirected_neighbours(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        assert len(seen) == sub.vertex_count


def test_snowball_deterministic():
    g = complete_graph(10)
    a, _ = sample_connected_vertex_set(g, np.random.default_rng(42), 5)
    b, _ = sample_connected_vertex_set(g, np.random.default_rng(42), 5)
    assert a == b and len(a) == 5


def test_run_reproducible_and_worker_independent():
    g = parse_edge_list(
        "0 1 1\n1 2 -1\n2 3 1\n3 4 -1\n4 0 1\n1 3 1\n0 2 -1", undirected=True)
    cfg = MonteCarloConfig(6, 3, 4, 4, master_seed=11)
    r1 = run_monte_carlo(g, cfg)
    r2 = run_monte_carlo(g, cfg)
    r3 = run_monte_carlo(g, cfg, workers=2)
    key = lambda rep: [(r.estimate, r.stderr, r.cycles_found) for r in rep.rows]
    assert key(r1) == key(r2) == key(r3)


def test_full_coverage_equals_exact():
    cfg = MonteCarloConfig(5, 2, 3, 3, master_seed=3)
    rep = run_monte_carlo(TRIAD, cfg)
    exact = cycle_census(TRIAD, 3)
    assert rep.row(2).estimate == 0.0
    assert rep.row(2).stderr == 0.0
    assert rep.row(3).estimate == exact.n_neg(3) / exact.total(3) == 1.0


def test_all_positive_zero_variance():
    g = complete_graph(6)
    cfg = MonteCarloConfig(4, 3, 4, 4, master_seed=5)
    rep = run_monte_carlo(g, cfg)
    for ell in (2, 3, 4):
        assert rep.row(ell).estimate == 0.0
        assert rep.row(ell).stderr == 0.0


def test_unobserved_lengths_undefined():
    cfg = MonteCarloConfig(3, 2, 3, 3, master_seed=1)
    g = parse_edge_list("0 1 1\n1 0 1\n1 2 1\n2 1 1")  # path: no 3-cycles
    rep = run_monte_carlo(g, cfg)
    assert rep.row(3).estimate is None
    assert rep.row(3).cycles_found == 0


def test_aggregation_modes_differ_sensibly():
    g = parse_edge_list(
        "0 1 1\n1 2 -1\n2 0 1\n2 3 1\n3 4 1\n4 2 1", undirected=True)
    pooled = run_monte_carlo(g, MonteCarloConfig(8, 3, 3, 3, 7, "pooled"))
    mean = run_monte_carlo(g, MonteCarloConfig(8, 3, 3, 3, 7, "mean-of-ratios"))
    for rep in (pooled, mean):
        r = rep.row(3).estimate
        if r is not None:
            assert 0.0 <= r <= 1.0


def test_pooled_estimates_in_unit_interval(rng):
    for _ in range(5):
        g = random_signed_digraph(rng, max_vertices=12, edge_prob=0.3,
                                  undirected=True)
        if g.edge_count == 0:
            continue
        cfg = MonteCarloConfig(4, 2, 4, 4, master_seed=rng.randint(0, 999))
        rep = run_monte_carlo(g, cfg)
        for row in rep.rows:
            if row.estimate is not None:
                assert 0.0 <= row.estimate <= 1.0


def test_progress_hook_called():
    calls = []
    cfg = MonteCarloConfig(2, 3, 3, 3, master_seed=0)
    run_monte_carlo(TRIAD, cfg, progress=lambda done, snap: calls.append(done))
    assert calls == [2, 4, 6]


def test_convergence_loop_immediate():
    cfg = MonteCarloConfig(4, 2, 3, 3, master_seed=2)
    rep = convergence_loop(TRIAD, cfg, target=0.5, cap=1000)
    assert not rep.failed_lengths
    assert set(rep.converged_lengths) == {2, 3}


def test_convergence_loop_cap_flags_partial(rng):
    g = random_signed_digraph(rng, max_vertices=14, edge_prob=0.3,
                              undirected=True)
    cfg = MonteCarloConfig(2, 2, 4, 4, master_seed=4)
    rep = convergence_loop(g, cfg, target=1e-9, cap=8)
    assert rep.total_samples >= 4
    # with such a tiny target something must usually fail to converge;
    # accept either outcome but require the flags to be consistent
    defined = {r.length for r in rep.rows if r.estimate is not None}
    assert set(rep.converged_lengths) | set(rep.failed_lengths) == defined
