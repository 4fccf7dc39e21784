"""Monte Carlo estimation of balance ratios on large networks.

Connected vertex sets are drawn by seeded snowball expansion, the exact
engine counts signed cycles on each induced subgraph, and batch means give
the estimate and its spread.  Every sample's random stream is derived from
(master_seed, round, batch, sample), so results are bit-identical for a
given configuration regardless of worker count or scheduling.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .engine import cycle_census
from .graph import GraphError, SignedDigraph

__all__ = [
    "MonteCarloConfig",
    "MonteCarloRow",
    "MonteCarloReport",
    "sample_connected_vertex_set",
    "run_monte_carlo",
    "convergence_loop",
]

AGGREGATIONS = ("pooled", "mean-of-ratios")


@dataclass(frozen=True)
class MonteCarloConfig:
    samples_per_batch: int
    batches: int
    sample_size: int
    max_length: int
    master_seed: int = 0
    aggregation: str = "pooled"

    def __post_init__(self):
        if self.samples_per_batch < 1:
            raise ValueError("samples_per_batch must be >= 1")
        if self.batches < 2:
            raise ValueError("need >= 2 batches for a defined deviation")
        if self.sample_size < self.max_length:
            raise ValueError(
                f"sample_size {self.sample_size} < max_length "
                f"{self.max_length}: a length-l cycle needs l vertices"
            )
        if self.aggregation not in AGGREGATIONS:
            raise ValueError(f"aggregation must be one of {AGGREGATIONS}")


@dataclass(frozen=True)
class MonteCarloRow:
    length: int
    estimate: float | None       # mean over defined batch means
    stderr: float | None         # 2 * std(batch means) / sqrt(batches used)
    cycles_found: int            # total cycles of this length over all samples
    batches_used: int


@dataclass(frozen=True)
class MonteCarloReport:
    config: MonteCarloConfig
    rows: tuple[MonteCarloRow, ...]
    short_samples: int           # samples truncated by a small component
    wall_time_s: float
    converged_lengths: tuple[int, ...] = ()
    failed_lengths: tuple[int, ...] = ()
    total_samples: int = 0

    def row(self, length: int) -> MonteCarloRow:
        for r in self.rows:
            if r.length == length:
                return r
        raise KeyError(length)


def sample_connected_vertex_set(g: SignedDigraph, rng: np.random.Generator,
                                size: int) -> tuple[tuple[int, ...], bool]:
    """Snowball sample: uniform seed vertex, then uniform neighbourhood grows.

    Returns (vertices, short) where short means the component was exhausted
    before reaching the requested size.
    """
    if g.vertex_count == 0:
        raise GraphError("cannot sample from an empty graph")
    seed = int(rng.integers(g.vertex_count))
    chosen = [seed]
    inside = {seed}
    # frontier is exactly the neighbourhood N(H): distinct outside vertices
    frontier = list(g.undirected_neighbours(seed))
    in_frontier = set(frontier)
    while len(chosen) < size and frontier:
        pick = int(rng.integers(len(frontier)))
        v = frontier[pick]
        frontier[pick] = frontier[-1]
        frontier.pop()
        in_frontier.discard(v)
        inside.add(v)
        chosen.append(v)
        for w in g.undirected_neighbours(v):
            if w not in inside and w not in in_frontier:
                frontier.append(w)
                in_frontier.add(w)
    short = len(chosen) < size
    return tuple(sorted(chosen)), short


def _sample_rng(master_seed: int, round_index: int, batch: int, sample: int
                ) -> np.random.Generator:
    return np.random.default_rng([master_seed, round_index, batch, sample])


# worker-process state for the process pool
_POOL_GRAPH: SignedDigraph | None = None


def _pool_init(g: SignedDigraph):
    global _POOL_GRAPH
    _POOL_GRAPH = g


def _pool_task(args):
    master_seed, round_index, batch, sample, size, max_length = args
    return _one_sample(_POOL_GRAPH, master_seed, round_index, batch, sample,
                       size, max_length)


def _one_sample(g, master_seed, round_index, batch, sample, size, max_length):
    rng = _sample_rng(master_seed, round_index, batch, sample)
    vs, short = sample_connected_vertex_set(g, rng, size)
    sub, _ = g.induced_subgraph(vs)
    census = cycle_census(sub, max_length)
    return census.positive, census.negative, short


def _batch_ratio(agg: str, pos_sums, neg_sums, per_sample) -> list[float | None]:
    """Per-length batch means under the configured aggregation."""
    out: list[float | None] = []
    for ell_idx in range(len(pos_sums)):
        if agg == "pooled":
            tot = pos_sums[ell_idx] + neg_sums[ell_idx]
            out.append(None if tot == 0 else neg_sums[ell_idx] / tot)
        else:
            vals = [n / (p + n) for p, n in per_sample[ell_idx] if p + n > 0]
            out.append(None if not vals else sum(vals) / len(vals))
    return out


def run_monte_carlo(g: SignedDigraph, cfg: MonteCarloConfig, *,
                    workers: int = 1,
                    progress: Callable[[int, dict], None] | None = None,
                    round_index: int = 0) -> MonteCarloReport:
    """Draw batches of snowball samples and aggregate exact per-sample censuses.

    The estimate per length is the mean of defined batch ratios; the reported
    uncertainty is twice the standard deviation of batch means over
    sqrt(#batches used).
    """
    t0 = time.perf_counter()
    L = cfg.max_length
    tasks = [(cfg.master_seed, round_index, b, s, cfg.sample_size, L)
             for b in range(cfg.batches) for s in range(cfg.samples_per_batch)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers, initializer=_pool_init,
                                 initargs=(g,)) as pool:
            results = list(pool.map(_pool_task, tasks,
                                    chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        results = [_one_sample(g, *t) for t in tasks]

    short_samples = sum(1 for _, _, short in results if short)
    batch_means: list[list[float | None]] = []
    cycles_found = [0] * L
    idx = 0
    for b in range(cfg.batches):
        pos_sums = [0] * L
        neg_sums = [0] * L
        per_sample: list[list[tuple[int, int]]] = [[] for _ in range(L)]
        for s in range(cfg.samples_per_batch):
            pos, neg, _ = results[idx]
            idx += 1
            for k in range(L):
                pos_sums[k] += pos[k]
                neg_sums[k] += neg[k]
                per_sample[k].append((pos[k], neg[k]))
        for k in range(L):
            cycles_found[k] += pos_sums[k] + neg_sums[k]
        batch_means.append(_batch_ratio(cfg.aggregation, pos_sums, neg_sums,
                                        per_sample))
        if progress is not None:
            progress((b + 1) * cfg.samples_per_batch,
                     _stderr_snapshot(batch_means, L))

    rows = []
    for k in range(L):
        means = [bm[k] for bm in batch_means if bm[k] is not None]
        if not means:
            rows.append(MonteCarloRow(k + 1, None, None, cycles_found[k], 0))
            continue
        est = sum(means) / len(means)
        if len(means) >= 2:
            var = sum((m - est) ** 2 for m in means) / (len(means) - 1)
            stderr = 2.0 * (var ** 0.5) / (len(means) ** 0.5)
        else:
            stderr = None
        rows.append(MonteCarloRow(k + 1, est, stderr, cycles_found[k],
                                  len(means)))
    return MonteCarloReport(
        config=cfg,
        rows=tuple(rows),
        short_samples=short_samples,
        wall_time_s=time.perf_counter() - t0,
        total_samples=len(tasks),
    )


def _stderr_snapshot(batch_means, L) -> dict[int, float | None]:
    snap = {}
    for k in range(L):
        means = [bm[k] for bm in batch_means if bm[k] is not None]
        if len(means) >= 2:
            est = sum(means) / len(means)
            var = sum((m - est) ** 2 for m in means) / (len(means) - 1)
            snap[k + 1] = 2.0 * (var ** 0.5) / (len(means) ** 0.5)
        else:
            snap[k + 1] = None
    return snap


def convergence_loop(g: SignedDigraph, cfg: MonteCarloConfig, target: float,
                     cap: int, *, workers: int = 1,
                     progress: Callable[[int, dict], None] | None = None
                     ) -> MonteCarloReport:
    """Double the per-batch sample count until every length with data has a
    2-sigma half-width below ``target``, or the total sample cap is reached.

    Lengths that never produced a cycle stay undefined and do not block
    convergence; the report lists converged and failed lengths.
    """
    if target <= 0:
        raise ValueError("target must be positive")
    round_index = 0
    total = 0
    current = cfg
    while True:
        report = run_monte_carlo(g, current, workers=workers,
                                 progress=progress, round_index=round_index)
        total += report.total_samples
        defined = [r for r in report.rows if r.estimate is not None]
        pending = [r.length for r in defined
                   if r.stderr is None or r.stderr > target]
        converged = tuple(r.length for r in defined
                          if r.stderr is not None and r.stderr <= target)
        if not pending or total >= cap:
            return replace(report,
                           converged_lengths=converged,
                           failed_lengths=tuple(pending),
                           total_samples=total)
        round_index += 1
        current = replace(current,
                          samples_per_batch=current.samples_per_batch * 2)
