"""Uncorrelated-signs null hypothesis, sign-shuffle null, correlation fit.

Under independent edge signs with negative probability p, a length-l cycle
is negative iff it carries an odd number of negative edges; the binomial sum
has the closed form (1 - (1-2p)^l) / 2, kept as an internal cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .engine import BalanceRow, BalanceTable, balance_table, cycle_census
from .graph import SignedDigraph

__all__ = [
    "NullBandRow",
    "null_ratio",
    "null_band",
    "shuffle_null",
    "CorrelationFit",
    "fit_correlation_length",
    "model_ratio",
]


@dataclass(frozen=True)
class NullBandRow:
    length: int
    ratio: float            # expected negative fraction under the null
    lower: float
    upper: float
    total_cycles: int


def null_ratio(p: float, length: int) -> float:
    """Probability that a length-l cycle is negative under independent signs."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if length < 1:
        raise ValueError("length must be >= 1")
    total = 0.0
    for i in range(math.ceil(length / 2)):
        k = 2 * i + 1
        total += math.comb(length, k) * p ** k * (1 - p) ** (length - k)
    return total


def null_ratio_closed_form(p: float, length: int) -> float:
    return (1.0 - (1.0 - 2.0 * p) ** length) / 2.0


def null_band(p: float, length: int, total_cycles: int) -> NullBandRow:
    """Two-sigma binomial confidence band around the null ratio, clamped."""
    if total_cycles < 1:
        raise ValueError("need at least one cycle for a defined band")
    r = null_ratio(p, length)
    half = 2.0 * math.sqrt(r * (1.0 - r)) / math.sqrt(total_cycles)
    return NullBandRow(length, r, max(0.0, r - half), min(1.0, r + half),
                       total_cycles)


def _shuffled_graph(g: SignedDigraph, rng: np.random.Generator) -> SignedDigraph:
    """Permute the existing signs over edge slots, preserving counts exactly.

    For symmetrized graphs, signs are permuted over undirected slots and
    mirrored, keeping the graph a valid undirected network.
    """
    if g.from_undirected:
        slots = sorted({(u, v) for (u, v) in g.edges if u <= v})
        signs = [g.edges[s] for s in slots]
        perm = rng.permutation(len(signs))
        edges = {}
        for slot, k in zip(slots, perm):
            s = signs[int(k)]
            u, v = slot
            edges[(u, v)] = s
            edges[(v, u)] = s
        return SignedDigraph(g.vertex_count, edges, from_undirected=True,
                             vertex_labels=g.vertex_labels)
    slots = sorted(g.edges)
    signs = [g.edges[s] for s in slots]
    perm = rng.permutation(len(signs))
    edges = {slot: signs[int(k)] for slot, k in zip(slots, perm)}
    return SignedDigraph(g.vertex_count, edges, from_undirected=False,
                         vertex_labels=g.vertex_labels)


@dataclass(frozen=True)
class ShuffleNullResult:
    mean: BalanceTable                 # per-length mean of shuffle ratios
    spread: dict[int, float | None]    # 2 * std of ratios across shuffles
    shuffles: int


def shuffle_null(g: SignedDigraph, max_length: int, shuffles: int,
                 seed: int = 0) -> ShuffleNullResult:
    """Empirical null: average exact balance ratios over sign shuffles."""
    if shuffles < 1:
        raise ValueError("need at least one shuffle")
    per_length: dict[int, list[float]] = {l: [] for l in range(1, max_length + 1)}
    counts: dict[int, tuple[int, int]] = {l: (0, 0) for l in range(1, max_length + 1)}
    for k in range(shuffles):
        rng = np.random.default_rng([seed, k])
        shuffled = _shuffled_graph(g, rng)
        census = cycle_census(shuffled, max_length)
        for l in range(1, max_length + 1):
            tot = census.total(l)
            if tot:
                per_length[l].append(census.n_neg(l) / tot)
            p0, n0 = counts[l]
            counts[l] = (p0 + census.n_pos(l), n0 + census.n_neg(l))
    rows = []
    spread: dict[int, float | None] = {}
    for l in range(1, max_length + 1):
        vals = per_length[l]
        p_sum, n_sum = counts[l]
        if not vals:
            rows.append(BalanceRow(l, p_sum, n_sum, None, None, None))
            spread[l] = None
            continue
        mean = sum(vals) / len(vals)
        u = mean / (1.0 - mean) if mean < 1.0 else math.inf
        rows.append(BalanceRow(l, p_sum, n_sum, mean, u, 1.0 - 2.0 * mean))
        if len(vals) >= 2:
            var = sum((v - mean) ** 2 for v in vals) / (len(vals) - 1)
            spread[l] = 2.0 * math.sqrt(var)
        else:
            spread[l] = None
    return ShuffleNullResult(BalanceTable(tuple(rows)), spread, shuffles)


@dataclass(frozen=True)
class CorrelationFit:
    xi: float                  # correlation length (may be inf/0 markers)
    two_xi: float
    fit_lengths: tuple[int, ...]
    residual: float
    boundary: bool             # hit the optimizer bounds


def model_ratio(length: int, xi: float) -> float:
    """Exponential saturation model for the negative-cycle fraction."""
    return 1.0 - math.exp(-(length - 2) / (2.0 * xi))


def default_fit_range(table: BalanceTable, threshold: float = 0.45
                      ) -> list[int]:
    """Lengths 3..l*, where l* is the last length before R first reaches 0.45."""
    lengths = []
    for row in table.rows:
        if row.length < 3 or row.ratio_negative is None:
            continue
        if float(row.ratio_negative) >= threshold:
            break
        lengths.append(row.length)
    return lengths


def fit_correlation_length(table: BalanceTable,
                           lengths: list[int] | None = None,
                           xi_bounds: tuple[float, float] = (1e-3, 1e3)
                           ) -> CorrelationFit:
    """Least-squares fit of the exponential model over the chosen lengths.

    One-dimensional bounded minimization on xi to 1e-6.  Degenerate inputs
    are mapped to boundary markers: all-zero ratios give xi = +inf (no decay
    visible), all-one ratios give xi -> 0.
    """
    if lengths is None:
        lengths = default_fit_range(table)
    pts = [(row.length, float(row.ratio_negative))
           for row in table.rows
           if row.length in set(lengths) and row.ratio_negative is not None]
    if len(pts) < 2:
        raise ValueError("need at least two defined ratios to fit")
    if all(r == 0.0 for _, r in pts):
        return CorrelationFit(math.inf, math.inf,
                              tuple(l for l, _ in pts), 0.0, True)
    if all(r == 1.0 for _, r in pts):
        # saturated balance ratios: the model approaches them only as xi -> 0
        return CorrelationFit(0.0, 0.0, tuple(l for l, _ in pts), 0.0, True)

    def loss(xi: float) -> float:
        return sum((r - model_ratio(l, xi)) ** 2 for l, r in pts)

    res = minimize_scalar(loss, bounds=xi_bounds, method="bounded",
                          options={"xatol": 1e-6})
    xi = float(res.x)
    boundary = xi <= xi_bounds[0] * 1.01 or xi >= xi_bounds[1] * 0.99
    return CorrelationFit(xi, 2.0 * xi, tuple(l for l, _ in pts),
                          float(res.fun), boundary)
