"""Enumeration of weakly connected induced subgraphs up to a size bound.

Uses the exclusive-neighbourhood extension scheme (as in the ESU / reverse
search family): subgraphs are grown from their minimum vertex, and a vertex
may only be added the first time it becomes reachable, so every connected
vertex set is produced exactly once.  Orientation is erased for connectivity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .graph import SignedDigraph

__all__ = ["SubgraphVisit", "connected_induced_subgraphs",
           "enumerate_connected_induced_subgraphs"]


@dataclass(frozen=True)
class SubgraphVisit:
    """One weakly connected induced subgraph H and its neighbour count |N(H)|."""

    vertices: tuple[int, ...]
    neighbour_count: int


def connected_induced_subgraphs(g: SignedDigraph, max_size: int
                                ) -> Iterator[SubgraphVisit]:
    """Yield every weakly connected induced vertex set with 1 <= |H| <= max_size.

    Deterministic order: roots ascend, and extensions are tried in
    ascending vertex id.  The neighbour count is |N(H)|: vertices outside H
    with at least one edge (either direction) into H.
    """
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    adj = g._und  # orientation-erased adjacency, sorted lists

    for root in range(g.vertex_count):
        sub = [root]
        # neighbourhood of the current sub as a set, maintained incrementally
        nbhd = set(adj[root])
        ext = [v for v in adj[root] if v > root]
        yield SubgraphVisit((root,), len(nbhd))
        if max_size == 1:
            continue
        # stack entries: (extension list, index into it, vertex added, saved nbhd adds)
        yield from _extend(g, adj, root, sub, nbhd, ext, max_size)


def _extend(g, adj, root, sub, nbhd, ext, max_size):
    """Depth-first extension; sub/nbhd are mutated and restored in place."""
    for i, u in enumerate(ext):
        sub.append(u)
        added = [w for w in adj[u] if w not in nbhd and w not in sub]
        nbhd.update(added)
        nbhd.discard(u)
        # vertices first reachable through u, eligible as future extensions
        new_ext = ext[i + 1:] + [w for w in added if w > root]
        yield SubgraphVisit(tuple(sub), len(nbhd))
        if len(sub) < max_size:
            yield from _extend(g, adj, root, sub, nbhd, new_ext, max_size)
        sub.pop()
        nbhd.difference_update(added)
        nbhd.add(u)


def enumerate_connected_induced_subgraphs(
        g: SignedDigraph, max_size: int,
        visitor: Callable[[SubgraphVisit], None] | None = None) -> int:
    """Invoke ``visitor`` once per connected induced subgraph; return the count."""
    count = 0
    for visit in connected_induced_subgraphs(g, max_size):
        count += 1
        if visitor is not None:
            visitor(visit)
    return count
