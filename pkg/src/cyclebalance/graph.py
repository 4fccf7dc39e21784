"""Signed directed graph representation and edge-list ingestion.

Edges carry a weight of +1 (amity) or -1 (enmity).  An undirected network is
stored as its symmetrized directed form: every undirected edge contributes
both orientations with equal sign.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "GraphError",
    "ParseError",
    "SignConflictError",
    "SignedDigraph",
    "load_edge_list",
    "parse_edge_list",
]


class GraphError(ValueError):
    """Invalid graph construction or query."""


class ParseError(GraphError):
    """Malformed edge-list input; carries the offending line number."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class SignConflictError(GraphError):
    """The same vertex pair appears with both signs."""


_SIGN_TOKENS = {
    "1": 1, "+1": 1, "+": 1,
    "-1": -1, "-": -1, "−1": -1, "−": -1,
}


@dataclass(frozen=True)
class SignedDigraph:
    """Immutable signed directed graph with dense integer vertex ids.

    ``edges`` maps (source, target) -> sign.  ``from_undirected`` records
    that the graph was built by symmetrizing an undirected edge list, in
    which case (u, v) is present iff (v, u) is, with the same sign.
    """

    vertex_count: int
    edges: Mapping[tuple[int, int], int]
    from_undirected: bool = False
    vertex_labels: tuple[str, ...] | None = None
    _out: dict[int, list[int]] = field(init=False, repr=False, compare=False)
    _in: dict[int, list[int]] = field(init=False, repr=False, compare=False)
    _und: dict[int, list[int]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise GraphError("vertex_count must be nonnegative")
        out: dict[int, list[int]] = {v: [] for v in range(n)}
        inc: dict[int, list[int]] = {v: [] for v in range(n)}
        und: dict[int, set[int]] = {v: set() for v in range(n)}
        for (u, v), s in self.edges.items():
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) references unknown vertex")
            if s not in (1, -1):
                raise GraphError(f"edge ({u}, {v}) has sign {s}, expected +1 or -1")
            out[u].append(v)
            inc[v].append(u)
            if u != v:
                und[u].add(v)
                und[v].add(u)
        if self.from_undirected:
            for (u, v), s in self.edges.items():
                if self.edges.get((v, u)) != s:
                    raise GraphError(
                        f"graph flagged undirected but ({u}, {v}) lacks a "
                        f"matching reverse edge of equal sign"
                    )
        for adj in out.values():
            adj.sort()
        for adj in inc.values():
            adj.sort()
        object.__setattr__(self, "_out", out)
        object.__setattr__(self, "_in", inc)
        object.__setattr__(self, "_und", {v: sorted(s) for v, s in und.items()})

    # -- basic queries ----------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sign(self, u: int, v: int) -> int:
        """Sign of directed edge (u, v), or 0 if absent."""
        return self.edges.get((u, v), 0)

    def out_neighbours(self, v: int) -> list[int]:
        return self._out[v]

    def in_neighbours(self, v: int) -> list[int]:
        return self._in[v]

    def undirected_neighbours(self, v: int) -> list[int]:
        """Vertices joined to v by an edge in either direction (loops excluded)."""
        return self._und[v]

    def has_self_loops(self) -> bool:
        return any(u == v for u, v in self.edges)

    def negative_edge_fraction(self) -> float:
        """Fraction p of negative directed edges. Errors on an empty edge set."""
        if not self.edges:
            raise GraphError("graph has no edges; negative fraction undefined")
        neg = sum(1 for s in self.edges.values() if s < 0)
        return neg / len(self.edges)

    # -- matrix views ------------------------------------------------------

    def adjacency(self, signed: bool = True, strip_loops: bool = False,
                  dtype=np.int64) -> np.ndarray:
        """Dense adjacency matrix A (signed) or |A| (unsigned).

        ``strip_loops`` zeroes the diagonal, giving A - Diag(A).
        """
        a = np.zeros((self.vertex_count, self.vertex_count), dtype=dtype)
        for (u, v), s in self.edges.items():
            a[u, v] = s if signed else abs(s)
        if strip_loops:
            np.fill_diagonal(a, 0)
        return a

    # -- derived graphs ----------------------------------------------------

    def symmetrize(self) -> "SignedDigraph":
        """Add the reverse of every edge; errors if (u,v) and (v,u) disagree."""
        new_edges: dict[tuple[int, int], int] = {}
        for (u, v), s in self.edges.items():
            back = self.edges.get((v, u))
            if back is not None and back != s:
                raise SignConflictError(
                    f"edges ({u}, {v}) and ({v}, {u}) carry opposite signs"
                )
            new_edges[(u, v)] = s
            new_edges[(v, u)] = s
        return SignedDigraph(self.vertex_count, new_edges,
                             from_undirected=True,
                             vertex_labels=self.vertex_labels)

    def without_self_loops(self) -> "SignedDigraph":
        """Graph on the same vertices with diagonal edges removed."""
        kept = {(u, v): s for (u, v), s in self.edges.items() if u != v}
        return SignedDigraph(self.vertex_count, kept,
                             from_undirected=self.from_undirected,
                             vertex_labels=self.vertex_labels)

    def induced_subgraph(self, vertices: Sequence[int]
                         ) -> tuple["SignedDigraph", list[int]]:
        """Induced subgraph on ``vertices`` plus the local->global id map."""
        order = list(dict.fromkeys(vertices))
        for v in order:
            if not (0 <= v < self.vertex_count):
                raise GraphError(f"vertex {v} not in graph")
        local = {g: i for i, g in enumerate(order)}
        sub: dict[tuple[int, int], int] = {}
        for g in order:
            lu = local[g]
            if (g, g) in self.edges:
                sub[(lu, lu)] = self.edges[(g, g)]
            for h in self._out[g]:
                if h != g and h in local:
                    sub[(lu, local[h])] = self.edges[(g, h)]
        return (SignedDigraph(len(order), sub,
                              from_undirected=self.from_undirected),
                order)

    def neighbourhood(self, vertices: Iterable[int]) -> list[int]:
        """Vertices outside the set touching it by an edge in either direction."""
        inside = set(vertices)
        for v in inside:
            if not (0 <= v < self.vertex_count):
                raise GraphError(f"vertex {v} not in graph")
        seen: set[int] = set()
        for v in inside:
            for w in self._out[v]:
                if w not in inside:
                    seen.add(w)
            for w in self._in[v]:
                if w not in inside:
                    seen.add(w)
        return sorted(seen)

    def relabel(self, permutation: Sequence[int]) -> "SignedDigraph":
        """Apply a vertex permutation (new id = permutation[old id])."""
        if sorted(permutation) != list(range(self.vertex_count)):
            raise GraphError("permutation must be a bijection on vertex ids")
        edges = {(permutation[u], permutation[v]): s
                 for (u, v), s in self.edges.items()}
        return SignedDigraph(self.vertex_count, edges,
                             from_undirected=self.from_undirected)

    def to_edge_list(self) -> str:
        """Serialize as 'src dst sign' lines (sorted, round-trip stable)."""
        lines = [f"{u} {v} {s:+d}" for (u, v), s in sorted(self.edges.items())]
        return "\n".join(lines) + ("\n" if lines else "")


def parse_edge_list(text: str, *, undirected: bool = False,
                    duplicate_policy: str = "reject") -> SignedDigraph:
    """Parse 'src dst sign' lines into a SignedDigraph.

    Lines starting with '#' and blank lines are skipped.  Vertex ids may be
    arbitrary integer or string tokens; they are remapped to dense ids in
    first-appearance order and the original tokens kept as labels.

    duplicate_policy: 'reject' errors on sign conflicts, 'last' keeps the
    latest occurrence.  Identical duplicates always collapse silently.
    """
    if duplicate_policy not in ("reject", "last"):
        raise GraphError(f"unknown duplicate policy {duplicate_policy!r}")
    ids: dict[str, int] = {}
    raw: dict[tuple[int, int], tuple[int, int]] = {}  # pair -> (sign, line no)
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 3:
            raise ParseError(f"expected 'src dst sign', got {stripped!r}", lineno)
        su, sv, stok = parts
        sign = _SIGN_TOKENS.get(stok)
        if sign is None:
            raise ParseError(f"sign token {stok!r} not in +1/-1", lineno)
        u = ids.setdefault(su, len(ids))
        v = ids.setdefault(sv, len(ids))
        prev = raw.get((u, v))
        if prev is not None and prev[0] != sign:
            if duplicate_policy == "reject":
                raise ParseError(
                    f"edge {su}->{sv} conflicts with sign given on line {prev[1]}",
                    lineno,
                )
        raw[(u, v)] = (sign, lineno)
        if undirected:
            prev = raw.get((v, u))
            if prev is not None and prev[0] != sign:
                if duplicate_policy == "reject":
                    raise ParseError(
                        f"edge {sv}->{su} conflicts with sign given on line {prev[1]}",
                        lineno,
                    )
            raw[(v, u)] = (sign, lineno)
    labels = tuple(sorted(ids, key=ids.get))
    edges = {pair: sign for pair, (sign, _) in raw.items()}
    return SignedDigraph(len(ids), edges, from_undirected=undirected,
                         vertex_labels=labels or None)


def load_edge_list(path, *, undirected: bool = False,
                   duplicate_policy: str = "reject") -> SignedDigraph:
    """Read an edge-list file (SNAP soc-sign layout: FromNodeId ToNodeId Sign)."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read(), undirected=undirected,
                               duplicate_policy=duplicate_policy)


def complete_graph(n: int, sign: int = 1) -> SignedDigraph:
    """Complete directed graph on n vertices (both orientations, no loops)."""
    edges = {(u, v): sign for u in range(n) for v in range(n) if u != v}
    return SignedDigraph(n, edges, from_undirected=True)
