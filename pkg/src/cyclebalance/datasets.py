"""Embedded fixtures and optional dataset download helper.

The triad and tribal-alliance fixtures ship in-package (already symmetrized,
so no --undirected flag is needed).  The large signed social networks are
fetched on demand into a data directory and the tests that need them skip
when they are absent.
"""

from __future__ import annotations

import gzip
import os
import urllib.request
from importlib import resources
from pathlib import Path

from .graph import SignedDigraph, parse_edge_list

__all__ = ["load_triad", "load_gahuku_gama", "fixture_text", "data_dir",
           "snap_path", "fetch_snap", "SNAP_URLS"]

SNAP_URLS = {
    "slashdot": "https://snap.stanford.edu/data/soc-sign-Slashdot090221.txt.gz",
    "epinions": "https://snap.stanford.edu/data/soc-sign-epinions.txt.gz",
}


def fixture_text(name: str) -> str:
    return (resources.files("cyclebalance.data") / name).read_text()


def _marked_undirected(g: SignedDigraph) -> SignedDigraph:
    return SignedDigraph(g.vertex_count, dict(g.edges), from_undirected=True,
                         vertex_labels=g.vertex_labels)


def load_triad() -> SignedDigraph:
    """Three mutually connected vertices, one antagonistic relation."""
    return _marked_undirected(parse_edge_list(fixture_text("triad.tsv")))


def load_gahuku_gama() -> SignedDigraph:
    """Sixteen-tribe signed alliance network (symmetrized edge list)."""
    return _marked_undirected(parse_edge_list(fixture_text("gahuku_gama.tsv")))


def data_dir() -> Path:
    return Path(os.environ.get("CYCLEBALANCE_DATA_DIR", "data"))


def snap_path(name: str) -> Path:
    return data_dir() / f"{name}.tsv"


def fetch_snap(name: str, dest: Path | None = None, timeout: float = 60.0
               ) -> Path:
    """Download and unpack one of the large signed networks.

    Requires network access; the decompressed edge list is written as
    'src dst sign' text compatible with load_edge_list.
    """
    if name not in SNAP_URLS:
        raise KeyError(f"unknown dataset {name!r}; choose from {sorted(SNAP_URLS)}")
    dest = dest or snap_path(name)
    dest.parent.mkdir(parents=True, exist_ok=True)
    raw, _ = urllib.request.urlretrieve(SNAP_URLS[name])  # noqa: S310
    with gzip.open(raw, "rt") as fh:
        dest.write_text(fh.read())
    return dest
