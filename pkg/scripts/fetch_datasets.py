#!/usr/bin/env python3
"""Download the large signed social networks into the data directory.

Needs network access.  The wiki-elections network is not distributed as a
plain signed edge list; prepare it separately as data/wiki_elections.tsv
with 'src dst sign' lines if you want the gated tests to run on it.
"""

import sys

from cyclebalance.datasets import SNAP_URLS, fetch_snap, snap_path


def main() -> int:
    names = sys.argv[1:] or sorted(SNAP_URLS)
    for name in names:
        dest = snap_path(name)
        if dest.exists():
            print(f"{name}: already at {dest}")
            continue
        try:
            print(f"{name}: fetching ...", flush=True)
            fetch_snap(name, dest)
            print(f"{name}: wrote {dest}")
        except Exception as exc:
            print(f"{name}: failed ({exc})", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
