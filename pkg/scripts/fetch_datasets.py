#!/usr/bin/env python3
"""Fetch the benchmark data files into a local directory.

Thin wrapper so the download works from a plain source checkout; the
installed CLI offers the same thing as `bench datasets fetch`.
"""

import argparse
import sys
from pathlib import Path

try:
    from swarmclust import fetch
except ImportError:  # uninstalled checkout: use the in-tree sources
    sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
    from swarmclust import fetch


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data-dir", default=None, help="directory to place the files in (default: ./data)")
    parser.add_argument("--dataset", action="append", default=None, help="dataset name; repeatable (default: all)")
    parser.add_argument("--force", action="store_true", help="redownload even when the file exists")
    parser.add_argument(
        "--iris-from-sklearn",
        action="store_true",
        help="build the iris file from scikit-learn's bundled copy instead of downloading",
    )
    args = parser.parse_args()

    try:
        fetched, errors = fetch.fetch_all(
            args.dataset,
            data_dir=args.data_dir,
            force=args.force,
            iris_from_sklearn_copy=args.iris_from_sklearn,
        )
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return 1
    for name, path in sorted(fetched.items()):
        print(f"{name}: {path}")
    for name, message in sorted(errors.items()):
        print(f"{name}: FAILED ({message})", file=sys.stderr)
    return 1 if errors else 0


if __name__ == "__main__":
    raise SystemExit(main())
