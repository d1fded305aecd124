"""Download helpers for the benchmark data files.

Files land in a local data directory (never in version control) and a
``checksums.sha256`` sidecar records what was fetched so later runs can
verify the bytes.  The iris table can alternatively be rebuilt from
scikit-learn's bundled copy, which carries the same rows as the public
file; that path needs no network at all.
"""

from __future__ import annotations

import urllib.error
import urllib.request
from pathlib import Path

from .datasets import CHECKSUM_FILE, DatasetSpec, default_data_dir, registry, sha256_of

DOWNLOAD_TIMEOUT = 60.0


def fetch_dataset(spec: DatasetSpec, data_dir: str | Path | None = None, force: bool = False) -> Path:
    """Download one dataset, trying its mirror URLs in order.

    An existing file is kept unless ``force`` is set.  Raises ``OSError``
    with the last underlying error when every URL fails.
    """
    target = spec.path(data_dir)
    if target.exists() and not force:
        return target
    target.parent.mkdir(parents=True, exist_ok=True)
    last_error: Exception | None = None
    for url in spec.urls:
        try:
            with urllib.request.urlopen(url, timeout=DOWNLOAD_TIMEOUT) as response:
                payload = response.read()
        except (urllib.error.URLError, OSError) as exc:
            last_error = exc
            continue
        tmp = target.with_name(target.name + ".part")
        tmp.write_bytes(payload)
        tmp.replace(target)
        return target
    raise OSError(f"could not download {spec.name} from {', '.join(spec.urls)} (last error: {last_error})")


def iris_from_sklearn(data_dir: str | Path | None = None, force: bool = False) -> Path:
    """Write the iris table from scikit-learn's bundled copy.

    scikit-learn ships the same 150 rows as the public file, so this is a
    byte-faithful offline substitute: four one-decimal measurements and a
    ``Iris-<species>`` label per line.
    """
    from sklearn.datasets import load_iris  # deliberately local: optional dependency

    spec = registry()["iris"]
    target = spec.path(data_dir)
    if target.exists() and not force:
        return target
    target.parent.mkdir(parents=True, exist_ok=True)
    bundle = load_iris()
    lines = []
    for row, label in zip(bundle.data, bundle.target):
        values = ",".join(f"{v:.1f}" for v in row)
        lines.append(f"{values},Iris-{bundle.target_names[label]}")
    target.write_text("\n".join(lines) + "\n")
    return target


def update_checksums(data_dir: str | Path | None = None) -> Path:
    """Rewrite the sidecar with the hash of every present data file."""
    base = Path(data_dir) if data_dir is not None else Path(default_data_dir())
    lines = []
    for name, spec in sorted(registry().items()):
        path = spec.path(base)
        if path.exists():
            lines.append(f"{sha256_of(path)}  {spec.file}")
    sidecar = base / CHECKSUM_FILE
    sidecar.parent.mkdir(parents=True, exist_ok=True)
    sidecar.write_text("\n".join(lines) + ("\n" if lines else ""))
    return sidecar


def fetch_all(
    names: list[str] | None = None,
    data_dir: str | Path | None = None,
    force: bool = False,
    iris_from_sklearn_copy: bool = False,
) -> tuple[dict[str, Path], dict[str, str]]:
    """Fetch the named datasets (all registered ones by default).

    Returns (fetched paths, errors by name).  The checksum sidecar is
    refreshed afterwards to cover whatever is present.
    """
    reg = registry()
    selected = list(names) if names else sorted(reg)
    unknown = [n for n in selected if n not in reg]
    if unknown:
        raise KeyError(f"unknown dataset(s) {unknown}; registered: {sorted(reg)}")

    fetched: dict[str, Path] = {}
    errors: dict[str, str] = {}
    for name in selected:
        try:
            if name == "iris" and iris_from_sklearn_copy:
                fetched[name] = iris_from_sklearn(data_dir, force=force)
            else:
                fetched[name] = fetch_dataset(reg[name], data_dir, force=force)
        except Exception as exc:
            errors[name] = str(exc)
    update_checksums(data_dir)
    return fetched, errors
