"""Loading, cleaning, and min-max normalization of the benchmark datasets,
plus the registry describing where each lives and what shape to expect.

Dataset files are never committed; ``scripts/fetch_datasets.py`` (or
``bench datasets fetch``) populates a local data directory, and loaders
fail with a pointer to it when a file is absent.
"""

from __future__ import annotations

import configparser
import csv
import hashlib
import importlib.resources
import io
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import Dataset, LoadInfo

MISSING_POLICIES = ("drop_row", "impute_feature_mean")
DEFAULT_POLICY = "impute_feature_mean"
CHECKSUM_FILE = "checksums.sha256"


class MissingDataError(FileNotFoundError):
    """A registered dataset file is absent from the data directory."""


@dataclass(frozen=True)
class DatasetSpec:
    """Everything needed to locate, parse, and sanity-check one dataset."""

    name: str
    file: str
    urls: tuple[str, ...]
    feature_columns: tuple[int, ...]
    label_column: int
    id_columns: tuple[int, ...]
    expected_points: int
    table_attributes: int
    expected_clusters: int
    missing_token: str = "?"
    delimiter: str = ","  # "whitespace" splits on any blank run

    @property
    def n_features(self) -> int:
        """Effective feature count used for clustering (ID columns dropped)."""
        return len(self.feature_columns)

    def path(self, data_dir: str | Path | None = None) -> Path:
        return Path(default_data_dir() if data_dir is None else data_dir) / self.file


def default_data_dir() -> Path:
    return Path(os.environ.get("SWARMCLUST_DATA", "data"))


def _parse_columns(text: str) -> tuple[int, ...]:
    cols: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-")
            cols.extend(range(int(lo), int(hi) + 1))
        else:
            cols.append(int(part))
    return tuple(cols)


def _registry_from_ini(text: str) -> dict[str, DatasetSpec]:
    parser = configparser.ConfigParser()
    parser.read_string(text)
    specs = {}
    for name in parser.sections():
        sec = parser[name]
        specs[name] = DatasetSpec(
            name=name,
            file=sec["file"],
            urls=tuple(u.strip() for u in sec["urls"].split() if u.strip()),
            feature_columns=_parse_columns(sec["feature_columns"]),
            label_column=sec.getint("label_column"),
            id_columns=_parse_columns(sec.get("id_columns", "")),
            expected_points=sec.getint("expected_points"),
            table_attributes=sec.getint("table_attributes"),
            expected_clusters=sec.getint("expected_clusters"),
            missing_token=sec.get("missing_token", "?"),
            delimiter=sec.get("delimiter", ","),
        )
    return specs


def registry(path: str | Path | None = None) -> dict[str, DatasetSpec]:
    """The dataset registry, from the packaged file or a custom one."""
    if path is not None:
        text = Path(path).read_text()
    else:
        text = importlib.resources.files("swarmclust").joinpath("data/datasets.ini").read_text()
    return _registry_from_ini(text)


def _split_rows(text: str, delimiter: str) -> list[list[str]]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if delimiter == "whitespace":
        return [ln.split() for ln in lines]
    return [row for row in csv.reader(io.StringIO("\n".join(lines)), delimiter=delimiter)]


def load_csv(
    spec: DatasetSpec,
    policy: str = DEFAULT_POLICY,
    data_dir: str | Path | None = None,
) -> Dataset:
    """Parse one registered dataset file into an un-normalized Dataset.

    Labels are mapped to contiguous integers by sorted raw token.  Cells
    equal to the missing token are either dropped with their row or imputed
    with the feature's mean, per ``policy``; rows with a missing label are
    always dropped.
    """
    if policy not in MISSING_POLICIES:
        raise ValueError(f"unknown missing policy {policy!r}; choose from {MISSING_POLICIES}")
    path = spec.path(data_dir)
    if not path.exists():
        raise MissingDataError(
            f"dataset file {path} not found; run `bench datasets fetch` "
            f"(or scripts/fetch_datasets.py) to download it"
        )
    rows = _split_rows(path.read_text(), spec.delimiter)
    if not rows:
        raise ValueError(f"{path} contains no data rows")
    width = max(max(spec.feature_columns), spec.label_column) + 1
    for i, row in enumerate(rows):
        if len(row) < width:
            raise ValueError(f"{path} row {i + 1} has {len(row)} columns, expected at least {width}")

    raw_rows = len(rows)
    missing = spec.missing_token
    feats: list[list[float | None]] = []
    label_tokens: list[str] = []
    dropped = 0
    for row in rows:
        label = row[spec.label_column].strip()
        cells = [row[c].strip() for c in spec.feature_columns]
        row_missing = [cell == missing for cell in cells]
        if label == missing or (policy == "drop_row" and any(row_missing)):
            dropped += 1
            continue
        parsed: list[float | None] = []
        for c, cell, is_missing in zip(spec.feature_columns, cells, row_missing):
            if is_missing:
                parsed.append(None)
            else:
                try:
                    parsed.append(float(cell))
                except ValueError as exc:
                    raise ValueError(f"{path}: cannot parse {cell!r} in column {c} as a number") from exc
        feats.append(parsed)
        label_tokens.append(label)

    imputed = 0
    matrix = np.array([[np.nan if v is None else v for v in row] for row in feats], dtype=float)
    if np.isnan(matrix).any():
        imputed = int(np.isnan(matrix).sum())
        col_means = np.nanmean(matrix, axis=0)
        idx = np.nonzero(np.isnan(matrix))
        matrix[idx] = col_means[idx[1]]

    classes = sorted(set(label_tokens))
    if len(classes) != spec.expected_clusters:
        raise ValueError(
            f"{path}: found {len(classes)} label values {classes}, expected {spec.expected_clusters}"
        )
    class_index = {token: i for i, token in enumerate(classes)}
    labels = np.array([class_index[t] for t in label_tokens], dtype=int)

    return Dataset(
        name=spec.name,
        features=matrix,
        labels=labels,
        source=LoadInfo(
            raw_rows=raw_rows,
            dropped_rows=dropped,
            imputed_cells=imputed,
            missing_policy=policy,
        ),
    )


def normalize_minmax(data: Dataset) -> Dataset:
    """Map every feature linearly onto [0, 1]; constant features go to 0."""
    lo = data.features.min(axis=0)
    hi = data.features.max(axis=0)
    span = hi - lo
    safe = np.where(span > 0.0, span, 1.0)
    feats = (data.features - lo) / safe
    return Dataset(name=data.name, features=feats, labels=data.labels, source=data.source)


def load_dataset(
    name: str,
    data_dir: str | Path | None = None,
    policy: str = DEFAULT_POLICY,
    normalize: bool = True,
) -> Dataset:
    """Load one registered dataset, normalized by default."""
    specs = registry()
    if name not in specs:
        raise KeyError(f"unknown dataset {name!r}; registered: {sorted(specs)}")
    data = load_csv(specs[name], policy=policy, data_dir=data_dir)
    return normalize_minmax(data) if normalize else data


def sha256_of(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def verify_dataset(
    spec: DatasetSpec,
    data_dir: str | Path | None = None,
    policy: str = DEFAULT_POLICY,
) -> tuple[list[str], list[str]]:
    """Check one dataset against its recorded checksum and expected shape.

    Returns (problems, notes): problems fail verification, notes are
    informational.  Checksums come from the ``checksums.sha256`` sidecar
    the fetch script writes next to the downloaded files.
    """
    problems: list[str] = []
    notes: list[str] = []
    path = spec.path(data_dir)
    if not path.exists():
        return [f"{spec.name}: file {path} is missing; run `bench datasets fetch`"], notes

    sidecar = path.parent / CHECKSUM_FILE
    recorded = {}
    if sidecar.exists():
        for line in sidecar.read_text().splitlines():
            parts = line.split()
            if len(parts) == 2:
                recorded[parts[1]] = parts[0]
    if spec.file in recorded:
        actual = sha256_of(path)
        if actual == recorded[spec.file]:
            notes.append(f"{spec.name}: sha256 OK")
        else:
            problems.append(f"{spec.name}: sha256 mismatch ({actual} != recorded {recorded[spec.file]})")
    else:
        notes.append(f"{spec.name}: no recorded checksum for {spec.file}")

    try:
        data = load_csv(spec, policy=policy, data_dir=data_dir)
    except Exception as exc:
        problems.append(f"{spec.name}: failed to load: {exc}")
        return problems, notes
    raw = data.source.raw_rows
    if raw != spec.expected_points:
        problems.append(f"{spec.name}: raw row count {raw} != expected {spec.expected_points}")
    if data.n_dims != spec.n_features:
        problems.append(f"{spec.name}: feature count {data.n_dims} != expected {spec.n_features}")
    if data.n_classes != spec.expected_clusters:
        problems.append(f"{spec.name}: class count {data.n_classes} != expected {spec.expected_clusters}")
    if data.n_points != raw:
        notes.append(f"{spec.name}: effective rows {data.n_points} after policy {policy!r} (raw {raw})")
    return problems, notes
