"""Shared domain types, distance computation, and reproducible RNG streams.

Conventions used throughout the package:

* a feature matrix is an (N, D) float64 array, one row per data point
* a centroid matrix is a (C, D) float64 array, one row per cluster centre
* a membership matrix is a (C, N) float64 array whose columns sum to 1
* an assignment is a length-N int array of cluster indices in [0, C)
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class LoadInfo:
    """Provenance of a loaded dataset: raw row count and cleaning actions."""

    raw_rows: int
    dropped_rows: int
    imputed_cells: int
    missing_policy: str


@dataclass(frozen=True)
class Dataset:
    """An (N, D) feature matrix with optional ground-truth class labels.

    Treated as immutable everywhere: no function in this package mutates
    ``features`` or ``labels`` in place, so instances are safe to share
    across threads.
    """

    name: str
    features: np.ndarray
    labels: np.ndarray | None = None
    source: LoadInfo | None = None

    def __post_init__(self):
        feats = np.asarray(self.features, dtype=float)
        if feats.ndim != 2:
            raise ValueError(f"features must be 2-D, got shape {feats.shape}")
        n, d = feats.shape
        if n < 2 or d < 1:
            raise ValueError(f"need at least 2 points and 1 dimension, got N={n}, D={d}")
        if not np.all(np.isfinite(feats)):
            raise ValueError("features contain non-finite values")
        object.__setattr__(self, "features", feats)
        if self.labels is not None:
            labels = np.asarray(self.labels, dtype=int)
            if labels.shape != (n,):
                raise ValueError(f"labels must have shape ({n},), got {labels.shape}")
            if labels.min() < 0:
                raise ValueError("labels must be nonnegative")
            object.__setattr__(self, "labels", labels)

    @property
    def n_points(self) -> int:
        return self.features.shape[0]

    @property
    def n_dims(self) -> int:
        return self.features.shape[1]

    @property
    def n_classes(self) -> int:
        if self.labels is None:
            raise ValueError(f"dataset {self.name!r} has no labels")
        return int(self.labels.max()) + 1


@dataclass(frozen=True)
class RngSeed:
    """Replayable random stream identified by (seed, stream_id).

    Identical (seed, stream_id) pairs reproduce identical algorithm output
    bit-for-bit on one platform; distinct stream_ids give statistically
    independent streams, so trials can run in parallel.
    """

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.PCG64(ss))


def euclidean_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Euclidean norm of a - b for two equal-length vectors."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"expected equal-length vectors, got {a.shape} and {b.shape}")
    return float(np.linalg.norm(a - b))


def pairwise_distances(points: np.ndarray, centres: np.ndarray) -> np.ndarray:
    """(C, N) matrix of Euclidean distances between centres and points."""
    points = np.asarray(points, dtype=float)
    centres = np.asarray(centres, dtype=float)
    diff = centres[:, None, :] - points[None, :, :]
    return np.sqrt(np.einsum("cnd,cnd->cn", diff, diff))


def data_bounds(data: Dataset) -> tuple[np.ndarray, np.ndarray]:
    """Per-dimension (min, max) over all points of a dataset."""
    feats = data.features
    if feats.shape[0] < 1:
        raise ValueError("empty dataset has no bounds")
    return feats.min(axis=0), feats.max(axis=0)


def validate_centroids(centres: np.ndarray, n_points: int | None = None) -> np.ndarray:
    """Coerce to a finite (C, D) float array; enforce 1 < C < N when N given."""
    centres = np.asarray(centres, dtype=float)
    if centres.ndim != 2:
        raise ValueError(f"centroids must be 2-D, got shape {centres.shape}")
    if not np.all(np.isfinite(centres)):
        raise ValueError("centroids contain non-finite values")
    if n_points is not None:
        c = centres.shape[0]
        if not 1 < c < n_points:
            raise ValueError(f"cluster count must satisfy 1 < C < N, got C={c}, N={n_points}")
    return centres
