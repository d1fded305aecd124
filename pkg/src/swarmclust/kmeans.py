"""Lloyd's K-Means baseline and the hard-clustering cost shared with the
swarm hybrids.

``hard_cost`` is the quantization error (mean over clusters of the average
point-to-centre distance), which doubles as the fitness the PSO/QPSO
K-Means hybrids minimize.  Lloyd's own descent is measured on the usual
within-cluster sum of squared distances.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .core import Dataset, RngSeed, data_bounds, pairwise_distances, validate_centroids
from .metrics import quantization_error

log = logging.getLogger(__name__)

DEFAULT_MAX_ITER = 100


@dataclass(frozen=True)
class KMeansResult:
    centroids: np.ndarray
    assignment: np.ndarray
    cost: float
    iterations: int
    converged: bool
    cost_trace: np.ndarray


def assign_nearest(data: Dataset, centroids: np.ndarray) -> np.ndarray:
    """Index of the closest centre for every point, ties to the lowest index."""
    centres = validate_centroids(centroids)
    dist = pairwise_distances(data.features, centres)  # (C, N)
    return np.argmin(dist, axis=0)


def recompute_means(data: Dataset, assignment: np.ndarray, n_clusters: int) -> np.ndarray:
    """Arithmetic mean of each cluster's members.

    An empty cluster is reseeded at the point currently farthest from its
    nearest centre, which keeps every centre finite and can only help the
    next assignment sweep.
    """
    assignment = np.asarray(assignment, dtype=int)
    centres = np.zeros((n_clusters, data.n_dims))
    counts = np.bincount(assignment, minlength=n_clusters)
    for i in range(n_clusters):
        if counts[i] > 0:
            centres[i] = data.features[assignment == i].mean(axis=0)
    empty = np.nonzero(counts == 0)[0]
    if empty.size:
        log.debug("reseeding %d empty cluster(s): %s", empty.size, empty.tolist())
        occupied = centres[counts > 0]
        for i in empty:
            # farthest point from its nearest occupied centre
            dist = pairwise_distances(data.features, occupied).min(axis=0)
            far = int(np.argmax(dist))
            centres[i] = data.features[far]
            occupied = np.vstack([occupied, centres[i]])
    return centres


def hard_cost(data: Dataset, centroids: np.ndarray) -> float:
    """Quantization error of the nearest-centroid partition induced by
    ``centroids``: per-cluster mean point-to-centre distance averaged over
    all C clusters, empty clusters contributing zero."""
    centres = validate_centroids(centroids)
    return quantization_error(data, assign_nearest(data, centres), centres)


def sum_squared_error(data: Dataset, assignment: np.ndarray, centroids: np.ndarray) -> float:
    """Within-cluster sum of squared distances (Lloyd's objective)."""
    diff = data.features - np.asarray(centroids)[np.asarray(assignment, dtype=int)]
    return float(np.sum(diff**2))


def run_kmeans(
    data: Dataset,
    n_clusters: int,
    max_iter: int = DEFAULT_MAX_ITER,
    rng: RngSeed | np.random.Generator = RngSeed(0),
) -> KMeansResult:
    """Lloyd iterations from centres drawn uniformly inside the data bounds.

    Stops when the assignment no longer changes or after ``max_iter``
    sweeps.  ``cost`` is the quantization error of the final partition;
    ``cost_trace`` records the sum-of-squares objective per sweep.
    """
    if not 1 < n_clusters < data.n_points:
        raise ValueError(f"cluster count must satisfy 1 < C < N, got C={n_clusters}, N={data.n_points}")
    gen = rng.generator() if isinstance(rng, RngSeed) else rng
    lo, hi = data_bounds(data)
    centres = gen.uniform(lo, hi, size=(n_clusters, data.n_dims))

    assignment = assign_nearest(data, centres)
    converged = False
    iterations = 0
    trace = []
    for iterations in range(1, max_iter + 1):
        centres = recompute_means(data, assignment, n_clusters)
        trace.append(sum_squared_error(data, assignment, centres))
        new_assignment = assign_nearest(data, centres)
        if np.array_equal(new_assignment, assignment):
            converged = True
            break
        assignment = new_assignment
    return KMeansResult(
        centroids=centres,
        assignment=assignment,
        cost=quantization_error(data, assignment, centres),
        iterations=iterations,
        converged=converged,
        cost_trace=np.asarray(trace),
    )
