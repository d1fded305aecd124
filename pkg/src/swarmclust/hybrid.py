"""Swarm-optimized clusterers: PSO K-Means, QPSO K-Means, and the soft
FCM QPSO hybrid.

Each particle encodes a full set of C cluster centres as one flat C*D
vector.  The K-Means hybrids minimize the within-cluster sum of squared
distances of the nearest-centroid partition; the FCM hybrid minimizes the
fuzzy objective with memberships recomputed fresh from the candidate
centres at every evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Dataset, RngSeed, data_bounds, pairwise_distances
from .fcm import DEFAULT_FUZZIFIER, compute_membership, fcm_cost
from .kmeans import assign_nearest
from .swarm import SwarmConfig, optimize


@dataclass(frozen=True)
class ClusteringResult:
    """Final state of one clustering run, whatever the algorithm."""

    algorithm: str
    centroids: np.ndarray
    assignment: np.ndarray
    cost: float
    cost_trace: np.ndarray
    seed: RngSeed | None = None
    membership: np.ndarray | None = None  # soft methods only
    iterations: int | None = None
    converged: bool | None = None


def encode(centroids: np.ndarray) -> np.ndarray:
    """Row-major flattening of a (C, D) centre matrix."""
    return np.asarray(centroids, dtype=float).ravel()


def decode(position: np.ndarray, n_clusters: int, n_dims: int) -> np.ndarray:
    """Inverse of :func:`encode`; rejects vectors of the wrong length."""
    position = np.asarray(position, dtype=float)
    if position.size != n_clusters * n_dims:
        raise ValueError(f"expected a vector of length {n_clusters * n_dims}, got {position.size}")
    return position.reshape(n_clusters, n_dims)


def fcm_qpso_cost(position: np.ndarray, data: Dataset, n_clusters: int, m: float = DEFAULT_FUZZIFIER) -> float:
    """Fuzzy objective of the candidate centres encoded in ``position``,
    with memberships recomputed from those centres."""
    centres = decode(position, n_clusters, data.n_dims)
    mu = compute_membership(centres, data, m)
    return fcm_cost(centres, mu, data, m)


def hard_swarm_cost(position: np.ndarray, data: Dataset, n_clusters: int) -> float:
    """Within-cluster sum of squared distances of the candidate centres.

    The same objective Lloyd's algorithm descends, so the hard hybrids are
    a global search over exactly what K-Means optimizes locally.  The
    per-cluster average-distance index is deliberately not the objective:
    averaging per cluster rewards keeping one tiny, tight cluster, and a
    strong optimizer will find those degenerate low-index partitions.
    """
    centres = decode(position, n_clusters, data.n_dims)
    dist = pairwise_distances(data.features, centres)  # (C, N)
    return float(np.sum(dist.min(axis=0) ** 2))


def _swarm_bounds(data: Dataset, n_clusters: int, config: SwarmConfig) -> SwarmConfig:
    lo, hi = data_bounds(data)
    return config.with_bounds(np.tile(lo, n_clusters), np.tile(hi, n_clusters))


def _check_clusters(data: Dataset, n_clusters: int) -> None:
    if not 1 < n_clusters < data.n_points:
        raise ValueError(f"cluster count must satisfy 1 < C < N, got C={n_clusters}, N={data.n_points}")


def run_fcm_qpso(
    data: Dataset,
    n_clusters: int,
    m: float = DEFAULT_FUZZIFIER,
    config: SwarmConfig = SwarmConfig(),
    rng: RngSeed = RngSeed(0),
) -> ClusteringResult:
    """QPSO over encoded centre matrices with the fuzzy objective.

    The returned membership is evaluated at the global-best centres and the
    assignment is its per-point argmax.
    """
    _check_clusters(data, n_clusters)
    cfg = _swarm_bounds(data, n_clusters, config)
    opt = optimize(lambda x: fcm_qpso_cost(x, data, n_clusters, m), cfg, "qpso", rng)
    centres = decode(opt.gbest_position, n_clusters, data.n_dims)
    mu = compute_membership(centres, data, m)
    return ClusteringResult(
        algorithm="fcm_qpso",
        centroids=centres,
        assignment=np.argmax(mu, axis=0),
        cost=opt.gbest_cost,
        cost_trace=opt.cost_trace,
        seed=rng,
        membership=mu,
        iterations=opt.iterations_run,
        converged=opt.terminated_by == "stagnation",
    )


def _run_hard_swarm(variant: str, tag: str, data: Dataset, n_clusters: int, config: SwarmConfig, rng: RngSeed) -> ClusteringResult:
    _check_clusters(data, n_clusters)
    cfg = _swarm_bounds(data, n_clusters, config)
    opt = optimize(lambda x: hard_swarm_cost(x, data, n_clusters), cfg, variant, rng)
    centres = decode(opt.gbest_position, n_clusters, data.n_dims)
    return ClusteringResult(
        algorithm=tag,
        centroids=centres,
        assignment=assign_nearest(data, centres),
        cost=opt.gbest_cost,
        cost_trace=opt.cost_trace,
        seed=rng,
        iterations=opt.iterations_run,
        converged=opt.terminated_by == "stagnation",
    )


def run_pso_kmeans(
    data: Dataset,
    n_clusters: int,
    config: SwarmConfig = SwarmConfig(),
    rng: RngSeed = RngSeed(0),
) -> ClusteringResult:
    """Standard PSO over encoded centres, minimizing the K-Means objective."""
    return _run_hard_swarm("pso", "pso_kmeans", data, n_clusters, config, rng)


def run_qpso_kmeans(
    data: Dataset,
    n_clusters: int,
    config: SwarmConfig = SwarmConfig(),
    rng: RngSeed = RngSeed(0),
) -> ClusteringResult:
    """QPSO over encoded centres, minimizing the K-Means objective."""
    return _run_hard_swarm("qpso", "qpso_kmeans", data, n_clusters, config, rng)
