"""Fuzzy C-Means: membership/centroid updates, the fuzzy objective, and the
classic alternating-update solver.

The same membership and cost kernels are reused as the fitness inside the
soft swarm hybrid, so they are kept free of solver state.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .core import Dataset, RngSeed, data_bounds, pairwise_distances, validate_centroids

log = logging.getLogger(__name__)

DEFAULT_FUZZIFIER = 2.0
DEFAULT_TOL = 1e-8
DEFAULT_MAX_ITER = 300


def _check_fuzzifier(m: float) -> float:
    # m = 1 makes the membership exponent 2/(m-1) singular
    if not m > 1.0:
        raise ValueError(f"fuzzifier must be > 1, got {m}")
    return float(m)


@dataclass(frozen=True)
class FcmResult:
    centroids: np.ndarray
    membership: np.ndarray
    cost: float
    iterations: int
    converged: bool
    cost_trace: np.ndarray


def compute_membership(centroids: np.ndarray, data: Dataset, m: float = DEFAULT_FUZZIFIER) -> np.ndarray:
    """Degrees of membership of every point in every cluster.

    mu[i, j] = 1 / sum_r (d_ij / d_rj)^(2/(m-1)), columns summing to 1.
    A point that coincides with one centre gets full membership there; if it
    coincides with several, membership is split equally among them.
    """
    m = _check_fuzzifier(m)
    centres = validate_centroids(centroids)
    if centres.shape[0] < 2:
        raise ValueError("membership needs at least 2 clusters")
    dist = pairwise_distances(data.features, centres)  # (C, N)

    # Rescale each column by its min distance: ratios >= 1, so the negative
    # power below cannot overflow however close a point sits to a centre.
    dmin = dist.min(axis=0, keepdims=True)
    coincident = dist == 0.0
    any_coincident = coincident.any(axis=0)
    safe_min = np.where(dmin > 0.0, dmin, 1.0)
    # Coincident entries produce inf/NaN here; those columns are replaced below.
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = (dist / safe_min) ** (-2.0 / (m - 1.0))
        mu = inv / inv.sum(axis=0, keepdims=True)

    if any_coincident.any():
        cols = np.nonzero(any_coincident)[0]
        mu[:, cols] = coincident[:, cols] / coincident[:, cols].sum(axis=0, keepdims=True)
    return mu


def update_centroids(
    mu: np.ndarray,
    data: Dataset,
    m: float = DEFAULT_FUZZIFIER,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Membership-weighted mean update of every cluster centre.

    x_i = sum_j mu_ij^m y_j / sum_j mu_ij^m.  A cluster whose memberships are
    all zero has no defined centre and is reseeded at a random data point
    (drawn from ``rng``, or a fresh unseeded generator if none is given).
    """
    m = _check_fuzzifier(m)
    mu = np.asarray(mu, dtype=float)
    weights = mu**m  # (C, N)
    denom = weights.sum(axis=1)
    centres = np.zeros((mu.shape[0], data.n_dims))
    ok = denom > 0.0
    centres[ok] = (weights[ok] @ data.features) / denom[ok, None]
    if not ok.all():
        if rng is None:
            rng = np.random.default_rng()
        dead = np.nonzero(~ok)[0]
        log.warning("reseeding %d cluster(s) with zero total membership: %s", dead.size, dead.tolist())
        for i in dead:
            centres[i] = data.features[rng.integers(data.n_points)]
    return centres


def fcm_cost(centroids: np.ndarray, mu: np.ndarray, data: Dataset, m: float = DEFAULT_FUZZIFIER) -> float:
    """Membership-weighted sum of squared point-to-centre distances."""
    m = _check_fuzzifier(m)
    centres = validate_centroids(centroids)
    mu = np.asarray(mu, dtype=float)
    dist = pairwise_distances(data.features, centres)
    return float(np.sum(mu**m * dist**2))


def run_fcm(
    data: Dataset,
    n_clusters: int,
    m: float = DEFAULT_FUZZIFIER,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    rng: RngSeed | np.random.Generator = RngSeed(0),
) -> FcmResult:
    """Alternating membership/centroid updates from random initial centres.

    Initial centres are drawn uniformly inside the data bounding box (the
    same distribution the swarm hybrids use for particles, so baselines
    differ only in the optimizer).  Terminates when the cost change drops
    below ``tol`` or after ``max_iter`` alternations.
    """
    if not 1 < n_clusters < data.n_points:
        raise ValueError(f"cluster count must satisfy 1 < C < N, got C={n_clusters}, N={data.n_points}")
    gen = rng.generator() if isinstance(rng, RngSeed) else rng
    lo, hi = data_bounds(data)
    centres = gen.uniform(lo, hi, size=(n_clusters, data.n_dims))

    mu = compute_membership(centres, data, m)
    cost = fcm_cost(centres, mu, data, m)
    trace = [cost]
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        centres = update_centroids(mu, data, m, rng=gen)
        mu = compute_membership(centres, data, m)
        new_cost = fcm_cost(centres, mu, data, m)
        trace.append(new_cost)
        if abs(cost - new_cost) < tol:
            cost = new_cost
            converged = True
            break
        cost = new_cost
    return FcmResult(
        centroids=centres,
        membership=mu,
        cost=cost,
        iterations=iterations,
        converged=converged,
        cost_trace=np.asarray(trace),
    )
