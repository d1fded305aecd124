"""Clustering performance indices: centre separation, compactness,
quantization error, and the label-matched external scores (accuracy and
F-measure against ground truth)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import Dataset, euclidean_distance, validate_centroids


@dataclass(frozen=True)
class MetricReport:
    """One row of the benchmark tables.  External scores are None when the
    dataset carries no ground-truth labels."""

    intercluster: float
    intracluster: float
    quantization_error: float
    f_measure: float | None
    accuracy: float | None


def intercluster_distance(centroids: np.ndarray) -> float:
    """Sum of Euclidean distances over all unordered pairs of centres."""
    centres = validate_centroids(centroids)
    c = centres.shape[0]
    if c < 2:
        raise ValueError("intercluster distance needs at least 2 centres")
    total = 0.0
    for i in range(c):
        for r in range(i + 1, c):
            total += euclidean_distance(centres[i], centres[r])
    return total


def intracluster_distance(data: Dataset, assignment: np.ndarray, centroids: np.ndarray) -> float:
    """Sum of distances from every point to its parent cluster centre."""
    centres = validate_centroids(centroids)
    assignment = _check_assignment(assignment, data.n_points, centres.shape[0])
    diff = data.features - centres[assignment]
    return float(np.sqrt(np.sum(diff**2, axis=1)).sum())


def quantization_error(data: Dataset, assignment: np.ndarray, centroids: np.ndarray) -> float:
    """Per-cluster average point-to-centre distance, averaged over all C
    clusters.  Empty clusters contribute 0 but still count in the divisor."""
    centres = validate_centroids(centroids)
    c = centres.shape[0]
    assignment = _check_assignment(assignment, data.n_points, c)
    diff = data.features - centres[assignment]
    dist = np.sqrt(np.sum(diff**2, axis=1))
    total = 0.0
    for i in range(c):
        members = assignment == i
        if members.any():
            total += float(dist[members].mean())
    return total / c


def confusion_matrix(pred: np.ndarray, truth: np.ndarray) -> np.ndarray:
    """(clusters, classes) count matrix of co-occurrences."""
    pred, truth = _check_labels(pred, truth)
    n_pred = int(pred.max()) + 1
    n_true = int(truth.max()) + 1
    counts = np.zeros((n_pred, n_true), dtype=int)
    np.add.at(counts, (pred, truth), 1)
    return counts


def match_clusters_to_classes(pred: np.ndarray, truth: np.ndarray) -> dict[int, int]:
    """Injective cluster-to-class mapping maximizing total agreement.

    Computed by optimal assignment on the confusion matrix; when clusters
    and classes differ in number, the mapping is injective on the smaller
    side.  linear_sum_assignment breaks ties lexicographically, which keeps
    the mapping deterministic.
    """
    counts = confusion_matrix(pred, truth)
    rows, cols = linear_sum_assignment(-counts)
    return {int(r): int(c) for r, c in zip(rows, cols)}


def accuracy(pred: np.ndarray, truth: np.ndarray) -> float:
    """Fraction of points whose matched cluster agrees with their class."""
    pred, truth = _check_labels(pred, truth)
    counts = confusion_matrix(pred, truth)
    mapping = match_clusters_to_classes(pred, truth)
    agreement = sum(int(counts[r, c]) for r, c in mapping.items())
    return agreement / pred.size


def f_measure(pred: np.ndarray, truth: np.ndarray) -> float:
    """Class-weighted clustering F-measure.

    For each true class the best-matching cluster's harmonic mean of
    precision and recall is taken; the overall score weights classes by
    their size.  Invariant under any relabeling of the predicted clusters.
    """
    pred, truth = _check_labels(pred, truth)
    counts = confusion_matrix(pred, truth)  # (clusters, classes)
    n = pred.size
    cluster_sizes = counts.sum(axis=1)  # points per cluster
    class_sizes = counts.sum(axis=0)  # points per class
    total = 0.0
    for i in range(counts.shape[1]):
        if class_sizes[i] == 0:
            continue
        best = 0.0
        for j in range(counts.shape[0]):
            if counts[j, i] == 0:
                continue
            precision = counts[j, i] / cluster_sizes[j]
            recall = counts[j, i] / class_sizes[i]
            best = max(best, float(2.0 * precision * recall / (precision + recall)))
        total += float(class_sizes[i] / n) * best
    return total


def evaluate(
    data: Dataset,
    assignment: np.ndarray,
    centroids: np.ndarray,
) -> MetricReport:
    """All indices for one clustering result; external scores only when the
    dataset has labels."""
    has_labels = data.labels is not None
    return MetricReport(
        intercluster=intercluster_distance(centroids),
        intracluster=intracluster_distance(data, assignment, centroids),
        quantization_error=quantization_error(data, assignment, centroids),
        f_measure=f_measure(assignment, data.labels) if has_labels else None,
        accuracy=accuracy(assignment, data.labels) if has_labels else None,
    )


def _check_assignment(assignment: np.ndarray, n_points: int, n_clusters: int) -> np.ndarray:
    assignment = np.asarray(assignment, dtype=int)
    if assignment.shape != (n_points,):
        raise ValueError(f"assignment must have shape ({n_points},), got {assignment.shape}")
    if assignment.min() < 0 or assignment.max() >= n_clusters:
        raise ValueError("assignment contains out-of-range cluster indices")
    return assignment


def _check_labels(pred: np.ndarray, truth: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    pred = np.asarray(pred, dtype=int)
    truth = np.asarray(truth, dtype=int)
    if pred.shape != truth.shape or pred.ndim != 1:
        raise ValueError(f"label vectors must share one length, got {pred.shape} and {truth.shape}")
    return pred, truth
