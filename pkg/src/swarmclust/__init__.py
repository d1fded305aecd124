"""Clustering with swarm-optimized centres.

Fuzzy C-Means, K-Means, particle swarm and quantum-behaved particle swarm
optimizers, and the hybrids that search centre matrices with a swarm:
PSO K-Means, QPSO K-Means, and FCM QPSO.  A benchmark runner scores every
algorithm on labeled datasets with intercluster and intracluster distance,
quantization error, F-measure, and optimal-matching accuracy.
"""

from .bench import ExperimentConfig, TrialReport, run_and_emit, run_experiment
from .core import Dataset, LoadInfo, RngSeed
from .datasets import MissingDataError, load_dataset, normalize_minmax, registry
from .fcm import FcmResult, compute_membership, fcm_cost, run_fcm, update_centroids
from .hybrid import (
    ClusteringResult,
    decode,
    encode,
    fcm_qpso_cost,
    run_fcm_qpso,
    run_pso_kmeans,
    run_qpso_kmeans,
)
from .kmeans import KMeansResult, assign_nearest, hard_cost, recompute_means, run_kmeans
from .metrics import (
    MetricReport,
    accuracy,
    evaluate,
    f_measure,
    intercluster_distance,
    intracluster_distance,
    match_clusters_to_classes,
    quantization_error,
)
from .swarm import OptResult, SwarmConfig, optimize

__version__ = "0.1.0"

__all__ = [
    "ClusteringResult",
    "Dataset",
    "ExperimentConfig",
    "FcmResult",
    "KMeansResult",
    "LoadInfo",
    "MetricReport",
    "MissingDataError",
    "OptResult",
    "RngSeed",
    "SwarmConfig",
    "TrialReport",
    "accuracy",
    "assign_nearest",
    "compute_membership",
    "decode",
    "encode",
    "evaluate",
    "f_measure",
    "fcm_cost",
    "fcm_qpso_cost",
    "hard_cost",
    "intercluster_distance",
    "intracluster_distance",
    "load_dataset",
    "match_clusters_to_classes",
    "normalize_minmax",
    "optimize",
    "quantization_error",
    "recompute_means",
    "registry",
    "run_and_emit",
    "run_experiment",
    "run_fcm",
    "run_fcm_qpso",
    "run_kmeans",
    "run_pso_kmeans",
    "run_qpso_kmeans",
    "update_centroids",
]
