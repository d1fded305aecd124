"""Seeded multi-trial experiment runner.

Runs every (dataset, algorithm) pair for a fixed number of independent
trials, scores each run with the full metric suite, and writes per-trial
CSVs, aggregate mean±std tables, and figure-data files into an output
directory.  Everything except wall-clock timings is a pure function of the
configuration, so reruns reproduce the output tree byte for byte; timings
go to a separate ``timings/`` subdirectory excluded from that contract.
"""

from __future__ import annotations

import configparser
import csv
import io
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .core import Dataset, RngSeed
from .datasets import DEFAULT_POLICY, MISSING_POLICIES, load_dataset
from .fcm import run_fcm
from .hybrid import ClusteringResult, run_fcm_qpso, run_pso_kmeans, run_qpso_kmeans
from .kmeans import run_kmeans
from .metrics import MetricReport, evaluate
from .swarm import SwarmConfig

ALGORITHMS = ("kmeans", "fcm", "pso_kmeans", "qpso_kmeans", "fcm_qpso")

DISPLAY_NAMES = {
    "kmeans": "K-Means",
    "fcm": "FCM",
    "pso_kmeans": "PSO K-Means",
    "qpso_kmeans": "QPSO K-Means",
    "fcm_qpso": "FCM QPSO",
}

# (MetricReport field, table column header)
METRIC_COLUMNS = (
    ("intercluster", "Intercluster"),
    ("intracluster", "Intracluster"),
    ("quantization_error", "Quantization error"),
    ("f_measure", "F-measure"),
    ("accuracy", "Accuracy"),
)

PLOT_KINDS = ("accuracy_bars", "cluster_scatter3d", "convergence")

TABLE_FORMATS = ("csv", "markdown")


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a benchmark run depends on, defaults included."""

    datasets: tuple[str, ...]
    algorithms: tuple[str, ...] = ALGORITHMS
    trials: int = 10
    seed: int = 0
    swarm: SwarmConfig = SwarmConfig()
    fuzzifier: float = 2.0
    n_clusters: int | None = None  # None: use the dataset's class count
    normalize: bool = True
    missing_policy: str = DEFAULT_POLICY
    data_dir: str | None = None
    out_dir: str = "results"
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "datasets", tuple(self.datasets))
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        if not self.datasets:
            raise ValueError("at least one dataset is required")
        if not self.algorithms:
            raise ValueError("at least one algorithm is required")
        for name in self.algorithms:
            if name not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {name!r}; choose from {ALGORITHMS}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.missing_policy not in MISSING_POLICIES:
            raise ValueError(f"unknown missing policy {self.missing_policy!r}; choose from {MISSING_POLICIES}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class TrialRow:
    """One scored run: metric suite plus the algorithm's own final cost."""

    trial: int
    metrics: MetricReport
    cost: float
    iterations: int
    wall_clock: float


@dataclass(frozen=True)
class TrialReport:
    """All trials for one (dataset, algorithm) pair plus a representative
    result (the lowest-cost trial) kept for figure export."""

    dataset: str
    algorithm: str
    rows: tuple[TrialRow, ...]
    representative: ClusteringResult

    @property
    def n_trials(self) -> int:
        return len(self.rows)

    @property
    def degenerate_std(self) -> bool:
        """True when std is 0 by convention rather than measured."""
        return self.n_trials == 1

    def aggregate(self) -> dict[str, tuple[float, float] | tuple[None, None]]:
        """Mean and sample standard deviation per metric field.

        Uses the N-1 denominator; a single trial reports std 0 by
        convention (see ``degenerate_std``).  Label-dependent metrics on
        unlabeled data aggregate to (None, None).
        """
        out: dict[str, tuple[float, float] | tuple[None, None]] = {}
        for field_name, _ in METRIC_COLUMNS:
            values = [getattr(row.metrics, field_name) for row in self.rows]
            if any(v is None for v in values):
                out[field_name] = (None, None)
                continue
            arr = np.asarray(values, dtype=float)
            std = 0.0 if arr.size == 1 else float(np.std(arr, ddof=1))
            out[field_name] = (float(np.mean(arr)), std)
        return out


def run_trial(
    data: Dataset,
    algorithm: str,
    n_clusters: int,
    config: ExperimentConfig,
    trial: int,
) -> tuple[TrialRow, ClusteringResult]:
    """One seeded run plus its metric evaluation.

    The RNG stream is ``RngSeed(config.seed, stream_id=trial)``, so a
    trial's randomness depends only on the base seed and its own index,
    never on scheduling or on which other pairs run.
    """
    rng = RngSeed(config.seed, stream_id=trial)
    start = time.perf_counter()
    result = _dispatch(data, algorithm, n_clusters, config, rng)
    elapsed = time.perf_counter() - start
    report = evaluate(data, result.assignment, result.centroids)
    row = TrialRow(
        trial=trial,
        metrics=report,
        cost=result.cost,
        iterations=result.iterations,
        wall_clock=elapsed,
    )
    return row, result


def _dispatch(
    data: Dataset,
    algorithm: str,
    n_clusters: int,
    config: ExperimentConfig,
    rng: RngSeed,
) -> ClusteringResult:
    if algorithm == "kmeans":
        res = run_kmeans(data, n_clusters, rng=rng)
        return ClusteringResult(
            algorithm="kmeans",
            centroids=res.centroids,
            assignment=res.assignment,
            cost=res.cost,
            cost_trace=res.cost_trace,
            seed=rng,
            iterations=res.iterations,
            converged=res.converged,
        )
    if algorithm == "fcm":
        res = run_fcm(data, n_clusters, m=config.fuzzifier, rng=rng)
        return ClusteringResult(
            algorithm="fcm",
            centroids=res.centroids,
            assignment=np.argmax(res.membership, axis=0),
            cost=res.cost,
            cost_trace=res.cost_trace,
            seed=rng,
            membership=res.membership,
            iterations=res.iterations,
            converged=res.converged,
        )
    if algorithm == "pso_kmeans":
        return run_pso_kmeans(data, n_clusters, config.swarm, rng)
    if algorithm == "qpso_kmeans":
        return run_qpso_kmeans(data, n_clusters, config.swarm, rng)
    if algorithm == "fcm_qpso":
        return run_fcm_qpso(data, n_clusters, config.fuzzifier, config.swarm, rng)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def resolve_datasets(
    config: ExperimentConfig,
    datasets: dict[str, Dataset] | None = None,
) -> dict[str, Dataset]:
    """Load every configured dataset, or accept preloaded ones.

    ``datasets`` lets callers supply in-memory data (synthetic blobs,
    tests) under the configured names; anything not supplied is loaded
    from disk through the registry.
    """
    loaded: dict[str, Dataset] = {}
    for name in config.datasets:
        if datasets is not None and name in datasets:
            loaded[name] = datasets[name]
        else:
            loaded[name] = load_dataset(
                name,
                data_dir=config.data_dir,
                policy=config.missing_policy,
                normalize=config.normalize,
            )
    return loaded


def _clusters_for(config: ExperimentConfig, data: Dataset, name: str) -> int:
    if config.n_clusters is not None:
        return config.n_clusters
    if data.labels is None:
        raise ValueError(f"dataset {name!r} has no labels; set n_clusters explicitly")
    return data.n_classes


def run_experiment(
    config: ExperimentConfig,
    datasets: dict[str, Dataset] | None = None,
) -> list[TrialReport]:
    """Every (dataset, algorithm) pair for ``config.trials`` seeded trials.

    Trials run concurrently when ``config.workers`` > 1; results are
    reduced in trial order either way, so the returned reports are
    identical for any worker count.
    """
    loaded = resolve_datasets(config, datasets)
    reports = []
    for name in config.datasets:
        data = loaded[name]
        n_clusters = _clusters_for(config, data, name)
        for algorithm in config.algorithms:
            outcomes = _run_trials(data, algorithm, n_clusters, config)
            rows = tuple(row for row, _ in outcomes)
            best = min(range(len(outcomes)), key=lambda i: (outcomes[i][0].cost, i))
            reports.append(
                TrialReport(
                    dataset=name,
                    algorithm=algorithm,
                    rows=rows,
                    representative=outcomes[best][1],
                )
            )
    return reports


def _run_trials(
    data: Dataset,
    algorithm: str,
    n_clusters: int,
    config: ExperimentConfig,
) -> list[tuple[TrialRow, ClusteringResult]]:
    trials = range(config.trials)
    if config.workers == 1:
        return [run_trial(data, algorithm, n_clusters, config, t) for t in trials]
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        futures = [pool.submit(run_trial, data, algorithm, n_clusters, config, t) for t in trials]
        return [f.result() for f in futures]


# ---------------------------------------------------------------------------
# Emission


def format_cell(mean: float | None, std: float | None) -> str:
    """Render one aggregate as ``mean±std`` at 4 decimals, or ``n/a``."""
    if mean is None or std is None:
        return "n/a"
    return f"{mean:.4f}±{std:.4f}"


def emit_table(reports: list[TrialReport], format: str, path: str | Path) -> Path:
    """Aggregate table for one dataset, one row per algorithm.

    CSV and markdown carry exactly the same cell strings; markdown adds a
    title and a note when std is 0 by the single-trial convention.
    """
    if not reports:
        raise ValueError("reports must be non-empty")
    if format not in TABLE_FORMATS:
        raise ValueError(f"unknown table format {format!r}; choose from {TABLE_FORMATS}")
    names = {r.dataset for r in reports}
    if len(names) != 1:
        raise ValueError(f"one table covers one dataset, got {sorted(names)}")
    dataset = reports[0].dataset

    header = ["Algorithm"] + [title for _, title in METRIC_COLUMNS]
    rows = []
    for report in reports:
        agg = report.aggregate()
        cells = [format_cell(*agg[field_name]) for field_name, _ in METRIC_COLUMNS]
        rows.append([DISPLAY_NAMES[report.algorithm]] + cells)

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        path.write_text(buf.getvalue())
        return path

    lines = [f"# {dataset}", ""]
    lines.append("| " + " | ".join(header) + " |")
    lines.append("| " + " | ".join("---" for _ in header) + " |")
    for row in rows:
        lines.append("| " + " | ".join(row) + " |")
    if any(r.degenerate_std for r in reports):
        lines += ["", "Single trial: std is 0 by convention."]
    path.write_text("\n".join(lines) + "\n")
    return path


def emit_plot_data(
    reports: list[TrialReport],
    result: ClusteringResult | None,
    kind: str,
    path: str | Path,
    data: Dataset | None = None,
) -> Path:
    """Figure-ready records as JSON lines; no rendering here.

    ``accuracy_bars`` uses the aggregates in ``reports``;  ``convergence``
    exports ``result.cost_trace``;  ``cluster_scatter3d`` exports the
    first three coordinates of every point in ``data`` with its cluster id
    plus the centres from ``result``.
    """
    if kind not in PLOT_KINDS:
        raise ValueError(f"unknown plot kind {kind!r}; choose from {PLOT_KINDS}")
    records: list[dict] = []

    if kind == "accuracy_bars":
        if not reports:
            raise ValueError("accuracy_bars needs at least one report")
        for report in reports:
            mean, std = report.aggregate()["accuracy"]
            if mean is None:
                raise ValueError(f"accuracy_bars needs labeled data; {report.dataset} has no accuracy")
            records.append(
                {
                    "kind": kind,
                    "dataset": report.dataset,
                    "algorithm": report.algorithm,
                    "accuracy": mean,
                    "std": std,
                }
            )
    elif kind == "convergence":
        if result is None:
            raise ValueError("convergence needs a ClusteringResult")
        for step, cost in enumerate(np.asarray(result.cost_trace, dtype=float)):
            records.append(
                {
                    "kind": kind,
                    "algorithm": result.algorithm,
                    "step": step,
                    "cost": float(cost),
                }
            )
    else:  # cluster_scatter3d
        if result is None or data is None:
            raise ValueError("cluster_scatter3d needs a ClusteringResult and its Dataset")
        if data.n_dims < 3:
            raise ValueError(f"cluster_scatter3d needs at least 3 dimensions, got {data.n_dims}")
        records.append(
            {
                "kind": kind,
                "algorithm": result.algorithm,
                "n_points": data.n_points,
                "n_clusters": int(result.centroids.shape[0]),
            }
        )
        for i in range(data.n_points):
            records.append(
                {
                    "kind": "point",
                    "cluster": int(result.assignment[i]),
                    "coords": [float(v) for v in data.features[i, :3]],
                }
            )
        for c in range(result.centroids.shape[0]):
            records.append(
                {
                    "kind": "centre",
                    "cluster": c,
                    "coords": [float(v) for v in result.centroids[c, :3]],
                }
            )

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(json.dumps(r, sort_keys=True) + "\n" for r in records))
    return path


def write_trials_csv(report: TrialReport, path: str | Path, base_seed: int) -> Path:
    """Per-trial rows at full float precision so aggregates recompute
    exactly; wall-clock deliberately lives elsewhere (see module doc)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["trial", "seed", "stream", "cost", "iterations"]
        + [field_name for field_name, _ in METRIC_COLUMNS]
    )
    for row in report.rows:
        cells = [str(row.trial), str(base_seed), str(row.trial), repr(float(row.cost)), str(row.iterations)]
        for field_name, _ in METRIC_COLUMNS:
            value = getattr(row.metrics, field_name)
            cells.append("n/a" if value is None else repr(float(value)))
        writer.writerow(cells)
    path.write_text(buf.getvalue())
    return path


def write_timings_csv(report: TrialReport, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["trial", "seconds"])
    for row in report.rows:
        writer.writerow([str(row.trial), f"{row.wall_clock:.6f}"])
    path.write_text(buf.getvalue())
    return path


def write_config(config: ExperimentConfig, path: str | Path) -> Path:
    """Echo the full effective configuration, defaults included."""
    parser = configparser.ConfigParser()
    parser["experiment"] = {
        "datasets": ", ".join(config.datasets),
        "algorithms": ", ".join(config.algorithms),
        "trials": str(config.trials),
        "seed": str(config.seed),
        "fuzzifier": repr(config.fuzzifier),
        "n_clusters": "" if config.n_clusters is None else str(config.n_clusters),
        "normalize": str(config.normalize).lower(),
        "missing_policy": config.missing_policy,
        "data_dir": config.data_dir or "",
        "out_dir": config.out_dir,
        "workers": str(config.workers),
    }
    swarm = config.swarm
    parser["swarm"] = {
        "swarm_size": str(swarm.swarm_size),
        "max_iter": str(swarm.max_iter),
        "c1": repr(swarm.c1),
        "c2": repr(swarm.c2),
        "omega_start": repr(swarm.omega_start),
        "omega_end": repr(swarm.omega_end),
        "beta_start": repr(swarm.beta_start),
        "beta_end": repr(swarm.beta_end),
        "stagnation_window": str(swarm.stagnation_window),
        "stagnation_tol": repr(swarm.stagnation_tol),
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    parser.write(buf)
    path.write_text(buf.getvalue())
    return path


def config_from_file(path: str | Path, **overrides) -> ExperimentConfig:
    """Build a config from an INI file plus keyword overrides.

    Recognized sections: ``[experiment]`` (run settings) and ``[swarm]``
    (optimizer settings).  Unknown keys or sections are errors so typos
    fail loudly instead of silently using defaults.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"config file {path} does not exist")
    parser = configparser.ConfigParser()
    parser.read(path)

    known_experiment = {
        "datasets", "algorithms", "trials", "seed", "fuzzifier", "n_clusters",
        "normalize", "missing_policy", "data_dir", "out_dir", "workers",
    }
    swarm_fields = {f.name: f for f in fields(SwarmConfig) if f.name != "bounds"}
    for section in parser.sections():
        if section not in ("experiment", "swarm"):
            raise ValueError(f"unknown config section [{section}] in {path}")
    for key in parser["experiment"] if parser.has_section("experiment") else []:
        if key not in known_experiment:
            raise ValueError(f"unknown key {key!r} in [experiment] of {path}")
    for key in parser["swarm"] if parser.has_section("swarm") else []:
        if key not in swarm_fields:
            raise ValueError(f"unknown key {key!r} in [swarm] of {path}")

    kwargs: dict = {}
    if parser.has_section("experiment"):
        section = parser["experiment"]

        def split(value: str) -> tuple[str, ...]:
            return tuple(part.strip() for part in value.split(",") if part.strip())

        if "datasets" in section:
            kwargs["datasets"] = split(section["datasets"])
        if "algorithms" in section:
            kwargs["algorithms"] = split(section["algorithms"])
        for key in ("trials", "seed", "workers"):
            if key in section:
                kwargs[key] = section.getint(key)
        if "fuzzifier" in section:
            kwargs["fuzzifier"] = section.getfloat("fuzzifier")
        if section.get("n_clusters", "").strip():
            kwargs["n_clusters"] = section.getint("n_clusters")
        if "normalize" in section:
            kwargs["normalize"] = section.getboolean("normalize")
        if "missing_policy" in section:
            kwargs["missing_policy"] = section["missing_policy"]
        if section.get("data_dir", "").strip():
            kwargs["data_dir"] = section["data_dir"]
        if "out_dir" in section:
            kwargs["out_dir"] = section["out_dir"]

    if parser.has_section("swarm"):
        swarm_kwargs = {}
        section = parser["swarm"]
        for name, f in swarm_fields.items():
            if name in section:
                swarm_kwargs[name] = section.getint(name) if f.type == "int" else section.getfloat(name)
        kwargs["swarm"] = replace(SwarmConfig(), **swarm_kwargs)

    kwargs.update(overrides)
    if "datasets" not in kwargs:
        raise ValueError(f"{path} names no datasets and none were given on the command line")
    return ExperimentConfig(**kwargs)


def write_outputs(
    config: ExperimentConfig,
    reports: list[TrialReport],
    datasets: dict[str, Dataset],
    render: bool = True,
) -> Path:
    """Materialize the whole output tree for one experiment.

    Layout: ``<out>/<dataset>_<algo>_trials.csv``, ``tables/<dataset>.md``
    and ``.csv``, ``figures/*.jsonl`` (plus rendered ``.png`` siblings
    unless ``render`` is off), ``timings/*.csv``, ``config_used.ini``.
    """
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_config(config, out / "config_used.ini")

    by_dataset: dict[str, list[TrialReport]] = {}
    for report in reports:
        by_dataset.setdefault(report.dataset, []).append(report)
        write_trials_csv(report, out / f"{report.dataset}_{report.algorithm}_trials.csv", config.seed)
        write_timings_csv(report, out / "timings" / f"{report.dataset}_{report.algorithm}_timings.csv")

    figure_files: list[Path] = []
    for name, group in by_dataset.items():
        emit_table(group, "markdown", out / "tables" / f"{name}.md")
        emit_table(group, "csv", out / "tables" / f"{name}.csv")

        data = datasets[name]
        figures = out / "figures"
        if data.labels is not None:
            figure_files.append(
                emit_plot_data(group, None, "accuracy_bars", figures / f"{name}_accuracy_bars.jsonl")
            )
        for report in group:
            path = figures / f"{name}_{report.algorithm}_convergence.jsonl"
            figure_files.append(emit_plot_data(group, report.representative, "convergence", path))
            if report.algorithm == "fcm_qpso" and data.n_dims >= 3:
                path = figures / f"{name}_fcm_qpso_scatter3d.jsonl"
                figure_files.append(
                    emit_plot_data(group, report.representative, "cluster_scatter3d", path, data=data)
                )

    if render:
        from . import figures as figure_render

        for jsonl_path in figure_files:
            figure_render.render_file(jsonl_path, jsonl_path.with_suffix(".png"))
    return out


def run_and_emit(
    config: ExperimentConfig,
    datasets: dict[str, Dataset] | None = None,
    render: bool = True,
) -> tuple[list[TrialReport], Path]:
    """Load, run, and write: the full pipeline behind ``bench run``."""
    loaded = resolve_datasets(config, datasets)
    reports = run_experiment(config, loaded)
    out = write_outputs(config, reports, loaded, render=render)
    return reports, out
