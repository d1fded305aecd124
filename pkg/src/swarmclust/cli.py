"""Command-line benchmark runner.

Exit codes: 0 success, 1 configuration error, 2 missing or bad data,
3 runtime failure.
"""

from __future__ import annotations

import sys

import click

from . import fetch as fetch_helpers
from .bench import ALGORITHMS, DISPLAY_NAMES, ExperimentConfig, config_from_file, run_and_emit
from .datasets import MISSING_POLICIES, MissingDataError, registry, verify_dataset

EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_RUNTIME = 3


@click.group()
def main() -> None:
    """Benchmark fuzzy, crisp, and swarm-optimized clustering algorithms."""


@main.command()
@click.option("--config", "config_path", type=click.Path(), default=None, help="INI file with [experiment] and [swarm] sections.")
@click.option("--dataset", "datasets", multiple=True, help="Dataset name; repeatable. Overrides the config file.")
@click.option("--algorithm", "algorithms", multiple=True, type=click.Choice(ALGORITHMS), help="Algorithm name; repeatable.")
@click.option("--trials", type=int, default=None, help="Independent seeded trials per pair (default 10).")
@click.option("--seed", type=int, default=None, help="Base seed; trial t uses stream t.")
@click.option("--out", "out_dir", type=click.Path(), default=None, help="Output directory (default results).")
@click.option("--no-normalize", is_flag=True, help="Skip min-max scaling of features.")
@click.option("--data-dir", type=click.Path(), default=None, help="Directory holding the data files.")
@click.option("--missing-policy", type=click.Choice(MISSING_POLICIES), default=None, help="How to treat missing feature values.")
@click.option("--workers", type=int, default=None, help="Concurrent trials (default 1; any value gives identical results).")
@click.option("--no-figures", is_flag=True, help="Skip PNG rendering; figure data files are still written.")
def run(
    config_path,
    datasets,
    algorithms,
    trials,
    seed,
    out_dir,
    no_normalize,
    data_dir,
    missing_policy,
    workers,
    no_figures,
) -> None:
    """Run seeded multi-trial comparisons and write tables and figures."""
    overrides: dict = {}
    if datasets:
        overrides["datasets"] = tuple(datasets)
    if algorithms:
        overrides["algorithms"] = tuple(algorithms)
    if trials is not None:
        overrides["trials"] = trials
    if seed is not None:
        overrides["seed"] = seed
    if out_dir is not None:
        overrides["out_dir"] = out_dir
    if no_normalize:
        overrides["normalize"] = False
    if data_dir is not None:
        overrides["data_dir"] = data_dir
    if missing_policy is not None:
        overrides["missing_policy"] = missing_policy
    if workers is not None:
        overrides["workers"] = workers

    try:
        if config_path is not None:
            config = config_from_file(config_path, **overrides)
        else:
            if not datasets:
                raise ValueError("name at least one dataset with --dataset, or provide --config")
            config = ExperimentConfig(**overrides)
        known = registry()
        unknown = [name for name in config.datasets if name not in known]
        if unknown:
            raise ValueError(f"unknown dataset(s) {unknown}; registered: {sorted(known)}")
    except (ValueError, TypeError, FileNotFoundError) as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)

    try:
        reports, out = run_and_emit(config, render=not no_figures)
    except MissingDataError as exc:
        click.echo(f"missing data: {exc}", err=True)
        sys.exit(EXIT_DATA)
    except Exception as exc:
        click.echo(f"run failed: {exc}", err=True)
        sys.exit(EXIT_RUNTIME)

    for report in reports:
        agg = report.aggregate()
        f_mean, _ = agg["f_measure"]
        qe_mean, _ = agg["quantization_error"]
        f_text = "n/a" if f_mean is None else f"{f_mean:.4f}"
        click.echo(
            f"{report.dataset} / {DISPLAY_NAMES[report.algorithm]}: "
            f"F-measure {f_text}, quantization error {qe_mean:.4f} "
            f"({report.n_trials} trials)"
        )
    click.echo(f"wrote {out}")


@main.group(name="datasets")
def datasets_group() -> None:
    """Fetch and verify the benchmark data files."""


@datasets_group.command(name="fetch")
@click.option("--data-dir", type=click.Path(), default=None, help="Directory to place the files in.")
@click.option("--dataset", "names", multiple=True, help="Dataset name; repeatable. Default: all registered.")
@click.option("--force", is_flag=True, help="Redownload even when the file exists.")
@click.option("--iris-from-sklearn", "iris_sklearn", is_flag=True, help="Build the iris file from scikit-learn's bundled copy (no network).")
def datasets_fetch(data_dir, names, force, iris_sklearn) -> None:
    """Download the registered datasets and record their checksums."""
    try:
        fetched, errors = fetch_helpers.fetch_all(
            list(names) or None,
            data_dir=data_dir,
            force=force,
            iris_from_sklearn_copy=iris_sklearn,
        )
    except KeyError as exc:
        click.echo(f"config error: {exc.args[0]}", err=True)
        sys.exit(EXIT_CONFIG)
    for name, path in sorted(fetched.items()):
        click.echo(f"{name}: {path}")
    for name, message in sorted(errors.items()):
        click.echo(f"{name}: FAILED ({message})", err=True)
    if errors:
        sys.exit(EXIT_RUNTIME)


@datasets_group.command(name="verify")
@click.option("--data-dir", type=click.Path(), default=None, help="Directory holding the data files.")
@click.option("--dataset", "names", multiple=True, help="Dataset name; repeatable. Default: all registered.")
def datasets_verify(data_dir, names) -> None:
    """Check file checksums and expected table shapes."""
    reg = registry()
    selected = list(names) or sorted(reg)
    unknown = [n for n in selected if n not in reg]
    if unknown:
        click.echo(f"config error: unknown dataset(s) {unknown}; registered: {sorted(reg)}", err=True)
        sys.exit(EXIT_CONFIG)

    failed = False
    for name in selected:
        problems, notes = verify_dataset(reg[name], data_dir=data_dir)
        for note in notes:
            click.echo(note)
        if problems:
            failed = True
            for problem in problems:
                click.echo(problem, err=True)
        else:
            click.echo(f"{name}: OK")
    if failed:
        sys.exit(EXIT_DATA)


if __name__ == "__main__":
    main()
