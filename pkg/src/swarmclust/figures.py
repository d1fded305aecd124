"""Batch rendering of figure-data files to PNG images.

Each ``.jsonl`` file written by the experiment runner is self-describing
(its first record names the plot kind), so rendering is a pure function of
the file: same records, same image.  Everything draws through the Agg
backend; no display is ever opened.
"""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

from matplotlib import cm  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402
from mpl_toolkits.mplot3d import Axes3D  # noqa: F401,E402

from .bench import DISPLAY_NAMES  # noqa: E402

PNG_METADATA = {"Software": "swarmclust"}  # fixed so reruns rewrite identical bytes


def load_records(path: str | Path) -> list[dict]:
    lines = Path(path).read_text().splitlines()
    return [json.loads(line) for line in lines if line.strip()]


def render_file(jsonl_path: str | Path, png_path: str | Path) -> Path:
    """Render one figure-data file; the plot kind comes from the records."""
    records = load_records(jsonl_path)
    if not records:
        raise ValueError(f"{jsonl_path} holds no records")
    kind = records[0].get("kind")
    if kind == "accuracy_bars":
        return render_accuracy_bars(records, png_path)
    if kind == "convergence":
        return render_convergence(records, png_path)
    if kind == "cluster_scatter3d":
        return render_scatter3d(records, png_path)
    raise ValueError(f"unknown plot kind {kind!r} in {jsonl_path}")


def _display(algorithm: str) -> str:
    return DISPLAY_NAMES.get(algorithm, algorithm)


def _save(fig: Figure, png_path: str | Path) -> Path:
    png_path = Path(png_path)
    png_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(png_path, dpi=100, metadata=PNG_METADATA)
    return png_path


def render_accuracy_bars(records: list[dict], png_path: str | Path) -> Path:
    names = [_display(r["algorithm"]) for r in records]
    values = [r["accuracy"] for r in records]
    errors = [r.get("std") or 0.0 for r in records]
    dataset = records[0].get("dataset", "")

    fig = Figure(figsize=(6.4, 4.8))
    ax = fig.add_subplot()
    ax.bar(names, values, yerr=errors, capsize=4, color="tab:blue")
    ax.set_ylim(0.0, 1.0)
    ax.set_ylabel("Accuracy")
    ax.set_title(f"Accuracy on {dataset}")
    ax.tick_params(axis="x", rotation=20)
    fig.tight_layout()
    return _save(fig, png_path)


def render_convergence(records: list[dict], png_path: str | Path) -> Path:
    steps = [r["step"] for r in records]
    costs = [r["cost"] for r in records]
    algorithm = records[0].get("algorithm", "")

    fig = Figure(figsize=(6.4, 4.8))
    ax = fig.add_subplot()
    ax.plot(steps, costs, color="tab:blue")
    ax.set_xlabel("Iteration")
    ax.set_ylabel("Cost")
    ax.set_title(f"Convergence of {_display(algorithm)}")
    fig.tight_layout()
    return _save(fig, png_path)


def render_scatter3d(records: list[dict], png_path: str | Path) -> Path:
    header = records[0]
    points = [r for r in records if r["kind"] == "point"]
    centres = [r for r in records if r["kind"] == "centre"]
    n_clusters = header.get("n_clusters", len(centres))
    colors = cm.tab10(range(max(n_clusters, 1)))

    fig = Figure(figsize=(6.4, 4.8))
    ax = fig.add_subplot(projection="3d")
    for c in range(n_clusters):
        coords = [r["coords"] for r in points if r["cluster"] == c]
        if coords:
            xs, ys, zs = zip(*coords)
            ax.scatter(xs, ys, zs, color=colors[c], s=12, label=f"cluster {c}")
    for r in centres:
        x, y, z = r["coords"]
        ax.scatter([x], [y], [z], color="black", marker="x", s=80, linewidths=2)
    ax.set_title(f"Clusters from {_display(header.get('algorithm', ''))}")
    ax.legend(loc="upper right", fontsize="small")
    return _save(fig, png_path)
