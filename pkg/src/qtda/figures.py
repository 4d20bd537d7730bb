"""Figure rendering for report outputs; CSV/JSON stay the machine contract.

Uses the Agg backend so runs work headless.  Figures are a convenience view
of the delimited outputs written next to them, never the other way around.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .classify import ScaleSweepResult
from .complexes import PointCloud
from .experiments import TrialRecord


def save_error_boxplots(records: list[TrialRecord], directory: str | Path) -> list[Path]:
    """One boxplot figure per n: absolute error across the (shots, p) grid."""
    by_n: dict[int, dict[tuple[int, int], list[float]]] = {}
    for rec in records:
        by_n.setdefault(rec.n, {}).setdefault(
            (rec.shots, rec.precision), []
        ).append(float(rec.abs_error))
    paths = []
    for n in sorted(by_n):
        cells = sorted(by_n[n])
        data = [by_n[n][cell] for cell in cells]
        labels = [f"{shots}\np={p}" for shots, p in cells]
        fig, ax = plt.subplots(figsize=(max(6.0, 0.8 * len(cells)), 4.0))
        ax.boxplot(data, tick_labels=labels)
        ax.set_xlabel("shots / precision qubits")
        ax.set_ylabel("absolute error")
        ax.set_title(f"estimation error, n={n}")
        fig.tight_layout()
        path = Path(directory) / f"errors_n{n}.png"
        fig.savefig(path, dpi=120)
        plt.close(fig)
        paths.append(path)
    return paths


def save_accuracy_curve(result: ScaleSweepResult, path: str | Path) -> Path:
    """Training accuracy against grouping scale, best scale marked."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(result.epsilons, result.accuracies, marker="o")
    ax.axvline(result.best_epsilon, linestyle="--", linewidth=1.0)
    ax.set_xlabel("grouping scale")
    ax.set_ylabel("training accuracy")
    ax.set_ylim(0.0, 1.05)
    ax.set_title("accuracy across grouping scales")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def save_cloud_scatter(cloud: PointCloud, path: str | Path, epsilon: float | None = None) -> Path:
    """Scatter of the first two coordinates of an embedded cloud."""
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    xs = cloud.points[:, 0]
    ys = cloud.points[:, 1] if cloud.dim >= 2 else 0.0 * xs
    ax.scatter(xs, ys, s=24)
    ax.set_xlabel("coordinate 0")
    ax.set_ylabel("coordinate 1")
    title = "embedded point cloud"
    if epsilon is not None:
        title += f" (scale {epsilon:g})"
    ax.set_title(title)
    ax.set_aspect("equal", adjustable="datalim")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
