"""File formats: point clouds, time series, matrices, sweep CSVs, manifests.

All delimited output is plain csv-module writing with float repr, so a run
with the same inputs and seeds reproduces files byte for byte.  Manifests
carry inputs, flags, seed, and the tool version; deliberately no timestamps,
for the same reason.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .classify import FeatureVector
from .complexes import PointCloud
from .embedding import TimeSeriesSample
from .experiments import SummaryRow, TrialRecord

RESULTS_HEADER = ["n", "seed", "k", "exact_beta", "beta_raw", "beta_rounded",
                  "shots", "precision", "abs_error", "wall_ms"]
SUMMARY_HEADER = ["n", "shots", "precision", "min", "q1", "median", "q3",
                  "max", "mean", "count"]
FEATURES_HEADER = ["label", "beta0", "beta1", "epsilon"]


def read_point_cloud_csv(path: str | Path, skip_header: bool = False) -> PointCloud:
    """One point per row, comma-separated coordinates, no header by default."""
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for i, row in enumerate(reader):
            if skip_header and i == 0:
                continue
            if not row:
                continue
            rows.append([float(v) for v in row])
    if not rows:
        raise ValueError(f"{path}: no points found")
    return PointCloud(np.array(rows))


def write_point_cloud_csv(cloud: PointCloud, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in cloud.points:
            writer.writerow([repr(float(v)) for v in row])


def read_time_series_csv(path: str | Path) -> list[TimeSeriesSample]:
    """label,v1,v2,... one sample per row."""
    samples = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row:
                continue
            if len(row) < 2:
                raise ValueError(f"{path}: row needs a label and at least one value")
            samples.append(TimeSeriesSample(
                values=np.array([float(v) for v in row[1:]]),
                label=int(row[0]),
            ))
    if not samples:
        raise ValueError(f"{path}: no samples found")
    return samples


def write_time_series_csv(samples: list[TimeSeriesSample], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for s in samples:
            writer.writerow([s.label] + [repr(float(v)) for v in s.values])


def read_matrix_csv(path: str | Path, skip_header: bool = False) -> np.ndarray:
    """Dense numeric matrix, one row per line."""
    rows = []
    with open(path, newline="") as fh:
        for i, row in enumerate(csv.reader(fh)):
            if skip_header and i == 0:
                continue
            if not row:
                continue
            rows.append([float(v) for v in row])
    if not rows:
        raise ValueError(f"{path}: empty matrix")
    arr = np.array(rows)
    if arr.ndim != 2 or len({len(r) for r in rows}) != 1:
        raise ValueError(f"{path}: rows have inconsistent lengths")
    return arr


def read_six_features_csv(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """label,f1,...,f6 per row; returns (labels, 6-column feature matrix)."""
    labels, feats = [], []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row:
                continue
            if len(row) != 7:
                raise ValueError(f"{path}: expected label plus 6 features per row")
            labels.append(int(row[0]))
            feats.append([float(v) for v in row[1:]])
    if not labels:
        raise ValueError(f"{path}: no rows found")
    return np.array(labels, dtype=int), np.array(feats)


def write_features_csv(labels, features: list[FeatureVector], path: str | Path) -> None:
    """label,beta0,beta1,epsilon with a header row."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(FEATURES_HEADER)
        for label, f in zip(labels, features):
            writer.writerow([int(label), repr(f.beta0), repr(f.beta1), repr(f.epsilon)])


def write_results_csv(records: list[TrialRecord], path: str | Path) -> None:
    """Raw per-trial rows; wall_ms varies run to run, so the summary CSV is
    the reproducibility contract, not this file."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESULTS_HEADER)
        for r in records:
            writer.writerow([
                r.n, r.seed, r.k, r.exact_beta,
                repr(float(r.beta_raw)), r.beta_rounded,
                r.shots, r.precision,
                repr(float(r.abs_error)),
                repr(r.wall_seconds * 1000.0),
            ])


def write_summary_csv(rows: list[SummaryRow], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_HEADER)
        for s in rows:
            writer.writerow([
                s.n, s.shots, s.precision,
                repr(s.minimum), repr(s.q1), repr(s.median),
                repr(s.q3), repr(s.maximum), repr(s.mean), s.count,
            ])


def write_json(data: dict, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_manifest(directory: str | Path, command: str, arguments: dict,
                   inputs: list[str], seed: int | None, version: str) -> Path:
    """Reproducibility record for an output directory; no timestamps on purpose."""
    path = Path(directory) / "manifest.json"
    write_json({
        "tool": "qtda",
        "version": version,
        "command": command,
        "arguments": arguments,
        "inputs": inputs,
        "seed": seed,
    }, path)
    return path
