"""Command-line interface.

Subcommands: betti (single estimate), example (built-in worked example with
golden checks), sweep (random-complex error grid), decompose (Pauli terms of
a matrix), classify (time-series pipeline), embed (delay embedding export).

Human-readable tables go to standard output; machine formats are written
under --output together with a manifest.json recording inputs, flags, seed,
and version.  Exit codes: 0 success, 1 golden mismatch, 2 empty homology
dimension, 3 resource limit, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .classify import classify_dataset, grouping_scale_sweep
from .complexes import build_complex, build_rips_graph, exact_betti, laplacian
from .embedding import (
    CORPUS_EMBEDDING,
    CORPUS_EPSILON,
    EmbeddingConfig,
    make_synthetic_corpus,
    takens_embed,
)
from .errors import EmptyDimensionError, ResourceLimitError
from .example import run_example
from .experiments import SweepConfig, run_sweep, summarize
from .hamiltonian import pauli_decompose, prepare_hamiltonian
from .io import (
    read_matrix_csv,
    read_point_cloud_csv,
    read_time_series_csv,
    write_features_csv,
    write_json,
    write_manifest,
    write_point_cloud_csv,
    write_results_csv,
    write_summary_csv,
)
from .qpe import QpeConfig, analytic_estimate, qpe_betti


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}")
    if not values:
        raise UsageError("empty list")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qtda", description=__doc__)
    parser.add_argument("--version", action="version", version=f"qtda {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="base RNG seed (default 0)")
    common.add_argument("--output", type=str, default=None,
                        help="directory for machine-readable outputs")
    common.add_argument("--format", choices=("json", "csv"), default="json",
                        help="serialization for the primary structured output")
    sub = parser.add_subparsers(dest="command", required=True)

    p_betti = sub.add_parser("betti", parents=[common],
                             help="estimate one Betti number of a point cloud")
    p_betti.add_argument("--points", required=True, help="point-cloud CSV, one point per row")
    p_betti.add_argument("--header", action="store_true", help="skip one CSV header line")
    p_betti.add_argument("--epsilon", type=float, required=True, help="grouping scale")
    p_betti.add_argument("--k", type=int, default=1, help="homology dimension")
    p_betti.add_argument("--precision", type=int, default=4, help="precision qubits")
    p_betti.add_argument("--shots", type=int, default=1000)
    p_betti.add_argument("--mode", choices=("exact", "trotter"), default="exact")
    p_betti.add_argument("--trotter-steps", type=int, default=1)
    p_betti.add_argument("--mixed-state", choices=("auxiliary", "sampled"), default="auxiliary")
    p_betti.add_argument("--delta", type=float, default=6.0, help="spectral rescale target")
    p_betti.add_argument("--analytic", action="store_true",
                         help="shot-free readout distribution instead of sampling")
    p_betti.set_defaults(func=cmd_betti)

    p_example = sub.add_parser("example", parents=[common],
                               help="run the built-in worked example against its goldens")
    p_example.add_argument("--precision", type=int, default=3)
    p_example.add_argument("--shots", type=int, default=1000)
    p_example.set_defaults(func=cmd_example)

    p_sweep = sub.add_parser("sweep", parents=[common],
                             help="error statistics over random complexes")
    p_sweep.add_argument("--config", type=str, default=None,
                         help="JSON file with sweep settings (flags override)")
    p_sweep.add_argument("--n", type=_int_list, default=None,
                         help="comma-separated vertex counts")
    p_sweep.add_argument("--complexes", type=int, default=None, help="instances per n")
    p_sweep.add_argument("--shots", type=_int_list, default=None)
    p_sweep.add_argument("--precision", type=_int_list, default=None)
    p_sweep.add_argument("--edge-prob", type=float, default=None)
    p_sweep.add_argument("--k", type=str, default=None,
                         help='homology dimension, or "auto"')
    p_sweep.set_defaults(func=cmd_sweep)

    p_dec = sub.add_parser("decompose", parents=[common],
                           help="Pauli decomposition of a symmetric matrix")
    p_dec.add_argument("--matrix", required=True, help="matrix CSV (2^q x 2^q)")
    p_dec.add_argument("--header", action="store_true", help="skip one CSV header line")
    p_dec.set_defaults(func=cmd_decompose)

    p_cls = sub.add_parser("classify", parents=[common],
                           help="time-series classification via Betti features")
    p_cls.add_argument("--train", type=str, default=None,
                       help="time-series CSV (label,v1,...); default: synthetic corpus")
    p_cls.add_argument("--synthetic", type=int, default=40,
                       help="synthetic corpus size when --train is absent")
    p_cls.add_argument("--epsilon", type=float, default=None,
                       help="fixed grouping scale (skips the sweep)")
    p_cls.add_argument("--eps-min", type=float, default=None)
    p_cls.add_argument("--eps-max", type=float, default=None)
    p_cls.add_argument("--eps-steps", type=int, default=None)
    p_cls.add_argument("--precision", type=int, default=4)
    p_cls.add_argument("--shots", type=int, default=100)
    p_cls.add_argument("--analytic", action="store_true",
                       help="shot-free estimator for features")
    p_cls.add_argument("--exact", action="store_true",
                       help="exact oracle features (no quantum pipeline)")
    p_cls.add_argument("--dimension", "-d", type=int, default=None, help="embedding dimension")
    p_cls.add_argument("--tau", type=int, default=None, help="embedding delay")
    p_cls.add_argument("--stride", type=int, default=None)
    p_cls.add_argument("--train-fraction", type=float, default=0.2)
    p_cls.set_defaults(func=cmd_classify)

    p_emb = sub.add_parser("embed", parents=[common],
                           help="delay-embed one series into a point cloud CSV")
    p_emb.add_argument("--series", required=True, help="time-series CSV (label,v1,...)")
    p_emb.add_argument("--index", type=int, default=0, help="row of the series to embed")
    p_emb.add_argument("--dimension", "-d", type=int, default=2)
    p_emb.add_argument("--tau", type=int, default=1)
    p_emb.add_argument("--stride", type=int, default=16)
    p_emb.set_defaults(func=cmd_embed)

    return parser


def _print_config(name: str, settings: dict) -> None:
    print(f"{name} config: {json.dumps(settings, sort_keys=True, default=str)}")


def _out_dir(args) -> Path | None:
    if args.output is None:
        return None
    path = Path(args.output)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_structured(data: dict, directory: Path, stem: str, fmt: str) -> Path:
    if fmt == "json":
        path = directory / f"{stem}.json"
        write_json(data, path)
    else:
        path = directory / f"{stem}.csv"
        import csv as _csv
        with open(path, "w", newline="") as fh:
            writer = _csv.writer(fh)
            writer.writerow(list(data))
            writer.writerow([data[k] for k in data])
    return path


def cmd_betti(args) -> int:
    if not args.analytic and args.shots < 1:
        raise UsageError("shots must be positive (use --analytic for the shot-free oracle)")
    settings = {
        "points": args.points, "epsilon": args.epsilon, "k": args.k,
        "precision": args.precision, "shots": 0 if args.analytic else args.shots,
        "mode": args.mode, "mixed_state": args.mixed_state, "delta": args.delta,
        "analytic": args.analytic, "seed": args.seed, "format": args.format,
    }
    _print_config("betti", settings)
    cloud = read_point_cloud_csv(args.points, skip_header=args.header)
    cx = build_complex(build_rips_graph(cloud, args.epsilon),
                       min(args.k + 1, cloud.n - 1))
    if cx.size(args.k) == 0:
        raise EmptyDimensionError(
            f"no {args.k}-simplices at grouping scale {args.epsilon}"
        )
    exact = exact_betti(cx, args.k)
    ham = prepare_hamiltonian(laplacian(cx, args.k), args.delta)
    started = time.perf_counter()
    if args.analytic:
        estimate = analytic_estimate(ham, args.precision)
    else:
        estimate = qpe_betti(ham, QpeConfig(
            precision=args.precision,
            shots=args.shots,
            seed=args.seed,
            evolution_mode=args.mode,
            trotter_steps=args.trotter_steps,
            mixed_state_mode=args.mixed_state,
        ))
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    print(f"|S_{args.k}| = {cx.size(args.k)}, state qubits q = {estimate.num_state_qubits}")
    print(f"exact beta_{args.k} = {exact}")
    print(f"p(0) = {estimate.p_zero}" +
          (f" ~= {float(estimate.p_zero):.6f}" if isinstance(estimate.p_zero, Fraction) else ""))
    print(f"estimated beta_{args.k} = {estimate.beta_raw} "
          f"~= {float(estimate.beta_raw):.6f} -> rounds to {estimate.beta}")
    print(f"wall time: {elapsed_ms:.1f} ms")
    out = _out_dir(args)
    if out is not None:
        path = _write_structured(estimate.to_json_dict(), out, "estimate", args.format)
        write_manifest(out, "betti", settings, [args.points], args.seed, __version__)
        print(f"wrote {path}")
    return 0


def cmd_example(args) -> int:
    settings = {"precision": args.precision, "shots": args.shots, "seed": args.seed}
    _print_config("example", settings)
    report = run_example(precision=args.precision, shots=args.shots, seed=args.seed)

    def show(name, mat):
        print(f"{name} =")
        print(np.array2string(np.asarray(mat), precision=4, suppress_small=True))

    show("boundary_1", report.d1)
    show("boundary_2", report.d2)
    show("laplacian_1", report.delta1)
    show("padded hamiltonian", report.hamiltonian.matrix)
    print(f"spectral bound = {report.hamiltonian.lambda_max_bound}")
    print(f"pauli terms ({len(report.decomposition.terms)}):")
    for line in report.decomposition.to_lines():
        print(f"  {line}")
    print(f"exact beta_1 = {report.exact_beta1}")
    print(f"analytic p(0) at p={args.precision}: {report.analytic_p_zero:.6f}")
    est = report.estimate
    print(f"sampled p(0) = {est.p_zero} ~= {float(est.p_zero):.4f}, "
          f"beta_1 estimate = {float(est.beta_raw):.4f} -> rounds to {est.beta}")
    out = _out_dir(args)
    if out is not None:
        (out / "decomposition.txt").write_text(
            "\n".join(report.decomposition.to_lines()) + "\n")
        _write_structured(est.to_json_dict(), out, "estimate", args.format)
        write_manifest(out, "example", settings, [], args.seed, __version__)
    if not report.passed:
        for problem in report.mismatches:
            print(f"GOLDEN MISMATCH: {problem}", file=sys.stderr)
        return 1
    print("all golden checks passed")
    return 0


def _load_sweep_config(args) -> SweepConfig:
    base: dict = {}
    if args.config:
        with open(args.config) as fh:
            base = json.load(fh)
        allowed = set(SweepConfig.__dataclass_fields__)
        unknown = set(base) - allowed
        if unknown:
            raise UsageError(f"unknown sweep config keys: {sorted(unknown)}")
        for key in ("n_values", "shot_grid", "precision_grid"):
            if key in base:
                base[key] = tuple(base[key])
    if args.n is not None:
        base["n_values"] = args.n
    if args.complexes is not None:
        base["complexes_per_n"] = args.complexes
    if args.shots is not None:
        base["shot_grid"] = args.shots
    if args.precision is not None:
        base["precision_grid"] = args.precision
    if args.edge_prob is not None:
        base["edge_prob"] = args.edge_prob
    if args.k is not None:
        base["k_policy"] = args.k if args.k == "auto" else int(args.k)
    if args.seed_explicit or "base_seed" not in base:
        base["base_seed"] = args.seed
    try:
        return SweepConfig(**base)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc))


def cmd_sweep(args) -> int:
    if args.output is None:
        raise UsageError("sweep writes CSV files; --output is required")
    cfg = _load_sweep_config(args)
    settings = {f: getattr(cfg, f) for f in SweepConfig.__dataclass_fields__}
    _print_config("sweep", settings)
    records = run_sweep(cfg)
    if not records:
        print("no runnable cells in this configuration", file=sys.stderr)
        return 2
    rows = summarize(records)
    out = _out_dir(args)
    write_results_csv(records, out / "results.csv")
    write_summary_csv(rows, out / "summary.csv")
    from .figures import save_error_boxplots
    figure_paths = save_error_boxplots(records, out)
    write_manifest(out, "sweep", settings,
                   [args.config] if args.config else [], cfg.base_seed, __version__)
    print(f"{'n':>4} {'shots':>7} {'p':>3} {'median':>10} {'mean':>10} {'count':>6}")
    for row in rows:
        print(f"{row.n:>4} {row.shots:>7} {row.precision:>3} "
              f"{row.median:>10.4f} {row.mean:>10.4f} {row.count:>6}")
    print(f"wrote {out / 'results.csv'}, {out / 'summary.csv'}, "
          f"{len(figure_paths)} figure(s)")
    return 0


def cmd_decompose(args) -> int:
    settings = {"matrix": args.matrix, "format": args.format}
    _print_config("decompose", settings)
    matrix = read_matrix_csv(args.matrix, skip_header=args.header)
    decomp = pauli_decompose(matrix)
    lines = decomp.to_lines()
    for line in lines:
        print(line)
    out = _out_dir(args)
    if out is not None:
        (out / "decomposition.txt").write_text("\n".join(lines) + "\n")
        write_manifest(out, "decompose", settings, [args.matrix], args.seed, __version__)
        print(f"wrote {out / 'decomposition.txt'}")
    return 0


def cmd_classify(args) -> int:
    if args.exact and args.analytic:
        raise UsageError("--exact and --analytic are mutually exclusive")
    if args.train:
        samples = read_time_series_csv(args.train)
        embed_cfg = EmbeddingConfig(
            dimension=args.dimension if args.dimension else 2,
            delay=args.tau if args.tau else 1,
            stride=args.stride if args.stride else 16,
        )
    else:
        samples = make_synthetic_corpus(args.synthetic, seed=args.seed)
        embed_cfg = EmbeddingConfig(
            dimension=args.dimension if args.dimension else CORPUS_EMBEDDING.dimension,
            delay=args.tau if args.tau else CORPUS_EMBEDDING.delay,
            stride=args.stride if args.stride else CORPUS_EMBEDDING.stride,
        )
    sweep_flags = (args.eps_min, args.eps_max, args.eps_steps)
    if args.epsilon is None and any(v is None for v in sweep_flags):
        if all(v is None for v in sweep_flags) and not args.train:
            epsilon, sweep_result = CORPUS_EPSILON, None
        else:
            raise UsageError("pass --epsilon, or all of --eps-min/--eps-max/--eps-steps")
    elif args.epsilon is not None:
        epsilon, sweep_result = args.epsilon, None
    else:
        sweep_result = grouping_scale_sweep(
            samples, embed_cfg, args.eps_min, args.eps_max, args.eps_steps,
            base_seed=args.seed,
        )
        epsilon = sweep_result.best_epsilon
    qpe_cfg = None
    precision = None
    if args.exact:
        estimator = "exact"
    elif args.analytic:
        estimator = "analytic"
        precision = args.precision
    else:
        estimator = "sampled"
        if args.shots < 1:
            raise UsageError("shots must be positive (or pass --analytic / --exact)")
        qpe_cfg = QpeConfig(precision=args.precision, shots=args.shots)
    settings = {
        "train": args.train, "synthetic": None if args.train else args.synthetic,
        "epsilon": epsilon, "estimator": estimator,
        "precision": None if args.exact else args.precision,
        "shots": args.shots if estimator == "sampled" else 0,
        "dimension": embed_cfg.dimension, "tau": embed_cfg.delay,
        "stride": embed_cfg.stride, "train_fraction": args.train_fraction,
        "seed": args.seed,
    }
    _print_config("classify", settings)
    report = classify_dataset(
        samples, embed_cfg, epsilon,
        qpe=qpe_cfg, precision=precision, exact=args.exact,
        train_fraction=args.train_fraction, split_seed=args.seed,
        base_seed=args.seed,
    )
    print(f"samples: {len(samples)} (train {len(report.train_indices)}, "
          f"validation {len(samples) - len(report.train_indices)})")
    if sweep_result is not None:
        curve = ", ".join(f"{e:.3g}:{a:.3f}"
                          for e, a in zip(sweep_result.epsilons, sweep_result.accuracies))
        print(f"scale sweep accuracy: {curve}")
        print(f"best grouping scale: {sweep_result.best_epsilon:.6g}")
    print(f"training accuracy:   {report.train_accuracy:.4f}")
    print(f"validation accuracy: {report.validation_accuracy:.4f}")
    out = _out_dir(args)
    if out is not None:
        metrics = {
            "epsilon": report.epsilon,
            "train_accuracy": report.train_accuracy,
            "validation_accuracy": report.validation_accuracy,
            "num_samples": len(samples),
            "estimator": estimator,
            "sweep": None if sweep_result is None else {
                "epsilons": list(sweep_result.epsilons),
                "accuracies": list(sweep_result.accuracies),
                "best_epsilon": sweep_result.best_epsilon,
            },
        }
        _write_structured(
            metrics if args.format == "json" else {
                k: v for k, v in metrics.items() if not isinstance(v, dict)
            },
            out, "metrics", args.format)
        write_features_csv(report.labels, list(report.features), out / "features.csv")
        if sweep_result is not None:
            from .figures import save_accuracy_curve
            save_accuracy_curve(sweep_result, out / "accuracy_curve.png")
        write_manifest(out, "classify", settings,
                       [args.train] if args.train else [], args.seed, __version__)
        print(f"wrote metrics and features under {out}")
    return 0


def cmd_embed(args) -> int:
    settings = {
        "series": args.series, "index": args.index,
        "dimension": args.dimension, "tau": args.tau, "stride": args.stride,
    }
    _print_config("embed", settings)
    samples = read_time_series_csv(args.series)
    if not 0 <= args.index < len(samples):
        raise UsageError(f"--index {args.index} outside 0..{len(samples) - 1}")
    cfg = EmbeddingConfig(dimension=args.dimension, delay=args.tau, stride=args.stride)
    cloud = takens_embed(samples[args.index].values, cfg)
    print(f"embedded {cloud.n} points in R^{cloud.dim}")
    out = _out_dir(args)
    if out is not None:
        write_point_cloud_csv(cloud, out / "points.csv")
        from .figures import save_cloud_scatter
        save_cloud_scatter(cloud, out / "points.png")
        write_manifest(out, "embed", settings, [args.series], args.seed, __version__)
        print(f"wrote {out / 'points.csv'}")
    else:
        for row in cloud.points:
            print(",".join(repr(float(v)) for v in row))
    return 0


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 64
    # remember whether --seed was given so a sweep config's base_seed can win
    args.seed_explicit = args.seed is not None
    if args.seed is None:
        args.seed = 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 64
    except EmptyDimensionError as exc:
        print(f"empty dimension: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 64


if __name__ == "__main__":
    sys.exit(main())
