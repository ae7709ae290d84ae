"""Command line interface.

Subcommands:

* ``train``      fit a forest on a delimited dataset file, write a model file
* ``evaluate``   score a saved model against a test file
* ``importance`` dump a saved model's temporal importance curves as CSV
* ``benchmark``  run forests and nearest-neighbor baselines over a directory
  of TRAIN/TEST pairs, emit a long-format CSV and an average-rank summary
* ``synth``      generate one of the synthetic datasets and write it out

Every command prints one human-readable report line per result to stdout.
Exit status is 0 on success and 1 on any failure (bad file, length mismatch,
unknown flag values); argparse itself exits 2 on malformed flags.
"""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .baselines import NO_WINDOW, WarpingWindow, best_warping_window, nn_error_rate
from .datasets import (
    generate_noise_dataset,
    generate_shifted_dataset,
    load_ucr,
    save_ucr,
    scaled_spec,
)
from .errors import TsforestError
from .forest import ForestConfig, evaluate, fit, load_model, save_model
from .importance import curves_to_csv, importance_curves
from .tree import TreeConfig

__all__ = ["main", "RunReport"]

REPORT_HEADER = "dataset,method,seed,error,seconds"


@dataclass(frozen=True)
class RunReport:
    """One (dataset, method, seed) result."""

    dataset: str
    method: str
    seed: int
    error: float
    seconds: float

    def csv_row(self) -> str:
        return (
            f"{self.dataset},{self.method},{self.seed},"
            f"{self.error:.6f},{self.seconds:.3f}"
        )

    def line(self) -> str:
        return (
            f"dataset={self.dataset} method={self.method} seed={self.seed} "
            f"error={self.error:.4f} seconds={self.seconds:.2f}"
        )


def _write_report(path, reports: Sequence[RunReport]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(REPORT_HEADER + "\n")
        for r in reports:
            fh.write(r.csv_row() + "\n")


def _forest_config(args, seed: int) -> ForestConfig:
    return ForestConfig(
        n_trees=args.n_trees,
        tree=TreeConfig(kappa=args.kappa),
        master_seed=seed,
        criterion=args.criterion,
    )


def _cmd_train(args) -> int:
    data = load_ucr(args.train_path)
    config = _forest_config(args, args.seed)
    started = time.perf_counter()
    forest = fit(data, config, n_jobs=args.threads)
    elapsed = time.perf_counter() - started
    save_model(forest, args.model_out)
    report = RunReport(
        dataset=Path(args.train_path).stem,
        method=_method_name(args.criterion),
        seed=args.seed,
        error=evaluate(forest, data),
        seconds=elapsed,
    )
    print(report.line())
    print(f"model written to {args.model_out}")
    return 0


def _method_name(criterion: str) -> str:
    return "tsf" if criterion == "entrance" else "tsf-entropy"


def _cmd_evaluate(args) -> int:
    forest = load_model(args.model_in)
    test = load_ucr(args.test_path)
    started = time.perf_counter()
    error = evaluate(forest, test)
    elapsed = time.perf_counter() - started
    report = RunReport(
        dataset=Path(args.test_path).stem,
        method=_method_name(forest.config.criterion),
        seed=forest.config.master_seed,
        error=error,
        seconds=elapsed,
    )
    print(report.line())
    if args.report_out:
        _write_report(args.report_out, [report])
        print(f"report written to {args.report_out}")
    return 0


def _cmd_importance(args) -> int:
    forest = load_model(args.model_in)
    curves = importance_curves(forest)
    curves_to_csv(curves, args.csv_out, normalize=args.normalize)
    print(f"importance curves for {forest.n_trees} trees written to {args.csv_out}")
    return 0


def _discover_pairs(data_dir: Path) -> list[tuple[str, Path, Path]]:
    pairs = []
    for train_path in sorted(data_dir.rglob("*TRAIN*")):
        if not train_path.is_file():
            continue
        test_path = Path(str(train_path).replace("TRAIN", "TEST"))
        if test_path.is_file():
            name = train_path.name
            name = name[: name.index("TRAIN")].rstrip("_.") or train_path.parent.name
            pairs.append((name, train_path, test_path))
    return pairs


def _run_method(method: str, train, test, seed: int, args) -> RunReport:
    started = time.perf_counter()
    if method in ("tsf", "tsf-entropy"):
        criterion = "entrance" if method == "tsf" else "entropy"
        config = ForestConfig(
            n_trees=args.n_trees,
            tree=TreeConfig(kappa=args.kappa),
            master_seed=seed,
            criterion=criterion,
        )
        forest = fit(train, config, n_jobs=args.threads)
        error = evaluate(forest, test)
    elif method == "nn-euclidean":
        error = nn_error_rate(train, test, metric="euclidean")
    elif method == "dtw-nowin":
        error = nn_error_rate(train, test, metric="dtw", window=NO_WINDOW)
    elif method == "dtw-best":
        window = best_warping_window(train)
        error = nn_error_rate(train, test, metric="dtw", window=window)
    else:
        raise TsforestError(f"unknown method {method!r}")
    return RunReport("", method, seed, error, time.perf_counter() - started)


DETERMINISTIC_METHODS = ("nn-euclidean", "dtw-nowin", "dtw-best")
ALL_METHODS = ("tsf", "tsf-entropy") + DETERMINISTIC_METHODS


def _average_ranks(reports: Sequence[RunReport]) -> list[tuple[str, float]]:
    """Mean error per (dataset, method), ranked within each dataset, ranks
    averaged across datasets. Ties share the average of their positions."""
    datasets = sorted({r.dataset for r in reports})
    methods = sorted({r.method for r in reports})
    totals = {m: 0.0 for m in methods}
    for ds in datasets:
        errors = []
        for m in methods:
            runs = [r.error for r in reports if r.dataset == ds and r.method == m]
            errors.append(sum(runs) / len(runs))
        order = np.argsort(np.asarray(errors), kind="stable")
        ranks = np.empty(len(methods))
        i = 0
        while i < len(methods):
            j = i
            while j + 1 < len(methods) and errors[order[j + 1]] == errors[order[i]]:
                j += 1
            ranks[order[i : j + 1]] = (i + j) / 2 + 1
            i = j + 1
        for m, rank in zip(methods, ranks):
            totals[m] += float(rank)
    return [(m, totals[m] / len(datasets)) for m in sorted(methods, key=lambda m: totals[m])]


def _cmd_benchmark(args) -> int:
    data_dir = Path(args.data_dir)
    if not data_dir.is_dir():
        raise TsforestError(f"data directory not found: {data_dir}")
    pairs = _discover_pairs(data_dir)
    if not pairs:
        raise TsforestError(f"no TRAIN/TEST file pairs under {data_dir}")
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in ALL_METHODS:
            raise TsforestError(
                f"unknown method {m!r}; choose from {', '.join(ALL_METHODS)}"
            )
    seeds = [int(s) for s in args.seeds.split(",") if s.strip()]
    if not seeds:
        raise TsforestError("no seeds given")
    reports: list[RunReport] = []
    ran = 0
    for name, train_path, test_path in pairs:
        try:
            train = load_ucr(train_path)
            test = load_ucr(test_path)
        except (TsforestError, OSError) as exc:
            print(f"warning: skipping {name}: {exc}", file=sys.stderr)
            continue
        ran += 1
        for method in methods:
            method_seeds = [seeds[0]] if method in DETERMINISTIC_METHODS else seeds
            for seed in method_seeds:
                report = _run_method(method, train, test, seed, args)
                report = RunReport(name, method, seed, report.error, report.seconds)
                reports.append(report)
                print(report.line())
    if ran == 0:
        raise TsforestError(f"no readable TRAIN/TEST pairs under {data_dir}")
    _write_report(args.report_out, reports)
    print(f"report written to {args.report_out}")
    ranks = _average_ranks(reports)
    ranks_path = Path(args.report_out).with_suffix(".ranks.csv")
    with open(ranks_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("method,average_rank\n")
        for method, rank in ranks:
            fh.write(f"{method},{rank:.3f}\n")
    print(f"average ranks over {ran} datasets "
          f"(lower is better), written to {ranks_path}:")
    for method, rank in ranks:
        print(f"  {method:14s} {rank:.3f}")
    return 0


def _cmd_synth(args) -> int:
    spec = scaled_spec(args.series_length, args.per_class, args.seed)
    if args.kind == "noise":
        data = generate_noise_dataset(spec)
    else:
        data = generate_shifted_dataset(spec)
    comment = (
        f"synthetic kind={args.kind} series-length={spec.series_length} "
        f"per-class={spec.per_class} seed={spec.seed}"
    )
    if args.kind == "shifted":
        comment += (
            f" mean-interval={spec.mean_interval[0]}:{spec.mean_interval[1]}"
            f" mean-shift={spec.mean_shift}"
            f" std-interval={spec.std_interval[0]}:{spec.std_interval[1]}"
            f" std-factor={spec.std_factor}"
        )
    save_ucr(data, args.out_path, comment=comment)
    print(
        f"wrote {data.n_instances} series of length {data.series_length} "
        f"to {args.out_path}"
    )
    return 0


def _add_forest_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n-trees", type=int, default=500, help="trees in the forest")
    p.add_argument("--kappa", type=int, default=20,
                   help="candidate thresholds per interval feature")
    p.add_argument("--criterion", choices=("entrance", "entropy"),
                   default="entrance", help="split scoring rule")
    p.add_argument("--threads", type=int, default=0,
                   help="worker threads; 0 means one per CPU")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsforest",
        description="Time series forest classification on interval features.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="fit a forest and save the model")
    p.add_argument("--train-path", required=True, help="training dataset file")
    p.add_argument("--model-out", required=True, help="where to write the model")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    _add_forest_flags(p)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("evaluate", help="score a saved model on a test file")
    p.add_argument("--model-in", required=True, help="model file from train")
    p.add_argument("--test-path", required=True, help="test dataset file")
    p.add_argument("--report-out", default=None, help="optional CSV report path")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("importance", help="dump temporal importance curves")
    p.add_argument("--model-in", required=True, help="model file from train")
    p.add_argument("--csv-out", required=True, help="CSV output path")
    p.add_argument("--normalize", action="store_true",
                   help="add columns divided by per-index interval counts")
    p.set_defaults(func=_cmd_importance)

    p = sub.add_parser(
        "benchmark",
        help="run methods over a directory of TRAIN/TEST dataset pairs",
    )
    p.add_argument("--data-dir", required=True,
                   help="directory searched recursively for *TRAIN* files")
    p.add_argument("--methods", default=",".join(ALL_METHODS),
                   help="comma list: " + ", ".join(ALL_METHODS))
    p.add_argument("--seeds", default="0", help="comma list of master seeds")
    p.add_argument("--report-out", required=True, help="long-format CSV path")
    _add_forest_flags(p)
    p.set_defaults(func=_cmd_benchmark)

    p = sub.add_parser("synth", help="generate a synthetic dataset file")
    p.add_argument("--kind", choices=("noise", "shifted"), required=True)
    p.add_argument("--series-length", type=int, default=1000,
                   help="M; the shifted intervals scale proportionally")
    p.add_argument("--per-class", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-path", required=True)
    p.set_defaults(func=_cmd_synth)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TsforestError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
