"""Command-line entry points.

Subcommands: run (grid experiments), sweep (Pareto-front sweeps), verify
(numerical verification suites), ingest (air-quality preprocessing into a
cache), synth (synthetic dataset cache). Exit codes: 0 on success, 1 when
an experiment cell or verification suite fails, 2 for usage and
configuration errors. The BLOCKSMOO_CACHE environment variable provides
the default root for dataset caches.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import yaml

from .data.air_quality import fetch_air_quality, load_air_quality, preprocess_air_quality
from .data.dataset import save_dataset
from .data.synthetic import generate_synthetic
from .errors import BlockSmooError, ConfigError
from .experiments import ExperimentConfig, build_dataset, build_problem, run_experiment
from .pareto.sweep import (
    BLOCK_SMOO,
    WEIGHTED_SUM,
    SweepConfig,
    enumerate_frequency_vectors,
    front_metrics,
    run_sweep,
    write_front_csv,
    write_metrics_json,
)
from .verify.suites import SUITES, run_suites

CACHE_ENV = "BLOCKSMOO_CACHE"


def cache_root() -> str:
    return os.environ.get(CACHE_ENV, os.path.join(os.getcwd(), "dataset-cache"))


def _load_yaml(path: str) -> dict:
    try:
        with open(path) as fh:
            raw = yaml.safe_load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config: {exc}")
    if not isinstance(raw, dict):
        raise ConfigError("config must be a mapping")
    return raw


def cmd_run(args) -> int:
    raw = _load_yaml(args.config)
    if args.seed is not None:
        raw["seeds"] = [int(args.seed)]
    config = ExperimentConfig.from_dict(raw)
    summary = run_experiment(config, workers=args.workers, out_dir=args.out)
    out = args.out or config.out_dir
    print(f"wrote {summary['cells'] - summary['failed_cells']} cell files under {out}/cells")
    for algorithm, entry in sorted(summary["algorithms"].items()):
        print(
            f"{algorithm}: best step {entry['best_step_size']:g} "
            f"(mean final test loss {entry['best_mean_final_test_loss']:.6g})"
        )
    if summary["failed_cells"]:
        print(f"{summary['failed_cells']} cell(s) failed", file=sys.stderr)
        return 1
    return 0


def cmd_sweep(args) -> int:
    raw = _load_yaml(args.config)
    budget_p = raw.pop("p", 20)
    sweep_keys = {"step_size", "data_passes", "n_outer", "init_std", "seed"}
    sweep_kwargs = {k: raw.pop(k) for k in list(raw) if k in sweep_keys}
    raw.setdefault("budget", {"kind": "data-passes", "amount": sweep_kwargs.get("data_passes", 20)})
    raw.setdefault("rank", 3)
    raw.setdefault("batch_size", 512)
    config = ExperimentConfig.from_dict(raw)

    dataset = None if config.problem["kind"] == "quadratic" else build_dataset(config.problem)
    problem = build_problem(config, dataset)
    from .experiments import partition_for

    sweep_config = SweepConfig(
        partition=partition_for(problem, config.partition),
        schedule_policy=config.schedule_policy,
        **sweep_kwargs,
    )
    vectors = enumerate_frequency_vectors(problem.q, int(budget_p))
    out = args.out or config.out_dir
    os.makedirs(out, exist_ok=True)

    fronts, failures = {}, {}
    for comparator in (BLOCK_SMOO, WEIGHTED_SUM):
        points, failed = run_sweep(problem, sweep_config, vectors, comparator, workers=args.workers)
        fronts[comparator] = points
        failures[comparator] = len(failed)
        write_front_csv(points, os.path.join(out, f"front_{comparator}.csv"))
        print(f"{comparator}: {len(points)} runs completed, {len(failed)} failed")

    report = front_metrics(fronts, failures=failures)
    write_metrics_json(report, os.path.join(out, "metrics.json"))
    for label, entry in sorted(report["metrics"].items()):
        print(
            f"{label}: purity {entry['purity']:.4f}, "
            f"spread_gamma {entry['spread_gamma']}, spread_delta {entry['spread_delta']}"
        )
    return 0


def cmd_verify(args) -> int:
    names = args.suite or None
    report = run_suites(names, fast=args.fast)
    text = json.dumps(report, indent=2, sort_keys=True, default=float)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    for name, suite in report["suites"].items():
        print(f"{name}: {'pass' if suite['passed'] else 'FAIL'}")
    return 0 if report["passed"] else 1


def cmd_ingest(args) -> int:
    source = args.source
    if args.fetch:
        print(f"fetching public archive into {source}")
        fetch_air_quality(source)
    raw = load_air_quality(source)

    out = args.out or os.path.join(cache_root(), "air-quality")
    sidecar = os.path.splitext(out)[0] + ".json"
    if os.path.exists(sidecar):
        with open(sidecar) as fh:
            existing = json.load(fh)
        if existing.get("provenance", {}).get("source_digests") == raw.attrs.get("source_digests"):
            print(f"cache at {out} already matches the source digests; nothing to do")
            return 0

    dataset = preprocess_air_quality(raw)
    npz_path = save_dataset(dataset, out)
    print(
        f"cached {dataset.X.shape[0]} rows (train {dataset.n_train}, test {dataset.n_test}), "
        f"d={dataset.X.shape[1]}, q={dataset.Y.shape[1]} -> {npz_path}"
    )
    for name, digest in sorted(dataset.provenance.get("source_digests", {}).items()):
        print(f"  {name}: {digest[:16]}")
    return 0


def cmd_synth(args) -> int:
    dataset, _, _ = generate_synthetic(
        seed=args.seed,
        n_train=args.n_train,
        n_test=args.n_test,
        d=args.d,
        q=args.q,
        rank=args.rank,
        noise_sigma=args.noise_sigma,
    )
    out = args.out or os.path.join(cache_root(), "synthetic")
    npz_path = save_dataset(dataset, out)
    print(
        f"generated synthetic dataset: train {dataset.n_train} x {dataset.X.shape[1]}, "
        f"q={dataset.Y.shape[1]} -> {npz_path}"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blocksmoo", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a grid experiment from a config file")
    run_p.add_argument("--config", required=True)
    run_p.add_argument("--workers", type=int, default=1)
    run_p.add_argument("--out", default=None)
    run_p.add_argument("--seed", type=int, default=None, help="restrict the grid to one seed")
    run_p.set_defaults(func=cmd_run)

    sweep_p = sub.add_parser("sweep", help="trace a Pareto front over frequency vectors")
    sweep_p.add_argument("--config", required=True)
    sweep_p.add_argument("--workers", type=int, default=1)
    sweep_p.add_argument("--out", default=None)
    sweep_p.set_defaults(func=cmd_sweep)

    verify_p = sub.add_parser("verify", help="run the numerical verification suites")
    verify_p.add_argument("--suite", action="append", choices=sorted(SUITES), default=None)
    verify_p.add_argument("--fast", action="store_true", help="smaller rate horizons and seed counts")
    verify_p.add_argument("--out", default=None, help="write the JSON report here")
    verify_p.set_defaults(func=cmd_verify)

    ingest_p = sub.add_parser("ingest", help="preprocess the air-quality data into a cache")
    ingest_p.add_argument("source", help="directory with the per-station csv files")
    ingest_p.add_argument("--out", default=None, help="cache path (default under the cache root)")
    ingest_p.add_argument("--fetch", action="store_true", help="download the public archive first")
    ingest_p.set_defaults(func=cmd_ingest)

    synth_p = sub.add_parser("synth", help="generate and cache a synthetic dataset")
    synth_p.add_argument("--out", default=None)
    synth_p.add_argument("--seed", type=int, default=0)
    synth_p.add_argument("--n-train", type=int, default=2**14, dest="n_train")
    synth_p.add_argument("--n-test", type=int, default=2**10, dest="n_test")
    synth_p.add_argument("--d", type=int, default=400)
    synth_p.add_argument("--q", type=int, default=5)
    synth_p.add_argument("--rank", type=int, default=3)
    synth_p.add_argument("--noise-sigma", type=float, default=0.05, dest="noise_sigma")
    synth_p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except BlockSmooError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
