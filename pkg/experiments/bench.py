# Makes the mcsa package importable when the script is run from a source checkout
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

import argparse
import logging
import time

from mcsa.bench.runner import compare_engines, run_spec, sequential_counterpart, sweep_chains, worker_speedup
from mcsa.bench.spec import HARNESS_ENGINES, load_run_spec
from mcsa.objectives.registry import function_table
from mcsa.utils.metrics import AGGREGATES
from mcsa.utils.reporting import format_table, write_csv

# CLI flag -> RunSpec field
SPEC_FLAGS = {
    "function": "function_id",
    "engine": "engine",
    "t0": "t0",
    "tmin": "t_min",
    "rho": "rho",
    "chain_length": "chain_length",
    "chains": "chains",
    "start": "start_mode",
    "seed": "seed",
    "reps": "replications",
    "precision": "precision",
    "block_size": "block_size",
    "workers": "workers",
    "concurrent": "concurrent_replications",
    "truncate_fraction": "truncate_fraction",
    "out": "out",
    "summary": "summary",
    "trace": "trace",
}


def spec_arguments() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", type=str, default=None, help="JSON or YAML run spec, overridden by flags")
    parser.add_argument("--function", type=str, default=None)
    parser.add_argument("--engine", type=str, default=None, choices=HARNESS_ENGINES)
    parser.add_argument("--t0", type=float, default=None)
    parser.add_argument("--tmin", type=float, default=None)
    parser.add_argument("--rho", type=float, default=None)
    parser.add_argument("--chain-length", dest="chain_length", type=int, default=None)
    parser.add_argument("--chains", type=str, default=None, help="integer or BxG, e.g. 256x64")
    parser.add_argument("--start", type=str, default=None, choices=["shared", "random"])
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--reps", type=int, default=None)
    parser.add_argument("--precision", type=str, default=None, choices=["double", "single"])
    parser.add_argument("--block-size", dest="block_size", type=int, default=None)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--concurrent", action="store_true", default=None, help="run replications concurrently")
    parser.add_argument("--truncate-fraction", dest="truncate_fraction", type=float, default=None)
    parser.add_argument("--out", type=str, default=None)
    parser.add_argument("--summary", type=str, default=None)
    parser.add_argument("--trace", type=str, default=None)
    return parser


def spec_from_args(args: argparse.Namespace, **changes):
    overrides = {field: getattr(args, flag) for flag, field in SPEC_FLAGS.items()}
    overrides.update(changes)
    return load_run_spec(args.config, overrides)


def list_functions(args: argparse.Namespace) -> None:
    table = function_table()
    print(format_table(table.values.tolist(), table.columns, tablefmt=args.tablefmt))


def run(args: argparse.Namespace) -> None:
    spec = spec_from_args(args)
    report = run_spec(spec)
    rows = [[metric] + [values[name] for name in AGGREGATES] for metric, values in report.aggregates.items()]
    print(format_table(rows, ["metric"] + AGGREGATES, tablefmt=args.tablefmt))


def trace(args: argparse.Namespace) -> None:
    if args.trace is None:
        raise ValueError("The trace subcommand needs --trace <csv>")
    spec = spec_from_args(args, replications=1)
    run_spec(spec)
    logging.info(f"Trace written to {spec.trace}")


def compare(args: argparse.Namespace) -> None:
    engines = args.engines.split(",")
    parallel = [engine for engine in engines if engine != "v0"]
    sequential = None
    if len(parallel) == 0:
        specs = [spec_from_args(args, engine="v0", chains="1")]
    else:
        specs = [spec_from_args(args, engine=engine) for engine in parallel]
        if "v0" in engines:
            # one chain with n_chains * N steps per level stands in for the parallel chains
            sequential = sequential_counterpart(specs[0])
    table = compare_engines(specs, sequential=sequential)
    print(format_table(table.values.tolist(), table.columns, tablefmt=args.tablefmt))
    if args.out is not None:
        write_csv(table, args.out, table.columns)


def scale(args: argparse.Namespace) -> None:
    spec = spec_from_args(args)
    chain_counts = [int(count) for count in args.chain_counts.split(",")]
    chains_table = sweep_chains(spec, chain_counts)
    print(format_table(chains_table.values.tolist(), chains_table.columns, tablefmt=args.tablefmt))
    worker_counts = [int(count) for count in args.worker_counts.split(",")]
    workers_table = worker_speedup(spec, worker_counts)
    print("Wall time, workers=k vs workers=1 on this host")
    print(format_table(workers_table.values.tolist(), workers_table.columns, tablefmt=args.tablefmt))
    if args.out is not None:
        out = Path(args.out)
        write_csv(chains_table, out.with_name(out.stem + "_chains.csv"), chains_table.columns)
        write_csv(workers_table, out.with_name(out.stem + "_workers.csv"), workers_table.columns)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Parallel simulated annealing benchmark harness")
    parser.add_argument("--tablefmt", type=str, default="github")
    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser("list-functions").set_defaults(handler=list_functions)
    subparsers.add_parser("run", parents=[spec_arguments()]).set_defaults(handler=run)
    subparsers.add_parser("trace", parents=[spec_arguments()]).set_defaults(handler=trace)
    compare_parser = subparsers.add_parser("compare", parents=[spec_arguments()])
    compare_parser.add_argument("--engines", type=str, default="v1,v2")
    compare_parser.set_defaults(handler=compare)
    scale_parser = subparsers.add_parser("scale", parents=[spec_arguments()])
    scale_parser.add_argument("--chain-counts", dest="chain_counts", type=str, default="64,256,1024,4096")
    scale_parser.add_argument("--worker-counts", dest="worker_counts", type=str, default="1,2,4")
    scale_parser.set_defaults(handler=scale)
    return parser


if __name__ == "__main__":
    logging.basicConfig(
        level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s"
    )
    args = build_parser().parse_args()
    logging.info("Experiment Arguments")
    logging.info(str(args))
    start_time = time.time()
    args.handler(args)
    logging.info(f"Execution time: {time.time() - start_time:.2f} seconds")
