# Makes the mcsa package importable when the script is run from a source checkout
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

import argparse
import logging
import time

import pandas as pd
from omegaconf import DictConfig, OmegaConf

from mcsa.bench.runner import emit_trace, run_spec, sweep_chains
from mcsa.bench.spec import RunSpec, load_run_spec
from mcsa.objectives.registry import registry_get
from mcsa.utils.reporting import format_table, latex_table, write_csv


def base_spec(config: DictConfig, **changes) -> RunSpec:
    overrides = dict(
        seed=config.seed,
        replications=config.replications,
        workers=config.workers,
        chains=str(config.chains),
        **OmegaConf.to_container(config.schedule),
    )
    overrides.update(changes)
    return load_run_spec(overrides=overrides)


def summary_row(report, *labels) -> list:
    return list(labels) + [
        report.expected_evaluations,
        report.aggregates["value_error"]["median"],
        report.aggregates["location_error"]["median"],
        report.aggregates["wall_time_s"]["median"],
    ]


SUMMARY_COLUMNS = ["evaluations", "median_value_error", "median_location_error", "median_wall_time_s"]


def save_table(table: pd.DataFrame, save_dir: Path, name: str) -> None:
    write_csv(table, save_dir / f"{name}.csv", table.columns)
    with open(save_dir / f"{name}.tex", "w") as f:
        f.write(latex_table(table))
    logging.info(f"{name}:\n" + format_table(table.values.tolist(), table.columns))


def accuracy_table(config: DictConfig, save_dir: Path) -> None:
    """Median errors of the sequential, asynchronous and synchronous engines."""
    rows = []
    for function_id in config.accuracy.functions:
        for engine in config.accuracy.engines:
            # the sequential engine runs one chain
            chains = "1" if engine == "v0" else str(config.chains)
            report = run_spec(base_spec(config, function_id=function_id, engine=engine, chains=chains))
            rows.append(summary_row(report, function_id, registry_get(function_id).dim, engine))
    save_table(pd.DataFrame(rows, columns=["function", "n", "engine"] + SUMMARY_COLUMNS), save_dir, "accuracy")


def convergence_traces(config: DictConfig, save_dir: Path) -> None:
    """Best value against the number of explored points, one file per function and engine."""
    for function_id in config.traces.functions:
        f_star = registry_get(function_id).reference.f_star
        for engine in config.traces.engines:
            report = run_spec(base_spec(config, function_id=function_id, engine=engine, replications=1))
            path = emit_trace(report.results[0], save_dir / "traces" / f"{function_id}_{engine}.csv", f_star)
            logging.info(f"Trace saved in {path}")


def error_vs_chains(config: DictConfig, save_dir: Path) -> None:
    spec = base_spec(config, function_id=config.chains_sweep.function, engine=config.chains_sweep.engine)
    table = sweep_chains(spec, list(config.chains_sweep.chain_counts))
    save_table(table, save_dir, "error_vs_chains")


def precision_table(config: DictConfig, save_dir: Path) -> None:
    rows = []
    for function_id in config.precision.functions:
        for precision in ["single", "double"]:
            report = run_spec(
                base_spec(config, function_id=function_id, engine=config.precision.engine, precision=precision)
            )
            rows.append(summary_row(report, function_id, precision))
    save_table(pd.DataFrame(rows, columns=["function", "precision"] + SUMMARY_COLUMNS), save_dir, "precision")


def hybrid_table(config: DictConfig, save_dir: Path) -> None:
    """Annealing stopped prematurely, polished by Nelder-Mead."""
    rows = []
    for function_id in config.hybrid.functions:
        spec = base_spec(
            config, function_id=function_id, engine="hybrid", truncate_fraction=config.hybrid.truncate_fraction
        )
        report = run_spec(spec)
        rows.append(summary_row(report, function_id) + [report.aggregates["evaluations"]["median"]])
    columns = ["function", "annealing_evaluations"] + SUMMARY_COLUMNS[1:] + ["median_total_evaluations"]
    save_table(pd.DataFrame(rows, columns=columns), save_dir, "hybrid")


STUDIES = {
    "accuracy": accuracy_table,
    "traces": convergence_traces,
    "chains": error_vs_chains,
    "precision": precision_table,
    "hybrid": hybrid_table,
}


if __name__ == "__main__":
    logging.basicConfig(
        level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s"
    )
    parser = argparse.ArgumentParser()
    parser.add_argument("--name", type=str, default="all", choices=["all"] + list(STUDIES))
    parser.add_argument("--config", type=str, default=str(Path(__file__).parent / "schwefel_config.yaml"))
    parser.add_argument("--replications", type=int, default=None)
    args = parser.parse_args()
    logging.info("Experiment Arguments")
    logging.info(str(args))
    config = OmegaConf.load(args.config)
    if args.replications is not None:
        config.replications = args.replications
    save_dir = Path.cwd() / config.results_dir
    save_dir.mkdir(parents=True, exist_ok=True)
    start_time = time.time()
    names = list(STUDIES) if args.name == "all" else [args.name]
    for name in names:
        logging.info(f"Running the {name} study")
        STUDIES[name](config, save_dir)
    logging.info(f"Execution time: {time.time() - start_time:.2f} seconds")
