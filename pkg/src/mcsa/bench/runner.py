import logging
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from tqdm import tqdm

from mcsa.annealing.core import AnnealSchedule, expected_evaluations
from mcsa.annealing.engines import RunResult, run_engine
from mcsa.bench.spec import RunSpec, build_engine_config, build_schedule, parse_chains
from mcsa.objectives.base import ObjectiveFunction
from mcsa.objectives.registry import registry_get
from mcsa.refine.hybrid import hybrid_run, truncate_schedule
from mcsa.utils.metrics import aggregate_columns, location_error_or_none, value_error
from mcsa.utils.parallel import optimal_worker_count, parallel_map
from mcsa.utils.reporting import COMPARISON_COLUMNS, RUN_COLUMNS, TRACE_COLUMNS, write_csv, write_json
from mcsa.version import __version__

AGGREGATED_COLUMNS = ["best_f", "value_error", "location_error", "evaluations", "wall_time_s"]


@dataclass
class ReplicationReport:
    spec: RunSpec
    rows: pd.DataFrame
    aggregates: Dict[str, Dict[str, Optional[float]]]
    expected_evaluations: int
    results: List[RunResult] = field(default_factory=list, repr=False)

    def summary(self) -> dict:
        f = registry_get(self.spec.function_id)
        return {
            "spec": asdict(self.spec),
            "function": {
                "id": f.id,
                "name": f.name,
                "n": f.dim,
                "f_star": f.reference.f_star,
                "location_known": f.reference.location_known,
            },
            "expected_evaluations": self.expected_evaluations,
            "columns": RUN_COLUMNS,
            "aggregates": self.aggregates,
            "version": __version__,
        }


def annealing_schedule(spec: RunSpec) -> AnnealSchedule:
    """Schedule actually annealed by a spec: the truncated one for the hybrid engine."""
    schedule = build_schedule(spec)
    if spec.engine == "hybrid":
        return truncate_schedule(schedule, spec.truncate_fraction)
    return schedule


def spec_budget(spec: RunSpec) -> int:
    return expected_evaluations(annealing_schedule(spec), parse_chains(spec.chains))


def run_replication(spec: RunSpec, f: ObjectiveFunction, seed: int) -> RunResult:
    cfg = build_engine_config(spec, seed=seed)
    if spec.engine == "hybrid":
        result = hybrid_run(f, cfg, annealing_schedule(spec))
    else:
        result = run_engine(spec.engine, f, cfg)
    expected = spec_budget(spec)
    if result.phase_evaluations["anneal"] != expected:
        raise RuntimeError(
            f"{spec.engine} on {f.id} with seed {seed} performed {result.phase_evaluations['anneal']} "
            f"annealing evaluations, expected {expected}"
        )
    return result


def _report_row(f: ObjectiveFunction, seed: int, result: RunResult) -> list:
    location = location_error_or_none(f, result.best_x)
    return [
        seed,
        result.best_f,
        value_error(result.best_f, f.reference.f_star),
        np.nan if location is None else location,
        result.evaluations,
        result.wall_time,
    ]


def run_spec(spec: RunSpec, progress: bool = True) -> ReplicationReport:
    """
    Runs the replications of a spec with seeds seed, seed + 1, ... and writes the requested reports
    Args:
        spec: validated run specification
        progress: show a progress bar over replications

    Returns:
        replication report with one row per replication and the aggregates
    """
    f = registry_get(spec.function_id)
    seeds = [spec.seed + i for i in range(spec.replications)]
    if spec.concurrent_replications:
        results = parallel_map(
            lambda seed: run_replication(spec, f, seed), seeds, optimal_worker_count(seeds)
        )
    else:
        results = [
            run_replication(spec, f, seed)
            for seed in tqdm(seeds, unit="replication", leave=False, disable=not progress)
        ]
    rows = pd.DataFrame([_report_row(f, seed, result) for seed, result in zip(seeds, results)], columns=RUN_COLUMNS)
    for row in rows.itertuples(index=False):
        logging.info(
            f"{spec.engine} {f.id} seed {row.seed}: best_f {row.best_f:.10g} \t "
            f"value error {row.value_error:.4e} \t {row.evaluations} evaluations"
        )
    report = ReplicationReport(
        spec=spec,
        rows=rows,
        aggregates=aggregate_columns(rows, AGGREGATED_COLUMNS),
        expected_evaluations=spec_budget(spec),
        results=results,
    )
    if spec.out is not None:
        write_csv(rows, spec.out, RUN_COLUMNS)
    if spec.summary is not None:
        write_json(report.summary(), spec.summary)
    if spec.trace is not None:
        emit_trace(results[0], spec.trace, f.reference.f_star)
    return report


def trace_frame(result: RunResult, f_star: float) -> pd.DataFrame:
    if len(result.trace) == 0:
        raise ValueError("The run result has an empty trace")
    return pd.DataFrame(
        [
            [record.level, record.cumulative_evaluations, record.best_f, value_error(record.best_f, f_star)]
            for record in result.trace
        ],
        columns=TRACE_COLUMNS,
    )


def emit_trace(result: RunResult, path: Union[str, Path], f_star: float) -> Path:
    """Writes the convergence trace: one row per temperature level (plus the refinement row of a hybrid run)."""
    return write_csv(trace_frame(result, f_star), path, TRACE_COLUMNS)


def _medians(report: ReplicationReport) -> list:
    return [
        report.aggregates["value_error"]["median"],
        report.aggregates["location_error"]["median"],
        report.aggregates["wall_time_s"]["median"],
    ]


def sequential_counterpart(spec: RunSpec) -> RunSpec:
    """
    One V0 chain exploring as many points per level as all the chains of spec together: its
    chain length is n_chains * N. Its budget is lower than the spec's by the n_chains - 1
    initial evaluations of the extra chains.
    """
    n_chains = parse_chains(spec.chains)
    return replace(spec, engine="v0", chains="1", chain_length=spec.chain_length * n_chains)


def _comparison_row(spec: RunSpec, budget: int, progress: bool) -> list:
    report = run_spec(_without_outputs(spec), progress=progress)
    return [spec.engine, parse_chains(spec.chains), budget] + _medians(report)


def compare_engines(
    specs: Sequence[RunSpec], progress: bool = True, sequential: Optional[RunSpec] = None
) -> pd.DataFrame:
    """
    Side-by-side medians of several engines on one function at one evaluation budget. Wall-time
    ratios are relative to the first row and measured on this host.

    Parameters:
    -----------
    specs: Sequence[RunSpec]
        Specs sharing one function and one evaluation budget.
    progress: bool
        Show progress bars over replications.
    sequential: Optional[RunSpec]
        A V0 baseline (see sequential_counterpart) placed in the first row. It must share the
        function but is exempt from the budget check, since one chain cannot match the initial
        evaluations of many.
    """
    if len(specs) == 0:
        raise ValueError("Nothing to compare: no run specs given")
    compared = list(specs) if sequential is None else [sequential] + list(specs)
    functions = sorted({spec.function_id for spec in compared})
    if len(functions) > 1:
        raise ValueError(f"Compared specs must share one function, got {', '.join(functions)}")
    budgets = [spec_budget(spec) for spec in specs]
    if len(set(budgets)) > 1:
        described = ", ".join(f"{spec.engine}: {budget}" for spec, budget in zip(specs, budgets))
        raise ValueError(f"Evaluation budgets differ across compared specs ({described})")
    rows = []
    if sequential is not None:
        if parse_chains(sequential.chains) != 1:
            raise ValueError(f"The sequential baseline runs exactly one chain, got {sequential.chains}")
        rows.append(_comparison_row(sequential, spec_budget(sequential), progress))
    for spec, budget in zip(specs, budgets):
        rows.append(_comparison_row(spec, budget, progress))
    table = pd.DataFrame(rows, columns=COMPARISON_COLUMNS[:-1])
    table["cpu_relative_speedup"] = table["median_wall_time_s"].iloc[0] / table["median_wall_time_s"]
    return table


def _without_outputs(spec: RunSpec, **changes) -> RunSpec:
    return replace(spec, out=None, summary=None, trace=None, **changes)


def sweep_chains(spec: RunSpec, chain_counts: Sequence[int], progress: bool = True) -> pd.DataFrame:
    """Error against the number of chains, everything else fixed."""
    rows = []
    for n_chains in tqdm(chain_counts, unit="chain count", leave=False, disable=not progress):
        swept = _without_outputs(spec, chains=str(n_chains))
        report = run_spec(swept, progress=False)
        rows.append([n_chains, report.expected_evaluations] + _medians(report))
        logging.info(f"{n_chains} chains: median value error {rows[-1][2]:.4e}")
    return pd.DataFrame(
        rows,
        columns=["n_chains", "evaluations", "median_value_error", "median_location_error", "median_wall_time_s"],
    )


def worker_speedup(spec: RunSpec, worker_counts: Sequence[int], progress: bool = True) -> pd.DataFrame:
    """Wall time with k workers against one worker on this host; best values must not change."""
    worker_counts = list(worker_counts)
    if 1 not in worker_counts:
        worker_counts = [1] + worker_counts
    rows = []
    for workers in tqdm(worker_counts, unit="worker count", leave=False, disable=not progress):
        report = run_spec(_without_outputs(spec, workers=workers), progress=False)
        rows.append([workers, report.aggregates["wall_time_s"]["median"], tuple(report.rows["best_f"])])
    baseline_time, baseline_values = next((row[1], row[2]) for row in rows if row[0] == 1)
    return pd.DataFrame(
        [
            [workers, wall_time, baseline_time / wall_time, values == baseline_values]
            for workers, wall_time, values in rows
        ],
        columns=["workers", "median_wall_time_s", "speedup_vs_1_worker", "identical_results"],
    )
