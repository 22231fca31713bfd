import logging
import time
from dataclasses import replace

from mcsa.annealing.core import AnnealSchedule, ladder
from mcsa.annealing.engines import EngineConfig, RunResult, TraceRecord, run_synchronous
from mcsa.objectives.base import ObjectiveFunction
from mcsa.refine.nelder_mead import NelderMeadConfig, nelder_mead_minimize


def truncate_schedule(sched: AnnealSchedule, fraction: float = 0.05) -> AnnealSchedule:
    """
    Stops a schedule prematurely: keeps t0, rho and N and raises t_min so that the ladder
    has max(1, round(fraction * levels)) levels.
    """
    if not 0 < fraction <= 1:
        raise ValueError(f"Truncation fraction must lie in (0, 1], got {fraction}")
    levels = max(1, round(fraction * ladder(sched).levels))
    # geometric midpoint between the last kept temperature and the first dropped one
    t_min = sched.t0 * sched.rho ** (levels - 0.5)
    return replace(sched, t_min=t_min)


def hybrid_run(
    f: ObjectiveFunction,
    cfg: EngineConfig,
    truncated_sched: AnnealSchedule,
    nm_cfg: NelderMeadConfig = NelderMeadConfig(),
) -> RunResult:
    """
    Synchronous annealing on a truncated schedule, then Nelder-Mead from the annealing result
    Args:
        f: objective function
        cfg: engine configuration; its schedule is replaced by truncated_sched
        truncated_sched: prematurely stopped schedule for the annealing phase
        nm_cfg: Nelder-Mead configuration

    Returns:
        run result whose evaluations and wall time add up both phases
    """
    annealed = run_synchronous(f, replace(cfg, schedule=truncated_sched))
    started = time.perf_counter()
    x_refined, f_refined, iterations, nm_evaluations = nelder_mead_minimize(f, annealed.best_x, nm_cfg)
    refine_time = time.perf_counter() - started
    if f_refined <= annealed.best_f:
        best_x, best_f = x_refined, f_refined
    else:
        best_x, best_f = annealed.best_x, annealed.best_f
    evaluations = annealed.evaluations + nm_evaluations
    trace = list(annealed.trace)
    trace.append(TraceRecord(annealed.levels, evaluations, min(best_f, trace[-1].best_f), phase="refine"))
    logging.info(
        f"hybrid on {f.id}: annealing best {annealed.best_f:.10g} \t refined {best_f:.10g} "
        f"after {iterations} iterations and {nm_evaluations} evaluations"
    )
    return RunResult(
        best_x=best_x,
        best_f=float(best_f),
        evaluations=evaluations,
        wall_time=annealed.wall_time + refine_time,
        trace=trace,
        winning_chain=annealed.winning_chain,
        engine="hybrid",
        levels=annealed.levels,
        draws=annealed.draws,
        phase_evaluations={"anneal": annealed.evaluations, "refine": nm_evaluations},
    )
