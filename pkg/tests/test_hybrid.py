import pytest

from mcsa.annealing.core import AnnealSchedule, expected_evaluations, ladder
from mcsa.annealing.engines import EngineConfig, run_synchronous
from mcsa.objectives.registry import registry_get
from mcsa.refine.hybrid import hybrid_run, truncate_schedule
from mcsa.refine.nelder_mead import NelderMeadConfig


@pytest.mark.parametrize(
    "schedule, fraction, levels",
    [
        (AnnealSchedule(1000.0, 0.01, 0.99, 100), 0.05, 57),
        (AnnealSchedule(1000.0, 0.01, 0.99, 100), 1.0, 1146),
        (AnnealSchedule(5.0, 0.5, 0.7, 5), 0.05, 1),
        (AnnealSchedule(100.0, 0.01, 0.95, 50), 0.5, 90),
    ],
)
def test_truncated_ladder_length(schedule, fraction, levels):
    truncated = truncate_schedule(schedule, fraction)
    assert ladder(truncated).levels == levels
    assert (truncated.t0, truncated.rho, truncated.sweep_length) == (schedule.t0, schedule.rho, schedule.sweep_length)
    assert truncated.t_min >= schedule.t_min


def test_truncation_fraction_must_be_a_fraction():
    schedule = AnnealSchedule(5.0, 0.5, 0.7, 5)
    for fraction in [0.0, 1.5]:
        with pytest.raises(ValueError):
            truncate_schedule(schedule, fraction)


@pytest.fixture(scope="module")
def rosenbrock_runs():
    f = registry_get("F14")
    schedule = truncate_schedule(AnnealSchedule(100.0, 0.01, 0.9, 20), 0.5)
    cfg = EngineConfig(schedule, n_chains=64, seed=3)
    return f, schedule, run_synchronous(f, cfg), hybrid_run(f, cfg, schedule, NelderMeadConfig())


def test_hybrid_accounts_for_both_phases(rosenbrock_runs):
    f, schedule, annealed, hybrid = rosenbrock_runs
    assert hybrid.engine == "hybrid"
    assert hybrid.phase_evaluations["anneal"] == expected_evaluations(schedule, 64) == annealed.evaluations
    assert hybrid.phase_evaluations["refine"] > 0
    assert hybrid.evaluations == hybrid.phase_evaluations["anneal"] + hybrid.phase_evaluations["refine"]
    assert hybrid.wall_time > 0


def test_hybrid_trace_marks_the_refinement(rosenbrock_runs):
    f, schedule, annealed, hybrid = rosenbrock_runs
    assert hybrid.trace[:-1] == annealed.trace
    refine = hybrid.trace[-1]
    assert refine.phase == "refine"
    assert refine.level == ladder(schedule).levels
    assert refine.cumulative_evaluations == hybrid.evaluations
    assert refine.best_f == min(hybrid.best_f, annealed.trace[-1].best_f)


def test_refinement_never_increases_the_best_value(rosenbrock_runs):
    f, schedule, annealed, hybrid = rosenbrock_runs
    assert hybrid.best_f <= annealed.best_f
