"""Desk-scale accuracy studies; run with pytest --runslow."""
import numpy as np
import pytest

from mcsa.annealing.core import AnnealSchedule
from mcsa.annealing.engines import EngineConfig
from mcsa.bench.runner import compare_engines, run_spec
from mcsa.bench.spec import load_run_spec
from mcsa.objectives.functions import griewank
from mcsa.objectives.registry import registry_get
from mcsa.refine.hybrid import hybrid_run


@pytest.mark.slow
def test_synchronous_engine_accuracy_on_schwefel_8():
    spec = load_run_spec(
        overrides=dict(
            function_id="F0_a", engine="v2", t0=100.0, t_min=0.01, rho=0.95, chain_length=50,
            chains="1024", replications=5, seed=0,
        )
    )
    report = run_spec(spec, progress=False)
    assert report.aggregates["value_error"]["median"] <= 1e-2
    assert report.aggregates["location_error"]["median"] <= 1e-3


@pytest.mark.slow
def test_synchronous_beats_asynchronous_at_equal_budget():
    common = dict(
        function_id="F0_b", t0=100.0, t_min=0.01, rho=0.95, chain_length=50, chains="512", replications=10, seed=0
    )
    specs = [load_run_spec(overrides=dict(common, engine=engine)) for engine in ["v1", "v2"]]
    table = compare_engines(specs, progress=False).set_index("engine")
    assert table.loc["v2", "median_value_error"] < table.loc["v1", "median_value_error"]


def median_hybrid_error(f, schedule: AnnealSchedule, n_chains: int, seeds=range(5)) -> float:
    errors = []
    for seed in seeds:
        result = hybrid_run(f, EngineConfig(schedule, n_chains=n_chains, seed=seed), schedule)
        errors.append(abs(result.best_f - f.reference.f_star))
    return float(np.median(errors))


@pytest.mark.slow
def test_hybrid_on_griewank_50():
    assert median_hybrid_error(griewank(50), AnnealSchedule(1000.0, 1.0, 0.9, 20), 512) <= 1e-8


@pytest.mark.slow
def test_hybrid_on_rosenbrock_4():
    assert median_hybrid_error(registry_get("F14"), AnnealSchedule(100.0, 0.1, 0.9, 20), 256) <= 1e-8


@pytest.mark.slow
def test_hybrid_locates_schwefel_32():
    f = registry_get("F0_c")
    schedule = AnnealSchedule(100.0, 0.5, 0.95, 50)
    result = hybrid_run(f, EngineConfig(schedule, n_chains=1024, seed=0), schedule)
    x_star = f.reference.minimizers[0]
    assert np.linalg.norm(result.best_x - x_star) / np.linalg.norm(x_star) <= 1e-6
