import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mcsa.annealing.core import (
    AnnealSchedule,
    ChainBlock,
    ChainState,
    acceptance,
    compute_neighbour,
    expected_evaluations,
    ladder,
    metropolis_accept,
    metropolis_sweep,
    sweep_block,
)
from mcsa.annealing.rng import StreamBlock, StreamKey, make_stream
from mcsa.objectives.base import CountingObjective, evaluate
from mcsa.objectives.registry import registry_get


def brute_force_levels(t0: float, t_min: float, rho: float) -> int:
    levels, temperature = 0, t0
    while True:
        levels += 1
        temperature *= rho
        if temperature <= t_min:
            return levels


@pytest.mark.parametrize(
    "t0, t_min, rho, levels",
    [(5.0, 0.5, 0.7, 7), (1000.0, 0.01, 0.99, 1146), (1.0, 0.9, 0.5, 1)],
)
def test_ladder_levels(t0, t_min, rho, levels):
    info = ladder(AnnealSchedule(t0, t_min, rho, 1))
    assert info.levels == levels == brute_force_levels(t0, t_min, rho)
    assert info.temperatures[0] == t0
    assert len(info.temperatures) == levels


@given(
    st.floats(min_value=1.0, max_value=1e4),
    st.floats(min_value=1e-4, max_value=0.9),
    st.floats(min_value=0.5, max_value=0.99),
)
def test_ladder_matches_loop_oracle(t0, t_min_fraction, rho):
    t_min = t0 * t_min_fraction
    info = ladder(AnnealSchedule(t0, t_min, rho, 1))
    assert info.levels == brute_force_levels(t0, t_min, rho)
    assert all(b < a for a, b in zip(info.temperatures, info.temperatures[1:]))


@pytest.mark.parametrize(
    "schedule, n_chains, expected",
    [
        (AnnealSchedule(5.0, 0.5, 0.7, 5), 768, 27648),
        (AnnealSchedule(5.0, 0.5, 0.7, 5), 76800, 2764800),
        (AnnealSchedule(5.0, 0.5, 0.7, 5), 7680000, 276480000),
        (AnnealSchedule(1000.0, 0.01, 0.99, 100), 16384, 1877622784),
    ],
)
def test_expected_evaluations_reproduce_published_budgets(schedule, n_chains, expected):
    assert expected_evaluations(schedule, n_chains) == expected


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(t0=0.0, t_min=0.1, rho=0.5, sweep_length=1),
        dict(t0=1.0, t_min=1.0, rho=0.5, sweep_length=1),
        dict(t0=1.0, t_min=0.1, rho=1.0, sweep_length=1),
        dict(t0=1.0, t_min=0.1, rho=0.5, sweep_length=0),
    ],
)
def test_invalid_schedules(kwargs):
    with pytest.raises(ValueError):
        AnnealSchedule(**kwargs)


def test_expected_evaluations_needs_a_chain():
    with pytest.raises(ValueError):
        expected_evaluations(AnnealSchedule(5.0, 0.5, 0.7, 5), 0)


@pytest.mark.parametrize("ratio", [math.log(2.0), 2.0, 0.1])
def test_acceptance_frequency_follows_metropolis_law(ratio):
    trials = 1_000_000
    temperature = 3.0
    u = StreamBlock(123, np.arange(trials), level_index=int(ratio * 10)).next_uniform()
    accepted = acceptance(np.full(trials, ratio * temperature), temperature, u)
    p = math.exp(-ratio)
    sigma = math.sqrt(p * (1 - p) / trials)
    assert abs(accepted.mean() - p) <= 3 * sigma


def test_downhill_moves_always_accepted():
    u = np.array([0.0, 0.5, np.nextafter(1.0, 0.0)])
    assert np.all(acceptance(np.array([-1.0, 0.0, -1e-300]), 1e-9, u))


def test_metropolis_accept_consumes_a_draw_even_downhill():
    stream = make_stream(StreamKey(1))
    assert metropolis_accept(-5.0, 1.0, stream)
    assert stream.counter == 1


def test_metropolis_accept_rejects_non_positive_temperature():
    with pytest.raises(ValueError):
        metropolis_accept(1.0, 0.0, make_stream(StreamKey(1)))


def test_neighbour_changes_one_coordinate_inside_the_box():
    f = registry_get("F0_a")
    stream = make_stream(StreamKey(5, 2, 1))
    x = f.domain.center.copy()
    for _ in range(50):
        y = compute_neighbour(x, f.domain, stream)
        assert np.count_nonzero(y != x) <= 1
        assert np.all(y >= f.domain.lower) and np.all(y <= f.domain.upper)
    assert stream.counter == 100


def reference_sweep(f, x, energy, temperature, n_steps, stream):
    for _ in range(n_steps):
        y = compute_neighbour(x, f.domain, stream)
        energy_y = evaluate(f, y)
        if metropolis_accept(energy_y - energy, temperature, stream):
            x, energy = y, energy_y
    return x, energy


def test_sweep_matches_step_by_step_reference():
    f = registry_get("F10_b")
    x0 = f.domain.center.copy()
    e0 = evaluate(f, x0)
    state = metropolis_sweep(ChainState(x0, e0, make_stream(StreamKey(9, 3, 4))), f, 0.5, 200)
    x_ref, e_ref = reference_sweep(f, x0.copy(), e0, 0.5, 200, make_stream(StreamKey(9, 3, 4)))
    assert np.array_equal(state.x, x_ref)
    assert state.energy == e_ref
    assert state.stream.counter == 3 * 200


def test_sweep_counts_one_evaluation_per_step():
    counter = CountingObjective(registry_get("F14"))
    x0 = counter.domain.center.copy()
    metropolis_sweep(ChainState(x0, 0.0, make_stream(StreamKey(0))), counter, 1.0, 37)
    assert counter.evaluations == 37


def test_cached_energy_matches_position():
    f = registry_get("F1_a")
    X = np.tile(f.domain.center, (8, 1))
    block = ChainBlock(X, np.full(8, evaluate(f, f.domain.center)), StreamBlock(4, np.arange(8)))
    sweep_block(block, CountingObjective(f), f.domain, 2.0, 100)
    for x, energy in zip(block.X, block.E):
        assert evaluate(f, x) == pytest.approx(energy, rel=1e-14, abs=1e-14)


def test_block_sweep_in_single_precision():
    f = registry_get("F8_a")
    counter = CountingObjective(f, np.float32)
    X = np.tile(f.domain.center, (4, 1))
    block = ChainBlock(X, counter(X), StreamBlock(4, np.arange(4)))
    sweep_block(block, counter, f.domain, 10.0, 20)
    assert block.E.dtype == np.float32


def test_block_best_breaks_ties_by_position():
    block = ChainBlock(np.arange(6.0).reshape(3, 2), np.array([1.0, 0.5, 0.5]), StreamBlock(0, [7, 8, 9]))
    x, value, chain = block.best()
    assert value == 0.5 and chain == 8 and np.array_equal(x, [2.0, 3.0])


def test_neighbours_are_uniform_over_the_box():
    f = registry_get("F0_a")
    stream = make_stream(StreamKey(13, 0, 0))
    x = np.full(f.dim, 100.0)
    samples = 10**5
    coordinates, values = np.empty(samples, dtype=np.int64), np.empty(samples)
    for i in range(samples):
        coordinates[i] = stream.copy().next_coordinate_index(f.dim)
        y = compute_neighbour(x, f.domain, stream)
        values[i] = y[coordinates[i]]
    assert stream.counter == 2 * samples
    # uniform on [-512, 512]: mean 0, standard deviation 1024 / sqrt(12)
    standard_error = 1024 / math.sqrt(12) / math.sqrt(samples)
    assert abs(values.mean()) <= 5 * standard_error
    assert np.all((values >= -512) & (values <= 512))
    assert np.all(np.abs(np.bincount(coordinates, minlength=8) / samples - 1 / 8) <= 0.01)
