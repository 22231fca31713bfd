from dataclasses import dataclass
from typing import Callable, Tuple, Union

import numpy as np

from mcsa.annealing.rng import StreamBlock, UniformStream
from mcsa.objectives.base import BoxDomain, CountingObjective, ObjectiveFunction, evaluate_batch

Evaluator = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class AnnealSchedule:
    """Geometric cooling schedule.

    Parameters:
    -----------
    t0: float
        Initial temperature T_0.
    t_min: float
        Target temperature; the ladder stops once the temperature is no longer above it.
    rho: float
        Cooling factor in (0, 1).
    sweep_length: int
        Number of Metropolis steps N performed at every temperature level.
    """

    t0: float
    t_min: float
    rho: float
    sweep_length: int

    def __post_init__(self):
        if not self.t0 > 0 or not self.t_min > 0:
            raise ValueError(f"Temperatures must be positive, got t0={self.t0} t_min={self.t_min}")
        if not self.t_min < self.t0:
            raise ValueError(f"t_min={self.t_min} must be below t0={self.t0}")
        if not 0 < self.rho < 1:
            raise ValueError(f"Cooling factor rho must lie in (0, 1), got {self.rho}")
        if self.sweep_length < 1:
            raise ValueError(f"Sweep length must be >= 1, got {self.sweep_length}")


@dataclass(frozen=True)
class LadderInfo:
    levels: int
    temperatures: Tuple[float, ...]


@dataclass
class ChainState:
    x: np.ndarray
    energy: float
    stream: UniformStream


def ladder(sched: AnnealSchedule) -> LadderInfo:
    """
    Temperatures visited by the do-while cooling loop: sweep at T, then T = rho * T, and
    repeat while T > t_min. The loop is iterated explicitly so the level count matches the
    engines exactly at the boundary.
    """
    temperatures = []
    temperature = sched.t0
    while True:
        temperatures.append(temperature)
        temperature = sched.rho * temperature
        if not temperature > sched.t_min:
            break
    return LadderInfo(len(temperatures), tuple(temperatures))


def expected_evaluations(sched: AnnealSchedule, n_chains: int) -> int:
    """One initial evaluation per chain plus N evaluations per chain and level."""
    if n_chains < 1:
        raise ValueError(f"Chain count must be >= 1, got {n_chains}")
    return n_chains * (1 + sched.sweep_length * ladder(sched).levels)


def resample_coordinate(lower, upper, u):
    return np.minimum(lower + u * (upper - lower), upper)


def acceptance(delta_e, temperature: float, u) -> np.ndarray:
    """Metropolis rule u <= exp(-dE/T), always true for dE <= 0."""
    delta_e = np.asarray(delta_e)
    dtype = np.dtype(np.float32) if delta_e.dtype == np.float32 else np.dtype(np.float64)
    uphill = np.maximum(delta_e, 0).astype(dtype)
    probability = np.exp(-uphill / dtype.type(temperature))
    return (delta_e <= 0) | (np.asarray(u).astype(dtype) <= probability)


def compute_neighbour(x: np.ndarray, domain: BoxDomain, stream: UniformStream) -> np.ndarray:
    coordinate = stream.next_coordinate_index(domain.dim)
    u = stream.next_uniform()
    neighbour = np.array(x, dtype=np.float64, copy=True)
    neighbour[coordinate] = resample_coordinate(
        domain.lower[coordinate], domain.upper[coordinate], u
    )
    return neighbour


def metropolis_accept(delta_e: float, temperature: float, stream: UniformStream) -> bool:
    if not temperature > 0:
        raise ValueError(f"Temperature must be positive, got {temperature}")
    # The draw is consumed even when the move is downhill.
    u = stream.next_uniform()
    return bool(acceptance(delta_e, temperature, u))


class ChainBlock:
    """A tile of chains: positions X (m, n), cached energies E (m,) and their streams."""

    def __init__(self, X: np.ndarray, E: np.ndarray, streams: StreamBlock):
        self.X = X
        self.E = E
        self.streams = streams

    def __len__(self) -> int:
        return len(self.E)

    def best(self) -> Tuple[np.ndarray, float, int]:
        position = int(np.argmin(self.E))
        return (
            self.X[position].copy(),
            float(self.E[position]),
            int(self.streams.chain_indices[position]),
        )


def sweep_block(
    block: ChainBlock,
    evaluator: Evaluator,
    domain: BoxDomain,
    temperature: float,
    n_steps: int,
) -> ChainBlock:
    """
    Runs n_steps Metropolis steps on every chain of the block, in place. Each step draws the
    coordinate, the new coordinate value and the acceptance uniform, in that order.
    """
    if not temperature > 0:
        raise ValueError(f"Temperature must be positive, got {temperature}")
    if n_steps < 1:
        raise ValueError(f"Sweep length must be >= 1, got {n_steps}")
    rows = np.arange(len(block))
    n = domain.dim
    for _ in range(n_steps):
        coordinates = block.streams.next_coordinate_index(n)
        u = block.streams.next_uniform()
        candidates = block.X.copy()
        candidates[rows, coordinates] = resample_coordinate(
            domain.lower[coordinates], domain.upper[coordinates], u
        )
        energies = evaluator(candidates)
        accepted = acceptance(energies - block.E, temperature, block.streams.next_uniform())
        block.X[accepted] = candidates[accepted]
        block.E = np.where(accepted, energies, block.E)
    return block


def _evaluator_for(f: Union[ObjectiveFunction, CountingObjective]) -> Evaluator:
    if isinstance(f, CountingObjective):
        return f
    return lambda points: evaluate_batch(f, points)


def metropolis_sweep(
    state: ChainState,
    f: Union[ObjectiveFunction, CountingObjective],
    temperature: float,
    n_steps: int,
) -> ChainState:
    streams = StreamBlock.from_stream(state.stream)
    block = ChainBlock(
        np.array(state.x, dtype=np.float64, copy=True)[None, :],
        np.array([state.energy], dtype=getattr(f, "dtype", np.float64)),
        streams,
    )
    sweep_block(block, _evaluator_for(f), f.domain, temperature, n_steps)
    return ChainState(block.X[0], block.E[0].item(), streams.stream(0))
