"""
 Sequential (V0), asynchronous multi-chain (V1) and synchronous multi-chain (V2) annealing.

 Chains are grouped in fixed-size tiles and the tiles are mapped onto a thread pool. A tile is
 evaluated as one numpy batch, and the partition depends only on the chain count and the block
 size, so results do not depend on the number of workers or on the order in which tiles run.

 The result of a run is the reduce-min over the chains at the end of the last level. The trace
 records the best value seen at any reduce point so far.
"""
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from mcsa.annealing.core import (
    AnnealSchedule,
    ChainBlock,
    ladder,
    resample_coordinate,
    sweep_block,
)
from mcsa.annealing.rng import StreamBlock, start_stream_key
from mcsa.objectives.base import CountingObjective, ObjectiveFunction, contains
from mcsa.utils.parallel import optimal_worker_count, parallel_map

Candidate = Tuple[np.ndarray, float, int]

ENGINES = ["v0", "v1", "v2"]


class StartMode(str, Enum):
    SHARED = "shared"
    RANDOM = "random"


class Precision(str, Enum):
    DOUBLE = "double"
    SINGLE = "single"

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(np.float32) if self is Precision.SINGLE else np.dtype(np.float64)


@dataclass(frozen=True)
class EngineConfig:
    """Configuration shared by the three engines.

    Parameters:
    -----------
    schedule : AnnealSchedule
        Cooling ladder and sweep length.
    n_chains : int
        Number of Markov chains w.
    start_mode : StartMode
        Every chain starts from `start_point`, or from its own uniform random point.
    start_point : np.ndarray, optional
        Shared start point; the centre of the box when omitted.
    precision : Precision
        Arithmetic of objective evaluations and of the acceptance test.
    seed : int
        Master seed of every random stream.
    block_size : int
        Chains per tile; a tile is the unit of work handed to a worker.
    workers : int, optional
        Worker threads; None chooses from the core count.
    """

    schedule: AnnealSchedule
    n_chains: int = 1
    start_mode: StartMode = StartMode.SHARED
    start_point: Optional[Sequence[float]] = None
    precision: Precision = Precision.DOUBLE
    seed: int = 0
    block_size: int = 256
    workers: Optional[int] = None

    def __post_init__(self):
        if self.n_chains < 1:
            raise ValueError(f"Chain count must be >= 1, got {self.n_chains}")
        if self.block_size < 1:
            raise ValueError(f"Block size must be >= 1, got {self.block_size}")
        object.__setattr__(self, "start_mode", StartMode(self.start_mode))
        object.__setattr__(self, "precision", Precision(self.precision))


@dataclass(frozen=True)
class TraceRecord:
    level: int
    cumulative_evaluations: int
    best_f: float
    phase: str = "anneal"


@dataclass
class RunResult:
    best_x: np.ndarray
    best_f: float
    evaluations: int
    wall_time: float
    trace: List[TraceRecord]
    winning_chain: int
    engine: str = ""
    levels: int = 0
    draws: int = 0
    phase_evaluations: Dict[str, int] = field(default_factory=dict)


def reduce_min(candidates: Sequence[Candidate]) -> Candidate:
    """
    Selects the candidate with the smallest value, breaking ties by the smallest chain index,
    so any grouping or ordering of the candidates yields the same winner.
    """
    if len(candidates) == 0:
        raise ValueError("Cannot reduce an empty list of candidates")
    return min(candidates, key=lambda candidate: (candidate[1], candidate[2]))


def chain_tiles(n_chains: int, block_size: int) -> List[np.ndarray]:
    return [
        np.arange(start, min(start + block_size, n_chains))
        for start in range(0, n_chains, block_size)
    ]


def resolve_start_point(f: ObjectiveFunction, cfg: EngineConfig) -> np.ndarray:
    if cfg.start_point is None:
        return f.domain.center.copy()
    start = np.asarray(cfg.start_point, dtype=np.float64).reshape(-1)
    if len(start) != f.dim or not contains(f.domain, start):
        raise ValueError(f"Infeasible start point {start.tolist()} for {f.id} on {f.domain.describe()}")
    return start


def _initial_positions(
    f: ObjectiveFunction, cfg: EngineConfig, chain_ids: np.ndarray, start: np.ndarray
) -> np.ndarray:
    if cfg.start_mode is StartMode.SHARED:
        return np.tile(start, (len(chain_ids), 1))
    key = start_stream_key(cfg.seed, 0)
    streams = StreamBlock(key.master_seed, chain_ids)
    X = np.empty((len(chain_ids), f.dim))
    for coordinate in range(f.dim):
        X[:, coordinate] = resample_coordinate(
            f.domain.lower[coordinate], f.domain.upper[coordinate], streams.next_uniform()
        )
    return X


def _better(candidate: Candidate, incumbent: Optional[Candidate]) -> Candidate:
    if incumbent is None:
        return candidate
    return reduce_min([incumbent, candidate])


class _Run:
    """State shared by the tiles of one engine run."""

    def __init__(self, f: ObjectiveFunction, cfg: EngineConfig):
        self.f = f
        self.cfg = cfg
        self.start = resolve_start_point(f, cfg)
        self.info = ladder(cfg.schedule)
        self.evaluator = CountingObjective(f, cfg.precision.dtype)
        self.tiles = chain_tiles(cfg.n_chains, cfg.block_size)
        self.workers = optimal_worker_count(self.tiles, cfg.workers)

    def initial_block(self, chain_ids: np.ndarray, level_index: int) -> ChainBlock:
        X = _initial_positions(self.f, self.cfg, chain_ids, self.start)
        E = self.evaluator(X)
        return ChainBlock(X, E, StreamBlock(self.cfg.seed, chain_ids, level_index))

    def cumulative_evaluations(self, levels_done: int) -> int:
        return self.cfg.n_chains * (1 + self.cfg.schedule.sweep_length * levels_done)


def _finish(
    run: _Run,
    engine: str,
    final: Candidate,
    trace: List[TraceRecord],
    draws: int,
    started: float,
) -> RunResult:
    wall_time = time.perf_counter() - started
    best_x, best_f, winning_chain = final
    result = RunResult(
        best_x=best_x,
        best_f=float(best_f),
        evaluations=run.evaluator.evaluations,
        wall_time=wall_time,
        trace=trace,
        winning_chain=winning_chain,
        engine=engine,
        levels=run.info.levels,
        draws=draws,
        phase_evaluations={"anneal": run.evaluator.evaluations},
    )
    logging.info(
        f"{engine} on {run.f.id}: {run.cfg.n_chains} chains \t {run.info.levels} levels \t "
        f"{result.evaluations} evaluations \t best {result.best_f:.10g} \t {wall_time:.3g}s"
    )
    return result


def _run_independent_chains(f: ObjectiveFunction, cfg: EngineConfig, engine: str) -> RunResult:
    started = time.perf_counter()
    run = _Run(f, cfg)
    sweep_length = cfg.schedule.sweep_length

    def anneal_tile(chain_ids: np.ndarray):
        block = run.initial_block(chain_ids, 0)
        level_winners = []
        for temperature in run.info.temperatures:
            sweep_block(block, run.evaluator, f.domain, temperature, sweep_length)
            level_winners.append(block.best())
        return level_winners, block.streams.draws

    outcomes = parallel_map(anneal_tile, run.tiles, run.workers)
    incumbent = None
    trace = []
    for level in range(run.info.levels):
        # Diagnostic only: the chains never exchange states before the end of the run.
        winner = reduce_min([level_winners[level] for level_winners, _ in outcomes])
        incumbent = _better(winner, incumbent)
        trace.append(TraceRecord(level, run.cumulative_evaluations(level + 1), float(incumbent[1])))
        logging.debug(f"{engine} level {level}: best {incumbent[1]:.10g}")
    # the result is the single reduce over the final states, the incumbent only feeds the trace
    final = reduce_min([level_winners[-1] for level_winners, _ in outcomes])
    draws = sum(draws for _, draws in outcomes)
    return _finish(run, engine, final, trace, draws, started)


def run_sequential(f: ObjectiveFunction, cfg: EngineConfig) -> RunResult:
    if cfg.n_chains != 1:
        raise ValueError(f"The sequential engine runs exactly one chain, got {cfg.n_chains}")
    return _run_independent_chains(f, cfg, "v0")


def run_asynchronous(f: ObjectiveFunction, cfg: EngineConfig) -> RunResult:
    return _run_independent_chains(f, cfg, "v1")


def run_synchronous(f: ObjectiveFunction, cfg: EngineConfig) -> RunResult:
    """
    Every level, all chains start from the shared point, sweep once at the level's
    temperature with streams keyed by (seed, chain, level), and the reduce-min winner
    becomes the shared point of the next level.
    """
    started = time.perf_counter()
    run = _Run(f, cfg)
    sweep_length = cfg.schedule.sweep_length
    dtype = cfg.precision.dtype
    incumbent = None
    shared: Optional[Candidate] = None
    trace = []
    draws = 0
    for level, temperature in enumerate(run.info.temperatures):

        def sweep_tile(chain_ids: np.ndarray):
            if shared is None:
                block = run.initial_block(chain_ids, level)
            else:
                block = ChainBlock(
                    np.tile(shared[0], (len(chain_ids), 1)),
                    np.full(len(chain_ids), shared[1], dtype=dtype),
                    StreamBlock(cfg.seed, chain_ids, level),
                )
            sweep_block(block, run.evaluator, f.domain, temperature, sweep_length)
            return block.best(), block.streams.draws

        outcomes = parallel_map(sweep_tile, run.tiles, run.workers)
        shared = reduce_min([winner for winner, _ in outcomes])
        draws += sum(tile_draws for _, tile_draws in outcomes)
        incumbent = _better(shared, incumbent)
        trace.append(TraceRecord(level, run.cumulative_evaluations(level + 1), float(incumbent[1])))
        logging.debug(f"v2 level {level}: T={temperature:.4g} \t winner {shared[1]:.10g}")
    return _finish(run, "v2", shared, trace, draws, started)


def run_engine(engine: str, f: ObjectiveFunction, cfg: EngineConfig) -> RunResult:
    if engine == "v0":
        return run_sequential(f, cfg)
    elif engine == "v1":
        return run_asynchronous(f, cfg)
    elif engine == "v2":
        return run_synchronous(f, cfg)
    else:
        raise ValueError(f"Unknown engine: {engine}. Valid engines are: {', '.join(ENGINES)}")
