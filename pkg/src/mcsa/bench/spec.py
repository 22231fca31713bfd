"""
 Run specifications of the benchmark harness.

 A RunSpec is an omegaconf structured config. Values are resolved with the precedence
 dataclass defaults < JSON/YAML config file < explicit overrides (the CLI flags).
"""
import json
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException

from mcsa.annealing.core import AnnealSchedule
from mcsa.annealing.engines import ENGINES, EngineConfig, Precision, StartMode
from mcsa.objectives.registry import registry_get

HARNESS_ENGINES = ENGINES + ["hybrid"]


@dataclass
class RunSpec:
    function_id: str = "F0_a"
    engine: str = "v2"
    t0: float = 100.0
    t_min: float = 0.01
    rho: float = 0.95
    chain_length: int = 50
    # chain count, either an integer or blocks x grid such as "256x64"
    chains: str = "1024"
    start_mode: str = "shared"
    start_point: Optional[List[float]] = None
    seed: int = 0
    replications: int = 30
    precision: str = "double"
    block_size: int = 256
    workers: Optional[int] = None
    concurrent_replications: bool = False
    # fraction of the ladder kept by the annealing phase of the hybrid
    truncate_fraction: float = 0.05
    out: Optional[str] = None
    summary: Optional[str] = None
    trace: Optional[str] = None


def parse_chains(chains: Union[int, str]) -> int:
    """
    Chain count from an integer or a "BxG" product of block size and grid size
    Args:
        chains: e.g. 1024, "1024" or "256x64"

    Returns:
        number of chains
    """
    text = str(chains).strip().lower()
    try:
        factors = [int(factor) for factor in text.split("x")]
    except ValueError:
        raise ValueError(f"Invalid chain count: {chains}. Expected an integer or BxG, e.g. 256x64")
    if len(factors) > 2 or any(factor < 1 for factor in factors):
        raise ValueError(f"Invalid chain count: {chains}. Expected an integer or BxG, e.g. 256x64")
    n_chains = 1
    for factor in factors:
        n_chains *= factor
    return n_chains


def _load_file(path: Union[str, Path]):
    path = Path(path)
    if path.suffix == ".json":
        with open(path) as f:
            return OmegaConf.create(json.load(f))
    return OmegaConf.load(path)


def load_run_spec(config_path: Optional[Union[str, Path]] = None, overrides: Optional[dict] = None) -> RunSpec:
    """
    Resolves and validates a run specification
    Args:
        config_path: optional JSON or YAML document mirroring the RunSpec fields
        overrides: explicit values; entries set to None are ignored

    Returns:
        validated RunSpec
    """
    config = OmegaConf.structured(RunSpec)
    try:
        if config_path is not None:
            config = OmegaConf.merge(config, _load_file(config_path))
        if overrides:
            explicit = {key: value for key, value in overrides.items() if value is not None}
            config = OmegaConf.merge(config, explicit)
    except OmegaConfBaseException as e:
        raise ValueError(f"Invalid run spec: {e}") from e
    spec = OmegaConf.to_object(config)
    validate_run_spec(spec)
    return spec


def build_schedule(spec: RunSpec) -> AnnealSchedule:
    try:
        return AnnealSchedule(spec.t0, spec.t_min, spec.rho, spec.chain_length)
    except ValueError as e:
        raise ValueError(f"Invalid run spec field in (t0, t_min, rho, chain_length): {e}") from e


def validate_run_spec(spec: RunSpec) -> None:
    registry_get(spec.function_id)
    if spec.engine not in HARNESS_ENGINES:
        raise ValueError(
            f"Invalid run spec field engine: {spec.engine}. Valid engines are: {', '.join(HARNESS_ENGINES)}"
        )
    if spec.replications < 1:
        raise ValueError(f"Invalid run spec field replications: must be >= 1, got {spec.replications}")
    if spec.start_mode not in [mode.value for mode in StartMode]:
        raise ValueError(f"Invalid run spec field start_mode: {spec.start_mode}")
    if spec.precision not in [precision.value for precision in Precision]:
        raise ValueError(f"Invalid run spec field precision: {spec.precision}")
    if spec.workers is not None and spec.workers < 1:
        raise ValueError(f"Invalid run spec field workers: must be >= 1, got {spec.workers}")
    if spec.block_size < 1:
        raise ValueError(f"Invalid run spec field block_size: must be >= 1, got {spec.block_size}")
    if not 0 < spec.truncate_fraction <= 1:
        raise ValueError(f"Invalid run spec field truncate_fraction: {spec.truncate_fraction}")
    build_schedule(spec)
    n_chains = parse_chains(spec.chains)
    if spec.engine == "v0" and n_chains != 1:
        raise ValueError(f"Invalid run spec field chains: engine v0 runs one chain, got {n_chains}")


def build_engine_config(spec: RunSpec, seed: Optional[int] = None) -> EngineConfig:
    return EngineConfig(
        schedule=build_schedule(spec),
        n_chains=parse_chains(spec.chains),
        start_mode=StartMode(spec.start_mode),
        start_point=None if spec.start_point is None else list(spec.start_point),
        precision=Precision(spec.precision),
        seed=spec.seed if seed is None else seed,
        block_size=spec.block_size,
        workers=spec.workers,
    )
