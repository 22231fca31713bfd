"""
 Bound-constrained Nelder-Mead simplex minimiser used to polish annealing results.
 Trial points leaving the box are clamped coordinate-wise onto it before evaluation.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from mcsa.objectives.base import ObjectiveFunction, contains, evaluate_batch

INITIAL_STEP_FRACTION = 0.05


@dataclass(frozen=True)
class NelderMeadConfig:
    """Simplex coefficients and stopping rule.

    Parameters:
    -----------
    reflect, expand, contract, shrink: float
        Transformation coefficients, with reflect > 0, expand > 1 and contract, shrink in (0, 1).
    f_tol: float
        Stop once the spread of vertex values is at most f_tol.
    x_tol: float
        Stop once every vertex lies within x_tol (max-norm) of the best one.
    max_iters: int, optional
        Iteration cap; 50000 * n when omitted.
    """

    reflect: float = 1.0
    expand: float = 2.0
    contract: float = 0.5
    shrink: float = 0.5
    f_tol: float = 1e-12
    x_tol: float = 1e-10
    max_iters: Optional[int] = None

    def __post_init__(self):
        if not self.reflect > 0:
            raise ValueError(f"Reflection coefficient must be > 0, got {self.reflect}")
        if not self.expand > 1:
            raise ValueError(f"Expansion coefficient must be > 1, got {self.expand}")
        if not 0 < self.contract < 1:
            raise ValueError(f"Contraction coefficient must lie in (0, 1), got {self.contract}")
        if not 0 < self.shrink < 1:
            raise ValueError(f"Shrink coefficient must lie in (0, 1), got {self.shrink}")
        if self.f_tol < 0 or self.x_tol < 0:
            raise ValueError(f"Tolerances must be non-negative, got f_tol={self.f_tol} x_tol={self.x_tol}")
        if self.max_iters is not None and self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")

    def iteration_cap(self, dim: int) -> int:
        return self.max_iters if self.max_iters is not None else 50000 * dim


class Simplex:
    """n + 1 vertices with cached values, kept sorted by ascending value."""

    def __init__(self, vertices: np.ndarray, values: np.ndarray):
        vertices = np.array(vertices, dtype=np.float64)
        values = np.array(values, dtype=np.float64).reshape(-1)
        if vertices.ndim != 2 or vertices.shape[0] != vertices.shape[1] + 1:
            raise ValueError(f"A simplex in n dimensions needs n + 1 vertices, got shape {vertices.shape}")
        if len(values) != len(vertices):
            raise ValueError(f"Got {len(values)} values for {len(vertices)} vertices")
        self.vertices = vertices
        self.values = values
        self.sort()

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    def sort(self) -> None:
        order = np.argsort(self.values, kind="stable")
        self.vertices = self.vertices[order]
        self.values = self.values[order]

    def replace_worst(self, vertex: np.ndarray, value: float) -> None:
        self.vertices[-1] = vertex
        self.values[-1] = value
        self.sort()

    def centroid(self) -> np.ndarray:
        return self.vertices[:-1].mean(axis=0)

    def spread(self) -> float:
        return float(self.values[-1] - self.values[0])

    def diameter(self) -> float:
        return float(np.max(np.abs(self.vertices[1:] - self.vertices[0])))

    @property
    def best(self) -> Tuple[np.ndarray, float]:
        return self.vertices[0].copy(), float(self.values[0])


def initial_simplex(x_start: np.ndarray, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    vertices = np.tile(x_start, (len(x_start) + 1, 1))
    steps = INITIAL_STEP_FRACTION * (upper - lower)
    for k in range(len(x_start)):
        moved = x_start[k] + steps[k]
        vertices[k + 1, k] = moved if moved <= upper[k] else x_start[k] - steps[k]
    return vertices


def nelder_mead_minimize(
    f: ObjectiveFunction, x_start, cfg: NelderMeadConfig = NelderMeadConfig()
) -> Tuple[np.ndarray, float, int, int]:
    """
    Minimises f from x_start
    Args:
        f: objective with a box domain
        x_start: feasible start point, used as the first vertex
        cfg: coefficients and stopping rule

    Returns:
        best vertex, its value, iterations performed, objective evaluations
    """
    x_start = np.asarray(x_start, dtype=np.float64).reshape(-1)
    lower, upper = f.domain.lower, f.domain.upper
    if len(x_start) != f.dim or not contains(f.domain, x_start):
        raise ValueError(f"Infeasible start point {x_start.tolist()} for {f.id} on {f.domain.describe()}")
    evaluations = 0

    def evaluate_points(points: np.ndarray) -> np.ndarray:
        nonlocal evaluations
        points = np.atleast_2d(points)
        evaluations += len(points)
        return np.asarray(evaluate_batch(f, points), dtype=np.float64)

    def trial(point: np.ndarray) -> Tuple[np.ndarray, float]:
        point = np.clip(point, lower, upper)
        return point, float(evaluate_points(point)[0])

    vertices = initial_simplex(x_start, lower, upper)
    simplex = Simplex(vertices, evaluate_points(vertices))
    max_iters = cfg.iteration_cap(f.dim)
    iterations = 0
    while iterations < max_iters:
        if simplex.spread() <= cfg.f_tol or simplex.diameter() <= cfg.x_tol:
            break
        iterations += 1
        centroid = simplex.centroid()
        worst = simplex.vertices[-1]
        f_best, f_second_worst, f_worst = simplex.values[0], simplex.values[-2], simplex.values[-1]

        x_r, f_r = trial(centroid + cfg.reflect * (centroid - worst))
        if f_best <= f_r < f_second_worst:
            simplex.replace_worst(x_r, f_r)
            continue
        if f_r < f_best:
            x_e, f_e = trial(centroid + cfg.expand * (x_r - centroid))
            if f_e < f_r:
                simplex.replace_worst(x_e, f_e)
            else:
                simplex.replace_worst(x_r, f_r)
            continue
        if f_r < f_worst:
            x_c, f_c = trial(centroid + cfg.contract * (x_r - centroid))
            if f_c <= f_r:
                simplex.replace_worst(x_c, f_c)
                continue
        else:
            x_c, f_c = trial(centroid + cfg.contract * (worst - centroid))
            if f_c < f_worst:
                simplex.replace_worst(x_c, f_c)
                continue
        # shrink towards the best vertex
        best = simplex.vertices[0]
        shrunk = np.clip(best + cfg.shrink * (simplex.vertices[1:] - best), lower, upper)
        simplex.vertices[1:] = shrunk
        simplex.values[1:] = evaluate_points(shrunk)
        simplex.sort()

    x_best, f_best = simplex.best
    logging.debug(f"Nelder-Mead on {f.id}: {iterations} iterations \t {evaluations} evaluations \t {f_best:.12g}")
    return x_best, f_best, iterations, evaluations
