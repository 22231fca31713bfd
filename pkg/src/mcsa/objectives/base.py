import threading
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np


@dataclass(frozen=True, eq=False)
class BoxDomain:
    """Box search space I = I_1 x ... x I_n with inclusive bounds."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=np.float64).reshape(-1)
        upper = np.asarray(self.upper, dtype=np.float64).reshape(-1)
        if len(lower) < 1 or len(lower) != len(upper):
            raise ValueError(
                f"Box bounds must have equal length >= 1, got {len(lower)} and {len(upper)}"
            )
        if not np.all(lower < upper):
            raise ValueError("Every lower bound must be strictly below its upper bound")
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def cube(cls, low: float, high: float, dim: int) -> "BoxDomain":
        return cls(np.full(dim, low, dtype=np.float64), np.full(dim, high, dtype=np.float64))

    @property
    def dim(self) -> int:
        return len(self.lower)

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    @property
    def center(self) -> np.ndarray:
        return 0.5 * (self.lower + self.upper)

    def describe(self) -> str:
        if np.all(self.lower == self.lower[0]) and np.all(self.upper == self.upper[0]):
            return f"[{self.lower[0]:g}, {self.upper[0]:g}]^{self.dim}"
        return " x ".join(f"[{lo:g}, {hi:g}]" for lo, hi in zip(self.lower, self.upper))


@dataclass(frozen=True, eq=False)
class ReferenceOptimum:
    """Known global minimum used for error reporting.

    Args:
        f_star: known global minimum value (f_r)
        minimizers: known minimizers, empty when the location is unknown
        location_at_origin: report the absolute location error instead of the relative one
    """

    f_star: float
    minimizers: Sequence[Sequence[float]] = ()
    location_at_origin: bool = False

    def __post_init__(self):
        points = tuple(np.asarray(x, dtype=np.float64).reshape(-1) for x in self.minimizers)
        for point in points:
            point.setflags(write=False)
        object.__setattr__(self, "minimizers", points)
        if self.location_at_origin and not any(np.all(p == 0.0) for p in points):
            raise ValueError("An origin-located optimum must list the zero vector")

    @property
    def location_known(self) -> bool:
        return len(self.minimizers) > 0


@dataclass(frozen=True, eq=False)
class ObjectiveFunction:
    """Benchmark cost function with its box domain and reference optimum.

    ``batch_eval`` maps an ``(m, n)`` array to ``(m,)`` values and must be pure; the
    arithmetic runs in the dtype of its input so float32 batches give single-precision
    values.
    """

    id: str
    name: str
    domain: BoxDomain
    batch_eval: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)
    reference: ReferenceOptimum

    def __post_init__(self):
        for point in self.reference.minimizers:
            if len(point) != self.dim:
                raise ValueError(
                    f"{self.id}: minimizer of length {len(point)} for a {self.dim}-dimensional domain"
                )
            if not contains(self.domain, point):
                raise ValueError(f"{self.id}: listed minimizer {point} lies outside the domain")

    @property
    def dim(self) -> int:
        return self.domain.dim

    def __call__(self, x: np.ndarray) -> float:
        return evaluate(self, x)


def _check_length(x: np.ndarray, dim: int) -> None:
    if x.shape[-1] != dim:
        raise ValueError(f"Dimension mismatch: expected length {dim}, got {x.shape[-1]}")


def evaluate_batch(f: ObjectiveFunction, points: np.ndarray) -> np.ndarray:
    points = np.atleast_2d(points)
    _check_length(points, f.dim)
    if points.dtype not in (np.float32, np.float64):
        points = points.astype(np.float64)
    return f.batch_eval(points)


def evaluate(f: ObjectiveFunction, x: np.ndarray) -> float:
    """
    Evaluates the objective at a single point
    Args:
        f: objective function
        x: point of length f.dim

    Returns:
        f(x) as a python float
    """
    x = np.asarray(x)
    if x.ndim != 1:
        raise ValueError(f"Expected a single point, got an array of shape {x.shape}")
    return float(evaluate_batch(f, x[None, :])[0])


def contains(domain: BoxDomain, x: np.ndarray) -> bool:
    x = np.asarray(x, dtype=np.float64)
    _check_length(x, domain.dim)
    return bool(np.all((domain.lower <= x) & (x <= domain.upper)))


def location_error(f: ObjectiveFunction, x: np.ndarray) -> float:
    """
    Distance from x to the nearest listed minimizer: relative in ||.||_2 when the minimum
    is not at the origin, absolute otherwise
    Args:
        f: objective function with a known minimizer location
        x: point found by an optimizer

    Returns:
        location error
    """
    if not f.reference.location_known:
        raise ValueError(f"The location of the minimum of {f.id} is unknown")
    x = np.asarray(x, dtype=np.float64)
    _check_length(x, f.dim)
    errors: List[float] = []
    for x_star in f.reference.minimizers:
        distance = np.linalg.norm(x - x_star)
        if f.reference.location_at_origin:
            errors.append(float(distance))
        else:
            errors.append(float(distance / np.linalg.norm(x_star)))
    return min(errors)


class CountingObjective:
    """Wraps an objective and counts evaluations; safe to share between worker threads."""

    def __init__(self, objective: ObjectiveFunction, dtype: Optional[np.dtype] = None):
        self.objective = objective
        self.dtype = np.dtype(dtype) if dtype is not None else np.dtype(np.float64)
        self.evaluations = 0
        self._lock = threading.Lock()

    @property
    def dim(self) -> int:
        return self.objective.dim

    @property
    def domain(self) -> BoxDomain:
        return self.objective.domain

    def __call__(self, points: np.ndarray) -> np.ndarray:
        values = evaluate_batch(self.objective, np.asarray(points).astype(self.dtype, copy=False))
        with self._lock:
            self.evaluations += len(values)
        return values
