from typing import Callable, Dict, Iterable, List, Optional

import numpy as np
import pandas as pd

from mcsa.objectives.base import ObjectiveFunction, location_error

AGGREGATES = ["median", "mean", "min", "max"]


def value_error(f_found: float, f_star: float) -> float:
    """
    Gap |f_a - f_r| between the value found and the reference minimum
    Args:
        f_found: best value found by the algorithm
        f_star: known global minimum

    Returns:
        non-negative value error
    """
    return abs(float(f_found) - float(f_star))


def location_error_or_none(f: ObjectiveFunction, x: np.ndarray) -> Optional[float]:
    """Location error, or None when the minimizer of f is unknown."""
    if not f.reference.location_known:
        return None
    return location_error(f, x)


def compute_metrics(data: np.ndarray, metrics: Iterable[Callable]) -> list:
    return [metric(data) for metric in metrics]


def aggregate(values: Iterable[Optional[float]]) -> Dict[str, Optional[float]]:
    """
    Median, mean, min and max of a metric over replications. Missing values are ignored;
    a metric that is missing for every replication aggregates to None.
    """
    data = np.array([value for value in values if value is not None], dtype=np.float64)
    if len(data) == 0:
        return {name: None for name in AGGREGATES}
    return dict(
        zip(AGGREGATES, [float(x) for x in compute_metrics(data, [np.median, np.mean, np.min, np.max])])
    )


def aggregate_columns(rows: pd.DataFrame, columns: List[str]) -> Dict[str, Dict[str, Optional[float]]]:
    return {
        column: aggregate(None if pd.isna(value) else value for value in rows[column])
        for column in columns
    }
