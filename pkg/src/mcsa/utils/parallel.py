import os
from typing import Callable, Iterable, List, Optional, TypeVar

from joblib import Parallel, delayed

T = TypeVar("T")
R = TypeVar("R")


def optimal_worker_count(workload, requested: Optional[int] = None) -> int:
    """
    Number of worker threads for a workload
    Args:
        workload: number of tasks, or a sized collection of tasks
        requested: explicit worker count; None reserves one core and never exceeds the workload

    Returns:
        worker count, always >= 1
    """
    size = len(workload) if hasattr(workload, "__len__") else int(workload)
    if requested is not None:
        if requested < 1:
            raise ValueError(f"Worker count must be >= 1, got {requested}")
        return max(1, min(requested, size))
    num_cores = os.cpu_count() or 1
    if size == 0:
        return 1
    return min(size, max(1, num_cores - 1))


def parallel_map(function: Callable[[T], R], tasks: Iterable[T], workers: int = 1) -> List[R]:
    """Maps function over tasks with a thread pool; results keep the order of the tasks."""
    tasks = list(tasks)
    if workers <= 1 or len(tasks) <= 1:
        return [function(task) for task in tasks]
    return Parallel(n_jobs=workers, prefer="threads")(delayed(function)(task) for task in tasks)
