import json
from pathlib import Path
from typing import List, Sequence, Union

import pandas as pd
from tabulate import tabulate

RUN_COLUMNS = ["seed", "best_f", "value_error", "location_error", "evaluations", "wall_time_s"]
TRACE_COLUMNS = ["level", "cumulative_evals", "best_f", "value_error"]
COMPARISON_COLUMNS = [
    "engine",
    "n_chains",
    "evaluations",
    "median_value_error",
    "median_location_error",
    "median_wall_time_s",
    "cpu_relative_speedup",
]
# Cells whose value is unknown (e.g. the location error of Michalewicz)
MISSING_MARKER = "–"

PathLike = Union[str, Path]


def write_csv(frame: pd.DataFrame, path: PathLike, columns: Sequence[str]) -> Path:
    """
    Writes a report with a fixed column order; floats are written at full round-trip precision
    Args:
        frame: report rows
        path: destination, parent directories are created
        columns: column order of the report schema

    Returns:
        path of the written file
    """
    path = Path(path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    frame[list(columns)].to_csv(path, index=False, na_rep=MISSING_MARKER)
    return path


def read_csv(path: PathLike) -> pd.DataFrame:
    return pd.read_csv(
        path, float_precision="round_trip", na_values=[MISSING_MARKER], keep_default_na=False
    )


def write_json(summary: dict, path: PathLike, **kwargs) -> Path:
    path = Path(path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(summary, f, indent=4, sort_keys=True, **kwargs)
    return path


def read_json(path: PathLike) -> dict:
    with open(path) as f:
        return json.load(f)


def format_cell(value) -> str:
    if value is None or (isinstance(value, float) and pd.isna(value)):
        return MISSING_MARKER
    if isinstance(value, float):
        return f"{value:.4e}"
    return str(value)


def format_table(rows: List[list], headers: Sequence[str], tablefmt: str = "github") -> str:
    table = [[format_cell(value) for value in row] for row in rows]
    return tabulate(table, headers=list(headers), tablefmt=tablefmt)


def latex_table(frame: pd.DataFrame) -> str:
    table = [[format_cell(value) for value in row] for row in frame.itertuples(index=False)]
    return tabulate(table, tablefmt="latex_raw", headers=list(frame.columns))
