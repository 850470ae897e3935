from __future__ import annotations

import csv
import logging
import math
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from solvflow.lib.core import SolvsolitonParams
from solvflow.lib.flow import PhaseSystem, omega_margins
from solvflow.lib.integrate.exceptions import TrajectoryFormatError
from solvflow.lib.integrate.trajectory import Trajectory
from solvflow.lib.utils import format_float

LOG = logging.getLogger(__name__)

STATE_COLUMNS = ("x", "y", "z", "w")
MARGIN_COLUMNS = ("m_y", "m_nx_minus_y", "m_z_minus_s0", "m_minus_z")
PHI_COLUMN = "Phi"


def trajectory_columns(
    labels: Sequence[str], with_margins: bool, with_phi: bool
) -> List[str]:
    columns = ["s", *labels]
    if with_margins:
        columns.extend(MARGIN_COLUMNS)
    if with_phi:
        columns.append(PHI_COLUMN)
    return columns


def write_trajectory_csv(
    path: Path,
    t: Trajectory,
    params: Optional[SolvsolitonParams] = None,
    phi: Optional[np.ndarray] = None,
) -> None:
    """Write `s` and the state columns, plus Ω margins when `params` is given."""
    labels = t.system.labels if t.system is not None else STATE_COLUMNS[: t.dim]
    with_margins = params is not None and t.dim == 4
    columns = trajectory_columns(labels, with_margins, phi is not None)
    blocks = [t.times[:, np.newaxis], t.states]
    if with_margins:
        blocks.append(omega_margins(t.states, params))
    if phi is not None:
        blocks.append(np.asarray(phi)[:, np.newaxis])
    table = np.hstack(blocks)
    with Path(path).open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for row in table:
            writer.writerow([format_float(v) for v in row])
    LOG.debug(f"Wrote {len(table)} samples to {path}")


def _parse_row(path: Path, line: int, row: Dict[str, str], columns) -> List[float]:
    values = []
    for column in columns:
        raw = row.get(column)
        if raw is None or raw == "":
            problem = f"line {line}: missing value for {column!r}"
            raise TrajectoryFormatError(path, problem)
        try:
            value = float(raw)
        except ValueError as e:
            problem = f"line {line}: {column!r} is not a number: {raw!r}"
            raise TrajectoryFormatError(path, problem) from e
        if not math.isfinite(value):
            raise TrajectoryFormatError(path, f"line {line}: {column!r} is not finite")
        values.append(value)
    return values


def read_trajectory_csv(
    path: Path, system: Optional[PhaseSystem] = None
) -> Trajectory:
    """Read the `s` and state columns written by `write_trajectory_csv`.

    Extra columns are ignored. The result has no dense output.
    """
    labels = system.labels if system is not None else STATE_COLUMNS
    with Path(path).open(newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        header = reader.fieldnames or []
        missing = [c for c in ("s", *labels) if c not in header]
        if missing:
            raise TrajectoryFormatError(path, f"missing columns {missing}")
        rows = [
            _parse_row(path, reader.line_num, row, ("s", *labels)) for row in reader
        ]
    if not rows:
        raise TrajectoryFormatError(path, "no samples")
    table = np.array(rows)
    steps = np.diff(table[:, 0])
    if len(steps) and not (np.all(steps > 0) or np.all(steps < 0)):
        raise TrajectoryFormatError(path, "column 's' is not strictly monotone")
    return Trajectory(system, table[:, 0], table[:, 1:])
