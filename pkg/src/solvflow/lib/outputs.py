"""Report writers: JSON documents, CSV and gnuplot tables, trajectory plots.

Output is byte-identical for identical inputs: fixed column order, sorted
JSON keys, shortest round-trip floats in JSON, 17 significant digits in CSV
and no timestamps anywhere.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import logging
import math
from enum import Enum
from pathlib import Path
from typing import Any, List, Optional, Sequence

import matplotlib
import numpy as np
import typer

from solvflow.lib.construct import MetricProfile, SweepRow
from solvflow.lib.integrate import Event, Trajectory
from solvflow.lib.utils import format_float

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

LOG = logging.getLogger(__name__)

SWEEP_COLUMNS = list(SweepRow._fields)


def to_jsonable(value: Any) -> Any:
    """Plain JSON data from numpy values, NamedTuples, dataclasses and enums.

    Non-finite floats become strings ("nan", "inf", "-inf").
    """
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else repr(value)
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if hasattr(value, "_asdict"):
        return {k: to_jsonable(v) for k, v in value._asdict().items()}
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        fields = dataclasses.fields(value)
        return {f.name: to_jsonable(getattr(value, f.name)) for f in fields}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


def dumps_report(payload: Any) -> str:
    return json.dumps(
        to_jsonable(payload), ensure_ascii=False, indent=2, sort_keys=True
    )


def write_json(payload: Any, path: Optional[Path] = None) -> None:
    """Write the report to `path`, or to stdout when no path is given."""
    text = dumps_report(payload)
    if path is None:
        typer.echo(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text + "\n", encoding="utf-8")
    LOG.info(f"Wrote {path}")


def event_record(event: Event) -> dict:
    return {
        "time": event.time,
        "kind": event.kind,
        "detail": event.detail,
        "state": event.state,
    }


def _csv_cell(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    return format_float(value)


def write_sweep_csv(path: Path, rows: Sequence[SweepRow]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        for row in rows:
            writer.writerow([_csv_cell(value) for value in row])
    LOG.info(f"Wrote {len(rows)} sweep rows to {path}")


def write_columns(path: Path, columns: Sequence[str], table: np.ndarray) -> None:
    """Whitespace-separated table with a `#` header line, as gnuplot reads it."""
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = ["# " + " ".join(columns)]
    lines.extend(" ".join(format_float(v) for v in row) for row in table)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    LOG.info(f"Wrote {len(table)} rows to {path}")


def profile_columns(profile: MetricProfile) -> List[str]:
    columns = ["s", "c", "h", "f_prime"]
    if profile.phi is not None:
        columns.append("Phi")
    columns.extend(f"L{i + 1}" for i in range(profile.l_spectrum.shape[1]))
    return columns


def write_profile(path: Path, profile: MetricProfile) -> None:
    """CSV for a `.csv` path, JSON otherwise."""
    if path.suffix.lower() != ".csv":
        write_json(profile, path)
        return
    blocks = [profile.s_grid, profile.c, profile.h, profile.f_prime]
    if profile.phi is not None:
        blocks.append(profile.phi)
    table = np.column_stack([*blocks, profile.l_spectrum])
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(profile_columns(profile))
        for row in table:
            writer.writerow([format_float(v) for v in row])
    LOG.info(f"Wrote {len(table)} profile samples to {path}")


def plot_trajectory(
    path: Path, t: Trajectory, title: Optional[str] = None
) -> None:
    """One panel per phase variable against s."""
    labels: List[str] = (
        list(t.system.labels)
        if t.system is not None
        else [f"q{i}" for i in range(t.dim)]
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, axes = plt.subplots(
        len(labels), 1, figsize=(8.0, 2.0 * len(labels)), sharex=True
    )
    for ax, label, column in zip(np.atleast_1d(axes), labels, t.states.T):
        ax.plot(t.times, column, linewidth=1.2)
        ax.set_ylabel(label)
        ax.grid(alpha=0.25)
        for event in t.events:
            if event.time != t.times[0] and event.time != t.times[-1]:
                ax.axvline(event.time, color="#d62728", linestyle=":", linewidth=1.0)
    np.atleast_1d(axes)[-1].set_xlabel("s")
    if title:
        fig.suptitle(title)
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    LOG.info(f"Wrote {path}")
