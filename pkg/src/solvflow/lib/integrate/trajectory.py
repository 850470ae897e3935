"""Sampled solutions of a phase system with their events and dense output."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from solvflow.lib.constants import EventKind
from solvflow.lib.flow import PhaseSystem


class Event(NamedTuple):
    time: float
    kind: EventKind
    detail: str
    state: np.ndarray


class IntegratorStats(NamedTuple):
    method: str
    rtol: float
    atol: float
    nfev: int
    n_steps: int
    status: int
    message: str


class DenseOutput:
    """Piecewise dense interpolant built from `scipy.integrate.OdeSolution` legs."""

    def __init__(self, pieces: Sequence):
        self.pieces = list(pieces)
        first = self.pieces[0]
        self.dim = len(np.atleast_1d(first(first.t_min)))

    @property
    def t_min(self) -> float:
        return min(p.t_min for p in self.pieces)

    @property
    def t_max(self) -> float:
        return max(p.t_max for p in self.pieces)

    @property
    def breakpoints(self) -> np.ndarray:
        """Step boundaries of every leg, sorted and without duplicates."""
        return np.unique(np.concatenate([np.asarray(p.ts) for p in self.pieces]))

    def __call__(self, s) -> np.ndarray:
        """States at `s`, shaped (dim,) for a scalar and (m, dim) for an array."""
        grid = np.atleast_1d(np.asarray(s, dtype=float))
        result = np.full((len(grid), self.dim), np.nan)
        for piece in self.pieces:
            inside = (grid >= piece.t_min) & (grid <= piece.t_max)
            if np.any(inside):
                result[inside] = np.asarray(piece(grid[inside])).T
        if np.any(np.isnan(result[:, 0])):
            raise ValueError(f"s outside [{self.t_min!r}, {self.t_max!r}]")
        return result[0] if np.ndim(s) == 0 else result


@dataclass
class Trajectory:
    system: Optional[PhaseSystem]
    times: np.ndarray
    states: np.ndarray
    events: List[Event] = field(default_factory=list)
    stats: List[IntegratorStats] = field(default_factory=list)
    dense: Optional[DenseOutput] = None

    def __post_init__(self) -> None:
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.atleast_2d(np.asarray(self.states, dtype=float))
        if len(self.times) != len(self.states):
            raise ValueError("times and states must have the same length")
        steps = np.diff(self.times)
        if len(steps) and not (np.all(steps > 0) or np.all(steps < 0)):
            raise ValueError("times must be strictly monotone")

    def __len__(self) -> int:
        return len(self.times)

    @property
    def initial_state(self) -> np.ndarray:
        return self.states[0]

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    @property
    def is_increasing(self) -> bool:
        return len(self.times) < 2 or self.times[-1] > self.times[0]

    def events_of(self, kind: EventKind) -> List[Event]:
        return [e for e in self.events if e.kind == kind]

    @property
    def captured_at_start(self) -> bool:
        """True if the first sample lies in the capture ball of a stationary point."""
        return any(
            e.time == self.times[0] for e in self.events_of(EventKind.CAPTURED)
        )

    @property
    def capture(self) -> Optional[Event]:
        captures = self.events_of(EventKind.CAPTURED)
        return captures[-1] if captures else None

    def sample(self, grid) -> np.ndarray:
        """States on `grid`, from the dense output if there is one."""
        grid = np.asarray(grid, dtype=float)
        if self.dense is not None:
            return self.dense(grid)
        order = np.argsort(self.times)
        times = self.times[order]
        return np.stack(
            [np.interp(grid, times, self.states[order, k]) for k in range(self.dim)],
            axis=-1,
        )

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    def reversed(self) -> Trajectory:
        return Trajectory(
            self.system,
            self.times[::-1].copy(),
            self.states[::-1].copy(),
            list(self.events),
            list(self.stats),
            self.dense,
        )

    @classmethod
    def join(cls, backward: Trajectory, forward: Trajectory) -> Trajectory:
        """Concatenate a backward leg and a forward leg that share their start."""
        if backward.times[0] != forward.times[0]:
            raise ValueError("legs must start at the same time")
        back = backward.reversed()
        dense = None
        if backward.dense is not None and forward.dense is not None:
            dense = DenseOutput(backward.dense.pieces + forward.dense.pieces)
        # the start of the forward leg repeats the end of the reversed backward leg
        return cls(
            forward.system,
            np.concatenate([back.times, forward.times[1:]]),
            np.concatenate([back.states, forward.states[1:]]),
            sorted(backward.events + forward.events, key=lambda e: e.time),
            backward.stats + forward.stats,
            dense,
        )

    def restricted(self, s_min: float, s_max: float) -> Trajectory:
        """Samples with s in [s_min, s_max]; events outside are dropped."""
        mask = (self.times >= s_min) & (self.times <= s_max)
        events = [e for e in self.events if s_min <= e.time <= s_max]
        return Trajectory(
            self.system,
            self.times[mask],
            self.states[mask],
            events,
            self.stats,
            self.dense,
        )

    def resampled(self, count: int) -> Trajectory:
        """`count` samples evenly spaced between the first and the last time."""
        if count < 2:
            raise ValueError(f"need at least 2 samples, got {count}")
        grid = np.linspace(self.times[0], self.times[-1], count)
        return Trajectory(
            self.system,
            grid,
            self.sample(grid),
            list(self.events),
            list(self.stats),
            self.dense,
        )
