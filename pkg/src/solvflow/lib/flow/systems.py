from __future__ import annotations

import math
from abc import ABC, abstractmethod
from typing import Callable, Dict, List, NamedTuple, Optional

import numpy as np

from solvflow.lib.constants import EventKind, SystemKind
from solvflow.lib.core import SolvsolitonParams
from solvflow.lib.flow.subsystems import (
    einstein_field,
    einstein_jacobian,
    einstein_stationary_points,
    noscal_field,
    noscal_jacobian,
    noscal_stationary_points,
    require_noscal_lambda,
)
from solvflow.lib.flow.vector_field import (
    OMEGA_INEQUALITIES,
    jacobian,
    require_curved,
    stationary_points,
    vector_field,
)


class Monitor(NamedTuple):
    """A non-terminal root function of the state, reported as an event."""

    kind: EventKind
    detail: str
    function: Callable[[np.ndarray], float]
    direction: float = 0.0


class PhaseSystem(ABC):
    kind: SystemKind
    dim: int
    labels: tuple

    @abstractmethod
    def field(self, state) -> np.ndarray:
        raise NotImplementedError()

    @abstractmethod
    def jacobian(self, state) -> np.ndarray:
        raise NotImplementedError()

    @abstractmethod
    def stationary_points(self) -> Dict[str, np.ndarray]:
        raise NotImplementedError()

    def monitors(self) -> List[Monitor]:
        return []

    def __call__(self, s: float, state: np.ndarray) -> np.ndarray:
        return self.field(state)


class FullSystem(PhaseSystem):
    kind = SystemKind.FULL
    dim = 4
    labels = ("x", "y", "z", "w")

    def __init__(self, params: SolvsolitonParams):
        require_curved(params)
        self.params = params

    def field(self, state) -> np.ndarray:
        return vector_field(state, self.params)

    def jacobian(self, state) -> np.ndarray:
        return jacobian(state, self.params)

    def stationary_points(self) -> Dict[str, np.ndarray]:
        points = stationary_points(self.params)
        result = {
            "gamma_H+": np.array(points.h_plus),
            "gamma_H-": np.array(points.h_minus),
        }
        # γ^S is stationary only for the solvsoliton's own constant
        if math.isclose(self.params.lam, self.params.lambda0, rel_tol=1e-14):
            result["gamma_S+"] = np.array(points.s_plus)
            result["gamma_S-"] = np.array(points.s_minus)
        return result

    def monitors(self) -> List[Monitor]:
        n, s0 = self.params.n, self.params.s0
        margins: List[Callable[[np.ndarray], float]] = [
            lambda p: p[1],
            lambda p: n * p[0] - p[1],
            lambda p: p[2] - s0,
            lambda p: -p[2],
        ]
        result = [
            Monitor(EventKind.OMEGA_EXIT, name, margin, direction=-1.0)
            for name, margin in zip(OMEGA_INEQUALITIES, margins)
        ]
        sign_change = Monitor(
            EventKind.W_MINUS_NX_SIGN_CHANGE, "w - nx", lambda p: p[3] - n * p[0]
        )
        result.append(sign_change)
        return result


class EinsteinSystem(PhaseSystem):
    kind = SystemKind.EINSTEIN
    dim = 2
    labels = ("x", "y")

    def __init__(self, params: SolvsolitonParams):
        require_curved(params)
        self.params = params

    def field(self, state) -> np.ndarray:
        return einstein_field(state, self.params)

    def jacobian(self, state) -> np.ndarray:
        return einstein_jacobian(state, self.params)

    def stationary_points(self) -> Dict[str, np.ndarray]:
        s_point, h_point = einstein_stationary_points(self.params)
        result = {
            "gamma_H+|E": np.array(h_point),
            "gamma_H-|E": -np.array(h_point),
        }
        if math.isclose(self.params.lam, self.params.lambda0, rel_tol=1e-14):
            result["gamma_S+|E"] = np.array(s_point)
            result["gamma_S-|E"] = -np.array(s_point)
        return result


class NoScalSystem(PhaseSystem):
    kind = SystemKind.NOSCAL
    dim = 2
    labels = ("y", "w")

    def __init__(self, lam: float):
        require_noscal_lambda(lam)
        self.lam = lam

    def field(self, state) -> np.ndarray:
        return noscal_field(state, self.lam)

    def jacobian(self, state) -> np.ndarray:
        return noscal_jacobian(state, self.lam)

    def stationary_points(self) -> Dict[str, np.ndarray]:
        plus, minus = noscal_stationary_points()
        return {"(1, 1)": np.array(plus), "(-1, -1)": np.array(minus)}


def make_system(
    kind: SystemKind,
    params: Optional[SolvsolitonParams] = None,
    lam: Optional[float] = None,
) -> PhaseSystem:
    kind = SystemKind(kind)
    if kind == SystemKind.NOSCAL:
        if lam is None:
            raise ValueError("The noscal system needs a value for λ")
        return NoScalSystem(lam)
    if params is None:
        raise ValueError(f"The {kind.value} system needs solvsoliton parameters")
    if lam is not None:
        params = params.with_lambda(lam)
    if kind == SystemKind.EINSTEIN:
        return EinsteinSystem(params)
    return FullSystem(params)
