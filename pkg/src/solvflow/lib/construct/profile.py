"""Metric reconstruction from a trajectory and the soliton-equation residual."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from solvflow.lib.construct.exceptions import NonNegativeZ
from solvflow.lib.core import SolvsolitonParams
from solvflow.lib.flow import FullSystem, PhaseSystem
from solvflow.lib.integrate import Trajectory, cumulative_integral, monitor_phi

LOG = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MetricProfile:
    """g(s) = ds² + c²(s) e^{2h(s)D} g₀ with soliton potential f.

    `l_spectrum[k, i]` is the eigenvalue of the shape operator L = xI + yD₀ on
    the i-th eigenvector of D at sample k.
    """

    s_grid: np.ndarray
    c: np.ndarray
    h: np.ndarray
    f_prime: np.ndarray
    phi: Optional[np.ndarray]
    l_spectrum: np.ndarray

    @property
    def l_positive(self) -> bool:
        return bool(np.all(self.l_spectrum > 0))


class SolitonResidual(NamedTuple):
    tangential: np.ndarray
    normal: np.ndarray

    @property
    def sup(self) -> float:
        return float(max(np.max(self.tangential), np.max(self.normal)))


def shape_spectrum(states: np.ndarray, params: SolvsolitonParams) -> np.ndarray:
    d0 = params.trace_free_spectrum
    return states[:, [0]] + states[:, [1]] * d0[np.newaxis, :]


def reconstruct(t: Trajectory, params: SolvsolitonParams) -> MetricProfile:
    """c = √(s₀/z), h = ∫y with h = 0 at the sample nearest s = 0, f′ = w − nx."""
    z = t.states[:, 2]
    bad = np.flatnonzero(z >= 0)
    if len(bad):
        k = bad[0]
        raise NonNegativeZ(float(t.times[k]), float(z[k]))
    anchor = float(t.times[np.argmin(np.abs(t.times))])
    h = cumulative_integral(t, lambda states: states[:, 1], anchor)
    phi = monitor_phi(t, params).phi if t.captured_at_start else None
    return MetricProfile(
        s_grid=t.times.copy(),
        c=np.sqrt(params.s0 / z),
        h=h,
        f_prime=t.states[:, 3] - params.n * t.states[:, 0],
        phi=phi,
        l_spectrum=shape_spectrum(t.states, params),
    )


def soliton_residual(
    profile: MetricProfile,
    t: Trajectory,
    params: SolvsolitonParams,
    system: Optional[PhaseSystem] = None,
) -> SolitonResidual:
    """Residuals of the cohomogeneity-one soliton equations on the D-eigenbasis.

    L′ + f′L = r − (tr L)L − λI and tr L′ + f″ = −λ − tr L², with
    r = (z/s₀)(λ₀I + D) and every derivative taken from `system.field`.
    """
    system = system or FullSystem(params)
    states = t.states
    rates = np.array([system.field(p) for p in states])
    x, z = states[:, 0], states[:, 2]
    d = np.asarray(params.d_spectrum)
    d0 = params.trace_free_spectrum
    lam = params.lam

    big_l = profile.l_spectrum
    l_prime = rates[:, [0]] + rates[:, [1]] * d0[np.newaxis, :]
    r = (z / params.s0)[:, np.newaxis] * (params.lambda0 + d)[np.newaxis, :]
    tr_l = params.n * x
    f_prime = profile.f_prime[:, np.newaxis]
    tangential = l_prime + f_prime * big_l - r + tr_l[:, np.newaxis] * big_l + lam
    # tr L′ + f″ = w′ since f′ = w − tr L
    normal = rates[:, 3] + lam + np.sum(big_l**2, axis=1)
    residual = SolitonResidual(np.max(np.abs(tangential), axis=1), np.abs(normal))
    LOG.debug(f"Soliton residual sup {residual.sup:.3e}")
    return residual
