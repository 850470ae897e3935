"""Diagnostics along a full-system trajectory: Ω margins and the potential Φ."""

from __future__ import annotations

import logging
from typing import List, NamedTuple, Optional

import numpy as np

from solvflow.lib.constants import EventKind
from solvflow.lib.core import SolvsolitonParams
from solvflow.lib.flow import closed_form_eigenvalues, omega_margins, vector_field
from solvflow.lib.integrate.exceptions import NotCaptured
from solvflow.lib.integrate.quadrature import cumulative_integral
from solvflow.lib.integrate.trajectory import Event, Trajectory

LOG = logging.getLogger(__name__)


class OmegaReport(NamedTuple):
    margins: np.ndarray
    minimum_margins: np.ndarray
    entry_time: Optional[float]
    exits: List[Event]
    z_increasing: bool

    @property
    def clean(self) -> bool:
        return not self.exits and self.entry_time is not None


class PhiMonitor(NamedTuple):
    phi: np.ndarray
    phi_prime: np.ndarray
    phi_second: np.ndarray
    residual: np.ndarray


def monitor_omega(t: Trajectory, params: SolvsolitonParams) -> OmegaReport:
    """Margins of the Ω inequalities, the first time all hold, and z-monotonicity.

    z is strictly increasing in s inside Ω; the check is restricted to the
    samples after entry.
    """
    margins = omega_margins(t.states, params)
    inside = np.all(margins > 0, axis=1)
    entry_time = float(t.times[np.argmax(inside)]) if np.any(inside) else None
    z = t.states[inside, 2]
    dz = np.diff(z) * np.sign(np.diff(t.times[inside]))
    z_increasing = bool(np.all(dz > 0)) if len(dz) else True
    exits = [e for e in t.events_of(EventKind.OMEGA_EXIT) if e.time != t.times[0]]
    return OmegaReport(
        margins=margins,
        minimum_margins=np.min(margins, axis=0) if len(margins) else margins,
        entry_time=entry_time,
        exits=exits,
        z_increasing=z_increasing,
    )


def phi_integrand(params: SolvsolitonParams):
    n = params.n
    return lambda states: states[:, 3] - n * states[:, 0]


def monitor_phi(t: Trajectory, params: SolvsolitonParams) -> PhiMonitor:
    """Φ with Φ′ = φ = w − nx, anchored by the exponential tail at γ^S.

    Near γ^S the trajectory leaves along e^{ε₊s}, so ∫_{−∞}^{s_cap} φ = φ(s_cap)/ε₊.
    The residual Φ″ + wΦ′ + 2λΦ vanishes on exact solutions.
    """
    if not t.captured_at_start:
        raise NotCaptured("The potential Φ")
    eps_plus, _ = closed_form_eigenvalues(params)
    integrand = phi_integrand(params)
    phi_prime = integrand(t.states)
    tail = phi_prime[0] / eps_plus
    phi = tail + cumulative_integral(t, integrand)
    rates = np.array([vector_field(p, params) for p in t.states])
    phi_second = rates[:, 3] - params.n * rates[:, 0]
    residual = phi_second + t.states[:, 3] * phi_prime + 2.0 * params.lam * phi
    LOG.debug(f"Φ residual max {np.max(np.abs(residual)):.3e}")
    return PhiMonitor(phi, phi_prime, phi_second, residual)
