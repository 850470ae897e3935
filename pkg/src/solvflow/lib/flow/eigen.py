"""Unstable subspace W of the flow at γ^S and the emergence angle θ."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.linalg

from solvflow.lib.constants import EIGENSPACE_RANK_TOL
from solvflow.lib.core import SolvsolitonParams
from solvflow.lib.flow.exceptions import DegenerateEigenspace
from solvflow.lib.flow.vector_field import jacobian, require_curved, stationary_points

LOG = logging.getLogger(__name__)

_X, _Y, _Z, _W = range(4)
_MAX_CONDITION = 1e12


def closed_form_eigenvalues(params: SolvsolitonParams) -> Tuple[float, float]:
    """ε± = −1/2 ± √(8 + n − 8s₀) / (2√n)."""
    n = params.n
    root = math.sqrt(8.0 + n - 8.0 * params.s0) / (2.0 * math.sqrt(n))
    return -0.5 + root, -0.5 - root


@dataclass(frozen=True, eq=False)
class EigenData:
    eps_plus: float
    eps_minus: float
    w_basis: np.ndarray
    theta0: float

    @property
    def w0(self) -> np.ndarray:
        """Einstein direction: tangent to {w = nx}, positive z-component."""
        return self.w_basis[0]

    @property
    def w1(self) -> np.ndarray:
        """Direction with zero z-component and positive w-component."""
        return self.w_basis[1]

    @property
    def xz_matrix(self) -> np.ndarray:
        return np.array(
            [[self.w0[_X], self.w1[_X]], [self.w0[_Z], self.w1[_Z]]], dtype=float
        )

    @property
    def xz_condition(self) -> float:
        return float(np.linalg.cond(self.xz_matrix))

    @property
    def admissible_range(self) -> Tuple[float, float]:
        return -math.pi / 2, self.theta0


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def unstable_eigendata(params: SolvsolitonParams) -> EigenData:
    """Compute W as the null space of J − ε₊I at γ^S.

    The eigenvalue is doubly degenerate, so the basis comes from an SVD at the
    closed-form ε₊ rather than from an eigensolver's pairing.
    """
    require_curved(params)
    eps_plus, eps_minus = closed_form_eigenvalues(params)
    j = jacobian(stationary_points(params).s_plus, params)
    _, singular, vt = scipy.linalg.svd(j - eps_plus * np.eye(4))
    rank = int(np.sum(singular > EIGENSPACE_RANK_TOL * singular[0]))
    if rank != 2:
        raise DegenerateEigenspace(f"null space has dimension {4 - rank}, expected 2")
    null = vt[rank:].T

    # w0: the combination satisfying the Einstein constraint dw = n dx
    row = null[_W] - params.n * null[_X]
    w0 = null @ np.array([row[1], -row[0]])
    if w0[_Z] < 0:
        w0 = -w0
    # w1: the combination with vanishing z-component
    row = null[_Z]
    w1 = null @ np.array([row[1], -row[0]])
    if w1[_W] < 0:
        w1 = -w1
    w0, w1 = _unit(w0), _unit(w1)
    theta0 = math.atan2(w0[_X], w0[_Z])
    LOG.debug(f"ε± = {eps_plus!r}, {eps_minus!r}; θ₀ = {theta0!r}")
    return EigenData(eps_plus, eps_minus, np.array([w0, w1]), theta0)


def direction_from_angle(theta: float, eig: EigenData) -> np.ndarray:
    """Unit v ∈ W whose (x, z) components are proportional to (sin θ, cos θ)."""
    if eig.xz_condition > _MAX_CONDITION:
        raise DegenerateEigenspace(
            f"(x, z) projection of W is singular (condition {eig.xz_condition:.3e})"
        )
    coefficients = np.linalg.solve(
        eig.xz_matrix, np.array([math.sin(theta), math.cos(theta)])
    )
    return _unit(eig.w_basis.T @ coefficients)
