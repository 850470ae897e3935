"""The two-dimensional Einstein and no-scal subsystems and their embeddings."""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np

from solvflow.lib.constants import REGION_TOL
from solvflow.lib.core import SolvsolitonParams
from solvflow.lib.flow.exceptions import LambdaOutOfRange
from solvflow.lib.flow.phase_point import EinsteinPoint, NoScalPoint, PhasePoint
from solvflow.lib.flow.vector_field import require_curved


def einstein_z(q, params: SolvsolitonParams) -> float:
    """z on the Einstein set E = {w = nx}: λ(n−1) + n(n−1)x² − y² tr D₀²."""
    x, y = (float(v) for v in q)
    n = params.n
    return params.lam * (n - 1) + x * x * n * (n - 1) - y * y * params.tr_d0_sq


def einstein_field(q, params: SolvsolitonParams) -> np.ndarray:
    require_curved(params)
    x, y = (float(v) for v in q)
    n, lam, s0 = params.n, params.lam, params.s0
    return np.array(
        [
            -lam / n - x * x - y * y * params.tr_d0_sq / n,
            lam * (n - 1) / s0 + x * x * n * (n - 1) / s0 + y * y / n - n * x * y,
        ]
    )


def einstein_jacobian(q, params: SolvsolitonParams) -> np.ndarray:
    require_curved(params)
    x, y = (float(v) for v in q)
    n = params.n
    return np.array(
        [
            [-2.0 * x, -2.0 * y * params.tr_d0_sq / n],
            [2.0 * x * n * (n - 1) / params.s0 - n * y, 2.0 * y / n - n * x],
        ]
    )


def in_einstein_region(
    q, params: SolvsolitonParams, tol: float = REGION_TOL
) -> bool:
    """Membership in K = {x ≥ 0, y ≥ 0, 𝓔₁ ≥ 0, 𝓔₂ ≤ 0}, up to `tol`."""
    x, y = (float(v) for v in q)
    e1, e2 = einstein_field(q, params)
    return x >= -tol and y >= -tol and e1 >= -tol and e2 <= tol


def einstein_conservation_defect(q, params: SolvsolitonParams) -> float:
    """∇z·𝓔 − 2z(y/n − x); zero for every q since z is transported by the flow."""
    x, y = (float(v) for v in q)
    n = params.n
    grad = np.array([2.0 * x * n * (n - 1), -2.0 * y * params.tr_d0_sq])
    z = einstein_z(q, params)
    return float(grad @ einstein_field(q, params) - 2.0 * z * (y / n - x))


def einstein_stationary_points(
    params: SolvsolitonParams,
) -> Tuple[EinsteinPoint, EinsteinPoint]:
    """γ^S|_E and γ^H|_E."""
    return (
        EinsteinPoint(params.tr_d / params.n, 1.0),
        EinsteinPoint(math.sqrt(-params.lam / params.n), 0.0),
    )


def einstein_unstable_direction(params: SolvsolitonParams) -> np.ndarray:
    """Unit eigenvector of d𝓔 at γ^S|_E for its positive eigenvalue, pointing into K."""
    j = einstein_jacobian(einstein_stationary_points(params)[0], params)
    values, vectors = np.linalg.eig(j)
    k = int(np.argmax(values.real))
    v = np.real(vectors[:, k])
    v = v / np.linalg.norm(v)
    return -v if v[0] < 0 else v


def einstein_direction_closed_form(params: SolvsolitonParams) -> np.ndarray:
    n, lam, s0 = params.n, params.lam, params.s0
    v = np.array(
        [
            n - 4 + n * math.sqrt(1.0 - 8.0 * lam),
            -(4.0 * n * (n - 1) / (-s0) + 2.0 * n * n),
        ]
    )
    return v / np.linalg.norm(v)


def embed_einstein(q, params: SolvsolitonParams) -> PhasePoint:
    x, y = (float(v) for v in q)
    return PhasePoint(x, y, einstein_z(q, params), params.n * x)


def require_noscal_lambda(lam: float) -> None:
    if not -1.0 < lam < 0.0:
        raise LambdaOutOfRange(lam)


def noscal_field(q, lam: float) -> np.ndarray:
    require_noscal_lambda(lam)
    y, w = (float(v) for v in q)
    return np.array([1.0 - w * y, -lam * (1.0 - y * y)])


def noscal_jacobian(q, lam: float) -> np.ndarray:
    require_noscal_lambda(lam)
    y, w = (float(v) for v in q)
    return np.array([[-w, -y], [2.0 * lam * y, 0.0]])


def noscal_stationary_points() -> Tuple[NoScalPoint, NoScalPoint]:
    return NoScalPoint(1.0, 1.0), NoScalPoint(-1.0, -1.0)


def noscal_unstable_eigenvalue(lam: float) -> float:
    """μ₊ = (−1 + √(1 − 8λ))/2."""
    require_noscal_lambda(lam)
    return 0.5 * (-1.0 + math.sqrt(1.0 - 8.0 * lam))


def noscal_unstable_direction(lam: float) -> np.ndarray:
    u = np.array([-1.0, 1.0 + noscal_unstable_eigenvalue(lam)])
    return u / np.linalg.norm(u)


def embed_noscal(q, params: SolvsolitonParams) -> PhasePoint:
    """(y, w) ↦ (y tr D/n, y, s₀, w); invariant under the full flow when λ = λ₀."""
    y, w = (float(v) for v in q)
    return PhasePoint(y * params.tr_d / params.n, y, params.s0, w)
