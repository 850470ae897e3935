from __future__ import annotations

import math
from typing import Tuple

from solvflow.lib.flow.exceptions import NonNegativeLambda
from solvflow.lib.flow.phase_point import PhasePoint


def reflect(p) -> PhasePoint:
    """(x, y, z, w) ↦ (−x, −y, z, −w); s ↦ reflect(γ(−s)) is again a solution."""
    x, y, z, w = (float(v) for v in p)
    return PhasePoint(-x, -y, z, -w)


def rescale_lambda(
    p, s: float, lambda1: float, lambda2: float
) -> Tuple[PhasePoint, float]:
    """Map a point of an F_{λ₁}-trajectory at time s to the F_{λ₂}-trajectory.

    With k = √(λ₂/λ₁): γ₂(s/k) = (k x, k y, k² z, k w)(s) of γ₁.
    """
    if lambda1 >= 0 or lambda2 >= 0:
        raise NonNegativeLambda(lambda1, lambda2)
    k = math.sqrt(lambda2 / lambda1)
    x, y, z, w = (float(v) for v in p)
    return PhasePoint(k * x, k * y, k * k * z, k * w), s / k
