"""Metric Lie algebras given by structure constants in an orthonormal basis."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from solvflow.lib.constants import ANTISYMMETRY_TOL, JACOBI_TOL, UNIMODULAR_TOL
from solvflow.lib.core.exceptions import (
    AlgebraError,
    JacobiViolation,
    NotAntisymmetric,
    NotUnimodular,
)

LOG = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LieAlgebraData:
    """Structure constants μ with [e_i, e_j] = Σ_k μ[i, j, k] e_k.

    The basis is declared orthonormal, which fixes the left-invariant metric.
    """

    dim: int
    structure_constants: np.ndarray
    basis_labels: Optional[Tuple[str, ...]] = field(default=None)

    def __post_init__(self) -> None:
        mu = np.array(self.structure_constants, dtype=float)
        if self.dim < 1 or mu.shape != (self.dim,) * 3:
            raise AlgebraError(
                f"Expected structure constants of shape {(self.dim,) * 3}, "
                f"got {mu.shape}"
            )
        defect = float(np.max(np.abs(mu + mu.transpose(1, 0, 2)), initial=0.0))
        if defect > ANTISYMMETRY_TOL:
            raise NotAntisymmetric(defect)
        if self.basis_labels is not None and len(self.basis_labels) != self.dim:
            raise AlgebraError("basis_labels must name every basis vector")
        mu.setflags(write=False)
        object.__setattr__(self, "structure_constants", mu)

    @property
    def mu(self) -> np.ndarray:
        return self.structure_constants

    @property
    def is_abelian(self) -> bool:
        return not np.any(self.mu)

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.mu)

    def ad(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ad(x), acting on column vectors."""
        return np.einsum("i,ijk->kj", x, self.mu)

    def killing_form(self) -> np.ndarray:
        return np.einsum("akj,bjk->ab", self.mu, self.mu)

    def jacobi_defect(self) -> float:
        mu = self.mu
        jac = (
            np.einsum("ijl,lkm->ijkm", mu, mu)
            + np.einsum("jkl,lim->ijkm", mu, mu)
            + np.einsum("kil,ljm->ijkm", mu, mu)
        )
        return float(np.max(np.abs(jac), initial=0.0))

    def ad_traces(self) -> np.ndarray:
        return np.einsum("ijj->i", self.mu)

    def validate(self) -> None:
        defect = self.jacobi_defect()
        if defect > JACOBI_TOL:
            raise JacobiViolation(defect)
        traces = self.ad_traces()
        if np.max(np.abs(traces), initial=0.0) > UNIMODULAR_TOL:
            raise NotUnimodular(traces)

    def scaled(self, t: float) -> LieAlgebraData:
        return LieAlgebraData(self.dim, t * self.mu, self.basis_labels)

    def derivation_defect(self, d: np.ndarray) -> np.ndarray:
        """D[e_i, e_j] − [D e_i, e_j] − [e_i, D e_j] as an (n, n, n) array."""
        mu = self.mu
        return (
            np.einsum("ijl,kl->ijk", mu, d)
            - np.einsum("li,ljk->ijk", d, mu)
            - np.einsum("lj,ilk->ijk", d, mu)
        )


def ricci_operator(alg: LieAlgebraData) -> np.ndarray:
    """Ricci operator of the left-invariant metric of a unimodular Lie algebra.

    ⟨Ric X, Y⟩ = −½ Σ ⟨[X,e_i],e_j⟩⟨[Y,e_i],e_j⟩
                 + ¼ Σ ⟨[e_i,e_j],X⟩⟨[e_i,e_j],Y⟩ − ½ B(X, Y)
    """
    alg.validate()
    mu = alg.mu
    ric = (
        -0.5 * np.einsum("aij,bij->ab", mu, mu)
        + 0.25 * np.einsum("ija,ijb->ab", mu, mu)
        - 0.5 * alg.killing_form()
    )
    return 0.5 * (ric + ric.T)
