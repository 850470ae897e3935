"""Solvsoliton detection and the normalized parameters of the phase flow."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Dict, Tuple

import numpy as np

from solvflow.lib.constants import DERIVATION_TOL, SOLITON_FIT_TOL
from solvflow.lib.core.exceptions import (
    NegativeDerivationSpectrum,
    NotASoliton,
    PositiveLambda0,
    ZeroTrace,
)
from solvflow.lib.core.lie_algebra import LieAlgebraData, ricci_operator

LOG = logging.getLogger(__name__)

_TRACE_TOL = 1e-14
_SPECTRUM_TOL = 1e-12


@dataclass(frozen=True)
class SolvsolitonParams:
    """Algebraic data of one problem instance, normalized so that tr D = 1.

    `metric_scale` is tr D before normalization: the background metric g₀ of
    the orthonormal basis was replaced by metric_scale·g₀.
    """

    n: int
    d_spectrum: Tuple[float, ...]
    tr_d: float
    tr_d2: float
    tr_d0_sq: float
    lambda0: float
    s0: float
    lam: float
    scalar_flat: bool = False
    metric_scale: float = 1.0

    def with_lambda(self, lam: float) -> SolvsolitonParams:
        return replace(self, lam=lam)

    @property
    def trace_free_spectrum(self) -> np.ndarray:
        return np.asarray(self.d_spectrum) - self.tr_d / self.n

    def as_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "d_spectrum": list(self.d_spectrum),
            "tr_d": self.tr_d,
            "tr_d2": self.tr_d2,
            "tr_d0_sq": self.tr_d0_sq,
            "lambda0": self.lambda0,
            "s0": self.s0,
            "lambda": self.lam,
            "scalar_flat": self.scalar_flat,
            "metric_scale": self.metric_scale,
        }


def detect_solvsoliton(alg: LieAlgebraData) -> Tuple[float, np.ndarray]:
    """Find λ₀ < 0 such that D = Ric − λ₀I is a derivation.

    The derivation defect of Ric − λ₀I is A + λ₀μ, with A the defect of Ric,
    so λ₀ solves a one-dimensional linear least-squares problem.
    """
    ric = ricci_operator(alg)
    mu = alg.mu
    mu_norm = float(np.linalg.norm(mu))
    if mu_norm == 0.0:
        raise NotASoliton("abelian algebra; the derivation condition leaves λ₀ free")
    defect = alg.derivation_defect(ric)
    lambda0 = -float(np.vdot(defect, mu)) / mu_norm**2
    residual = float(np.linalg.norm(defect + lambda0 * mu))
    LOG.debug(f"Fitted λ₀ = {lambda0!r}, residual {residual:.3e}")
    if residual > SOLITON_FIT_TOL * max(1.0, mu_norm):
        raise NotASoliton(f"least-squares residual {residual:.3e}")
    d = ric - lambda0 * np.eye(alg.dim)
    check = float(np.max(np.abs(alg.derivation_defect(d))))
    if check > DERIVATION_TOL:
        raise NotASoliton(f"derivation residual {check:.3e}")
    if lambda0 >= 0:
        raise PositiveLambda0(lambda0)
    return lambda0, d


def detect_flat_soliton(alg: LieAlgebraData) -> Tuple[float, np.ndarray]:
    """Flat branch: abelian algebras with Ric = 0 = −I + D."""
    ric = ricci_operator(alg)
    if not alg.is_abelian or np.any(np.abs(ric) > _SPECTRUM_TOL):
        raise NotASoliton("not a flat abelian metric Lie algebra")
    return -1.0, np.eye(alg.dim)


def normalize(lambda0: float, d: np.ndarray, n: int) -> SolvsolitonParams:
    """Rescale (λ₀, D) by 1/tr D and populate the derived quantities."""
    d = np.asarray(d, dtype=float)
    rho = float(np.trace(d))
    if abs(rho) <= _TRACE_TOL:
        raise ZeroTrace()
    spectrum = np.linalg.eigvalsh(0.5 * (d + d.T) / rho)
    if np.min(spectrum) < -_SPECTRUM_TOL:
        raise NegativeDerivationSpectrum(spectrum)
    spectrum = np.clip(spectrum, 0.0, None)
    tr_d = math.fsum(spectrum)
    tr_d2 = math.fsum(spectrum**2)
    lam0 = lambda0 / rho
    if not math.isclose(lam0, -tr_d2 / tr_d, rel_tol=1e-10, abs_tol=1e-14):
        raise NotASoliton(f"λ₀ = {lam0!r} differs from −tr D²/tr D = {-tr_d2 / tr_d!r}")
    tr_d0_sq = tr_d2 - tr_d**2 / n
    if abs(tr_d0_sq) < 1e-15:
        tr_d0_sq = 0.0
    s0 = lam0 * n + tr_d
    scalar_flat = abs(s0) < 1e-14
    if scalar_flat:
        s0 = 0.0
    return SolvsolitonParams(
        n=n,
        d_spectrum=tuple(float(v) for v in spectrum),
        tr_d=tr_d,
        tr_d2=tr_d2,
        tr_d0_sq=tr_d0_sq,
        lambda0=lam0,
        s0=s0,
        lam=lam0,
        scalar_flat=scalar_flat,
        metric_scale=rho,
    )
