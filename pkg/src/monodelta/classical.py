"""Classical internal-consistency coefficients.

Cronbach's alpha, McDonald's omega on a one-factor fit, split-half
reliability with the Spearman-Brown step-up, and the greatest lower bound
(GLB). Each coefficient has a ``*_from_covariance`` variant so it can be
evaluated on population covariance matrices as well as on data.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .data import ResponseMatrix, VarianceMode, covariance
from .errors import (
    ConstantHalfError,
    NonConvergenceWarning,
    ReliabilityError,
    SingleItemError,
    ZeroTotalVarianceError,
)

OmegaVariant = Literal["paper", "conventional"]
SplitScheme = Literal["odd-even", "random"]


def _check_cov(cov) -> np.ndarray:
    cov = np.asarray(cov, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
        raise ReliabilityError(f"covariance must be square, got shape {cov.shape}")
    if cov.shape[0] < 2:
        raise SingleItemError("at least 2 items are required")
    return cov


def _total_variance(cov: np.ndarray) -> float:
    total = float(cov.sum())
    scale = float(np.abs(np.diag(cov)).sum())
    if total <= 1e-12 * scale or scale == 0.0:
        raise ZeroTotalVarianceError("total scores have zero variance")
    return total


def alpha_from_covariance(cov) -> float:
    cov = _check_cov(cov)
    k = cov.shape[0]
    total = _total_variance(cov)
    return k / (k - 1) * (1.0 - np.trace(cov) / total)


def cronbach_alpha(m: ResponseMatrix, variance_mode: VarianceMode = "sample") -> float:
    """Cronbach's alpha, ``K/(K-1) * (1 - sum(item variances) / total variance)``.

    The value does not depend on ``variance_mode``; it only changes the
    divisor shared by numerator and denominator.

    Raises
    ------
    SingleItemError
        If the matrix has fewer than two items.
    ZeroTotalVarianceError
        If every respondent has the same total score.
    """
    if m.n_items < 2:
        raise SingleItemError("at least 2 items are required")
    return alpha_from_covariance(covariance(m.values, variance_mode))


@dataclass(frozen=True)
class OneFactorFit:
    loadings: np.ndarray
    uniquenesses: np.ndarray
    factor_variance: float
    converged: bool
    iterations: int
    max_residual: float
    notes: str = ""


def fit_one_factor(cov, tol: float = 1e-8, max_iter: int = 1000) -> OneFactorFit:
    """One-factor model ``cov ~ l l' + diag(psi)`` by iterated principal axes.

    Communalities start at the item variances. Each iteration replaces the
    diagonal of ``cov`` by the current communalities and takes the leading
    eigenpair; at the fixed point the off-diagonal squared residuals are
    minimized (the MINRES criterion). The factor variance is fixed at 1.

    Negative uniquenesses (Heywood cases) are clamped at zero and reported in
    ``notes``. If all off-diagonal covariances are zero the loadings are zero.
    Failure to converge is reported through ``converged`` and a
    :class:`NonConvergenceWarning`.
    """
    cov = _check_cov(cov)
    k = cov.shape[0]
    variances = np.diag(cov).copy()
    off = cov - np.diag(variances)
    if np.all(np.abs(off) <= 1e-14 * max(np.abs(variances).max(), 1e-300)):
        return OneFactorFit(
            loadings=np.zeros(k),
            uniquenesses=np.clip(variances, 0.0, None),
            factor_variance=1.0,
            converged=True,
            iterations=0,
            max_residual=0.0,
            notes="degenerate covariance: no common variance",
        )

    communality = variances.copy()
    loadings = np.zeros(k)
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        reduced = off + np.diag(communality)
        eigval, eigvec = np.linalg.eigh(reduced)
        loadings = np.sqrt(max(eigval[-1], 0.0)) * eigvec[:, -1]
        updated = loadings**2
        step = np.max(np.abs(updated - communality))
        communality = updated
        if step < tol:
            converged = True
            break
    if not converged:
        warnings.warn(f"one-factor fit did not converge in {max_iter} iterations", NonConvergenceWarning, stacklevel=2)

    if loadings.sum() < 0:
        loadings = -loadings
    psi = variances - loadings**2
    notes = ""
    heywood = psi < -1e-10 * variances.max()
    if np.any(heywood):
        notes = f"Heywood case: {int(heywood.sum())} uniqueness(es) clamped at 0"
    psi = np.clip(psi, 0.0, None)
    resid = off - (np.outer(loadings, loadings) - np.diag(loadings**2))
    return OneFactorFit(
        loadings=loadings,
        uniquenesses=psi,
        factor_variance=1.0,
        converged=converged,
        iterations=iterations,
        max_residual=float(np.abs(resid).max()),
        notes=notes,
    )


def omega_from_fit(fit: OneFactorFit, variant: OmegaVariant = "paper") -> float:
    """Omega from fitted loadings.

    ``paper``: ``sum(l**2) / (sum(l**2) + sum(psi))``, the common share of the
    summed model-implied item variances.
    ``conventional``: ``sum(l)**2 / (sum(l)**2 + sum(psi))``.
    """
    lam, psi = fit.loadings, fit.uniquenesses
    if variant == "paper":
        common = float(np.sum(lam**2)) * fit.factor_variance
    elif variant == "conventional":
        common = float(np.sum(lam)) ** 2 * fit.factor_variance
    else:
        raise ValueError(f"unknown omega variant {variant!r}")
    denom = common + float(np.sum(psi))
    if denom <= 0:
        raise ZeroTotalVarianceError("model-implied total variance is zero")
    return common / denom


def omega_from_covariance(cov, variant: OmegaVariant = "paper") -> float:
    cov = _check_cov(cov)
    _total_variance(cov)
    return omega_from_fit(fit_one_factor(cov), variant)


def mcdonald_omega(m: ResponseMatrix, variant: OmegaVariant = "paper", variance_mode: VarianceMode = "sample") -> float:
    if m.n_items < 2:
        raise SingleItemError("at least 2 items are required")
    return omega_from_covariance(covariance(m.values, variance_mode), variant)


def split_halves(k: int, scheme: SplitScheme = "odd-even", seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Column indices of the two halves.

    ``odd-even`` puts columns 0, 2, 4, ... in the first half and 1, 3, 5, ...
    in the second. ``random`` shuffles the columns with ``seed`` and splits
    the shuffled order at ``k // 2``.
    """
    if k < 2:
        raise SingleItemError("at least 2 items are required")
    if scheme == "odd-even":
        return np.arange(0, k, 2), np.arange(1, k, 2)
    if scheme == "random":
        order = np.random.default_rng(seed).permutation(k)
        return np.sort(order[: k // 2]), np.sort(order[k // 2 :])
    raise ValueError(f"unknown split scheme {scheme!r}")


def split_half(m: ResponseMatrix, scheme: SplitScheme = "odd-even", seed: int = 0) -> float:
    """Spearman-Brown corrected correlation between the two half-test totals."""
    first, second = split_halves(m.n_items, scheme, seed)
    a = m.values[:, first].sum(axis=1)
    b = m.values[:, second].sum(axis=1)
    a = a - a.mean()
    b = b - b.mean()
    ss_a, ss_b = float(a @ a), float(b @ b)
    if ss_a == 0.0 or ss_b == 0.0:
        raise ConstantHalfError("a half-test total has zero variance")
    r = float(a @ b) / np.sqrt(ss_a * ss_b)
    r = min(max(r, -1.0), 1.0)
    if r <= -1.0:
        raise ReliabilityError("half-test totals are perfectly anti-correlated")
    return 2 * r / (1 + r)


@dataclass(frozen=True)
class GLBResult:
    value: float
    error_variance: float
    sweeps: int
    converged: bool


def glb_details(cov, tol: float = 1e-6, max_iter: int = 5000, seed: int = 0) -> GLBResult:
    """Greatest lower bound to reliability of a covariance matrix.

    The GLB is ``1 - max sum(theta) / total variance`` over nonnegative
    error variances ``theta`` that leave ``cov - diag(theta)`` positive
    semidefinite. The maximum is computed from the dual problem

        min tr(cov @ Y)  subject to  Y psd, diag(Y) >= 1

    with ``Y = V V'`` and block coordinate descent over the rows of ``V``;
    each row update has a closed form. ``tol`` bounds the per-sweep change
    of the objective relative to the total variance. The starting ``V`` is
    drawn from ``seed``.
    """
    cov = _check_cov(cov)
    total = _total_variance(cov)
    k = cov.shape[0]
    diag = np.diag(cov)
    if np.any(diag <= 0):
        raise ReliabilityError("every item needs positive variance")
    v = np.random.default_rng(seed).standard_normal((k, k))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    g = cov @ v
    objective = float(np.einsum("ij,ij->", v, g))
    converged = False
    sweeps = 0
    for sweeps in range(1, max_iter + 1):
        for i in range(k):
            pull = g[i] - diag[i] * v[i]
            norm = np.linalg.norm(pull)
            if norm == 0.0:
                continue
            row = -pull / diag[i] if norm >= diag[i] else -pull / norm
            g += np.outer(cov[:, i], row - v[i])
            v[i] = row
        updated = float(np.einsum("ij,ij->", v, g))
        change = objective - updated
        objective = updated
        if change <= tol * total * 1e-3:
            converged = True
            break
    if not converged:
        warnings.warn(f"GLB did not converge in {max_iter} sweeps", NonConvergenceWarning, stacklevel=2)
    error = min(max(objective, 0.0), float(np.trace(cov)))
    return GLBResult(value=1.0 - error / total, error_variance=error, sweeps=sweeps, converged=converged)


def glb_from_covariance(cov, tol: float = 1e-6, max_iter: int = 5000) -> float:
    return glb_details(cov, tol, max_iter).value


def glb(m: ResponseMatrix, tol: float = 1e-6, max_iter: int = 5000, variance_mode: VarianceMode = "sample") -> float:
    if m.n_items < 2:
        raise SingleItemError("at least 2 items are required")
    return glb_from_covariance(covariance(m.values, variance_mode), tol, max_iter)
