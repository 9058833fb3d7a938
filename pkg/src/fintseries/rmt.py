"""Equal-time correlation matrices and their comparison with random-matrix spectra.

Throughout, ``q = T / N`` (observations per variable), so the random
correlation spectrum occupies ``[(1 - 1/sqrt(q))**2, (1 + 1/sqrt(q))**2]``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateVariableError,
    InsufficientDataError,
    NumericError,
    ShapeError,
    ValidationError,
)
from .generators import SeriesPanel


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShapeError(f"correlation matrix must be square, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValidationError("correlation matrix has non-finite entries")
        if np.max(np.abs(m - m.T), initial=0.0) > 1e-12:
            raise ValidationError("correlation matrix is not symmetric")
        if np.max(np.abs(np.diag(m) - 1.0), initial=0.0) > 1e-12:
            raise ValidationError("correlation matrix diagonal is not 1")
        if np.max(np.abs(m), initial=0.0) > 1 + 1e-12:
            raise ValidationError("correlation entries must lie in [-1, 1]")
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def uniform(cls, n: int, rho: float) -> "CorrelationMatrix":
        m = np.full((n, n), float(rho))
        np.fill_diagonal(m, 1.0)
        return cls(m)


@dataclass(frozen=True)
class RmtBounds:
    q: float
    lambda_min: float
    lambda_max: float

    @classmethod
    def from_q(cls, q: float) -> "RmtBounds":
        if not (q > 0 and math.isfinite(q)):
            raise ValidationError(f"q must be positive, got {q}")
        root = math.sqrt(1.0 / q)
        return cls(q, (1.0 - root) ** 2, (1.0 + root) ** 2)

    @classmethod
    def from_shape(cls, n_vars: int, n_obs: int) -> "RmtBounds":
        return cls.from_q(n_obs / n_vars)

    def contains(self, lam) -> np.ndarray:
        lam = np.asarray(lam)
        return (lam >= self.lambda_min) & (lam <= self.lambda_max)


@dataclass(frozen=True, eq=False)
class CorrelationSpectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns, matching eigenvalues
    bounds: RmtBounds
    deviating: np.ndarray

    @property
    def n(self) -> int:
        return self.eigenvalues.size

    @property
    def fraction_inside(self) -> float:
        return 1.0 - self.deviating.size / self.n


def correlation_matrix(panel: SeriesPanel | np.ndarray) -> CorrelationMatrix:
    """Pearson correlations between rows using 1/T time averages."""
    if not isinstance(panel, SeriesPanel):
        panel = SeriesPanel(panel)
    x = panel.data
    if panel.n_obs < 2:
        raise InsufficientDataError("correlation needs at least two observations per row")
    flat = np.ptp(x, axis=1) == 0
    if flat.any():
        raise DegenerateVariableError(int(np.flatnonzero(flat)[0]))
    xc = x - x.mean(axis=1, keepdims=True)
    sd = np.sqrt(np.mean(xc**2, axis=1))
    z = xc / sd[:, None]
    c = (z @ z.T) / panel.n_obs
    c = 0.5 * (c + c.T)
    np.clip(c, -1.0, 1.0, out=c)
    np.fill_diagonal(c, 1.0)
    return CorrelationMatrix(c)


def eigen_spectrum(matrix: CorrelationMatrix, n_obs: int) -> CorrelationSpectrum:
    """Full symmetric eigendecomposition, sorted by descending eigenvalue."""
    if int(n_obs) != n_obs or n_obs < 1:
        raise ValidationError(f"n_obs must be a positive integer, got {n_obs}")
    n = matrix.n
    if n_obs <= n:
        warnings.warn(
            f"n_obs={n_obs} does not exceed n={n}; correlation estimates are noise dominated",
            RuntimeWarning,
            stacklevel=2,
        )
    m = matrix.entries
    m = 0.5 * (m + m.T)
    try:
        vals, vecs = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition failed: {exc}") from exc
    if not (np.all(np.isfinite(vals)) and np.all(np.isfinite(vecs))):
        raise NumericError("eigendecomposition returned non-finite values")
    order = np.argsort(vals, kind="stable")[::-1]
    vals, vecs = vals[order], vecs[:, order]
    bounds = RmtBounds.from_shape(n, int(n_obs))
    deviating = np.flatnonzero(~bounds.contains(vals))
    return CorrelationSpectrum(vals, vecs, bounds, deviating)


def mp_density(lam, q: float):
    """Random-correlation eigenvalue density for ``q = T/N``.

    Zero outside the open support. For ``q < 1`` the continuous part
    integrates to ``q``; the missing mass sits at zero.
    """
    b = RmtBounds.from_q(q)
    lam_arr = np.asarray(lam, dtype=float)
    inside = (lam_arr > b.lambda_min) & (lam_arr < b.lambda_max)
    safe = np.where(inside, lam_arr, 1.0)
    rho = q / (2 * np.pi * safe) * np.sqrt(np.clip((b.lambda_max - safe) * (safe - b.lambda_min), 0, None))
    out = np.where(inside, rho, 0.0)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True, eq=False)
class RmtComparison:
    edges: np.ndarray
    centers: np.ndarray
    histogram: np.ndarray
    density_curve: np.ndarray
    max_abs_deviation: float

    @property
    def peak_density(self) -> float:
        return float(self.density_curve.max())


def spectrum_vs_rmt(spectrum: CorrelationSpectrum, n_bins: int = 20) -> RmtComparison:
    """Normalized eigenvalue histogram against the random-matrix density."""
    if int(n_bins) != n_bins or n_bins < 1:
        raise ValidationError(f"n_bins must be a positive integer, got {n_bins}")
    lam = spectrum.eigenvalues
    if lam.size < 20:
        raise InsufficientDataError(f"need at least 20 eigenvalues for a histogram, got {lam.size}")
    b = spectrum.bounds
    lo = min(b.lambda_min, float(lam.min()))
    hi = max(b.lambda_max, float(lam.max()))
    hist, edges = np.histogram(lam, bins=int(n_bins), range=(lo, hi), density=True)
    centers = 0.5 * (edges[:-1] + edges[1:])
    curve = mp_density(centers, b.q)
    return RmtComparison(edges, centers, hist, curve, float(np.max(np.abs(hist - curve))))


def market_mode(spectrum: CorrelationSpectrum) -> tuple[float, np.ndarray]:
    """Largest eigenvalue and its eigenvector, signed so components sum >= 0."""
    if spectrum.n == 0:
        raise InsufficientDataError("empty spectrum")
    vec = spectrum.eigenvectors[:, 0].copy()
    if vec.sum() < 0:
        vec = -vec
    return float(spectrum.eigenvalues[0]), vec
