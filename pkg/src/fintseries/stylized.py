"""Stylized-fact statistics: autocorrelation, volatility clustering, tail index."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import (
    DegenerateSeriesError,
    DegenerateTailError,
    InsufficientDataError,
    ValidationError,
)
from .scaling import BoxSchedule, ScalingResult, loglog_fit
from .series import SeriesLike, as_array

Side = Literal["positive", "negative"]


@dataclass(frozen=True, eq=False)
class AcfResult:
    lags: np.ndarray
    values: np.ndarray
    n_used: int

    def band(self, z: float = 2.0) -> float:
        """White-noise confidence half-width z / sqrt(n)."""
        return z / math.sqrt(self.n_used)


@dataclass(frozen=True)
class TailFit:
    alpha: float
    k_used: int
    side: Side


def acf(series: SeriesLike, max_lag: int) -> AcfResult:
    """Sample autocorrelation normalized by the lag-0 (global) variance."""
    x = as_array(series)
    if int(max_lag) != max_lag or max_lag < 1:
        raise ValidationError(f"max_lag must be a positive integer, got {max_lag}")
    if not max_lag < x.size / 2:
        raise InsufficientDataError(f"max_lag {max_lag} must be below half the length {x.size}")
    if np.ptp(x) == 0:
        raise DegenerateSeriesError("series has zero variance")
    c = x - x.mean()
    c0 = float(c @ c)
    vals = np.empty(max_lag + 1)
    vals[0] = 1.0
    for k in range(1, max_lag + 1):
        vals[k] = float(c[:-k] @ c[k:]) / c0
    return AcfResult(np.arange(max_lag + 1), vals, x.size)


def fit_acf_power_law(lags: Sequence[int], values: Sequence[float]) -> ScalingResult:
    """Fit acf(k) ~ c * k**(-exponent) over lags with positive ACF."""
    lags = np.asarray(lags, dtype=float)
    values = np.asarray(values, dtype=float)
    keep = (values > 0) & (lags > 0)
    if keep.sum() < 3:
        raise InsufficientDataError(f"only {int(keep.sum())} lags with positive ACF, need 3")
    slope, intercept, r2 = loglog_fit(lags[keep], values[keep])
    return ScalingResult(lags[keep].astype(int), values[keep], -slope, intercept, r2)


def volatility_clustering_exponent(series: SeriesLike, schedule: BoxSchedule | None = None) -> ScalingResult:
    """Power-law decay exponent of the autocorrelation of absolute values."""
    x = np.abs(as_array(series))
    if schedule is None:
        schedule = BoxSchedule.default(x.size)
    schedule.check(x.size)
    res = acf(x, schedule.sizes[-1])
    lags = np.array(schedule.sizes)
    return fit_acf_power_law(lags, res.values[lags])


def tail_exponent(returns: SeriesLike, tail_fraction: float = 0.05, side: Side = "positive") -> TailFit:
    """Hill estimate of the tail index from the largest order statistics of one side."""
    if not (0 < tail_fraction <= 0.2):
        raise ValidationError(f"tail_fraction must lie in (0, 0.2], got {tail_fraction}")
    x = as_array(returns)
    if side == "positive":
        mags = x[x > 0]
    elif side == "negative":
        mags = -x[x < 0]
    else:
        raise ValidationError(f"side must be 'positive' or 'negative', got {side!r}")
    need = math.ceil(10 / tail_fraction)
    if mags.size < need:
        raise InsufficientDataError(
            f"{mags.size} {side} observations; need at least {need} for tail_fraction {tail_fraction}"
        )
    k = math.ceil(round(tail_fraction * mags.size, 9))
    top = np.sort(mags)[::-1][: k + 1]
    denom = float(np.sum(np.log(top[:k] / top[k])))
    if denom <= 0:
        raise DegenerateTailError(f"top {k} {side} order statistics are tied")
    return TailFit(k / denom, k, side)
