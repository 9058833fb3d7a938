"""Core series containers, log-returns, normalization and aggregation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import (
    DegenerateSeriesError,
    DomainError,
    InsufficientDataError,
    ValidationError,
)


def _frozen_array(values, name: str = "values") -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise ValidationError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size < 1:
        raise InsufficientDataError(f"{name} must contain at least one observation")
    if not np.all(np.isfinite(arr)):
        bad = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise DomainError(f"{name}[{bad}] is not finite")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Series:
    """Uniformly sampled real observations. Values are finite and read-only."""

    values: np.ndarray
    dt: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen_array(self.values))
        if not (np.isfinite(self.dt) and self.dt > 0):
            raise ValidationError(f"dt must be positive, got {self.dt}")

    def __len__(self) -> int:
        return self.values.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)


@dataclass(frozen=True, eq=False)
class ReturnSeries(Series):
    """Log-returns over a horizon of ``tau`` samples."""

    tau: int = 1

    def __post_init__(self):
        super().__post_init__()
        if int(self.tau) != self.tau or self.tau < 1:
            raise ValidationError(f"tau must be a positive integer, got {self.tau}")


@dataclass(frozen=True, eq=False)
class PriceSeries:
    values: np.ndarray
    timestamps: Sequence | None = field(default=None)

    def __post_init__(self):
        arr = _frozen_array(self.values)
        if np.any(arr <= 0):
            bad = int(np.flatnonzero(arr <= 0)[0])
            raise DomainError(f"price at index {bad} is not strictly positive: {arr[bad]}")
        object.__setattr__(self, "values", arr)
        if self.timestamps is not None:
            ts = tuple(self.timestamps)
            if len(ts) != arr.size:
                raise ValidationError("timestamps and values differ in length")
            if any(b <= a for a, b in zip(ts, ts[1:])):
                raise ValidationError("timestamps must be strictly increasing")
            object.__setattr__(self, "timestamps", ts)

    def __len__(self) -> int:
        return self.values.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)


SeriesLike = Union[Series, PriceSeries, Sequence[float], np.ndarray]


def as_array(series: SeriesLike) -> np.ndarray:
    """Return the validated float array behind ``series``."""
    if isinstance(series, (Series, PriceSeries)):
        return series.values
    return _frozen_array(series)


def log_returns(prices: PriceSeries | Sequence[float] | np.ndarray, tau: int = 1) -> ReturnSeries:
    """r[t] = ln P[t+tau] - ln P[t]."""
    if not isinstance(prices, PriceSeries):
        prices = PriceSeries(prices)
    if int(tau) != tau or tau < 1:
        raise ValidationError(f"tau must be a positive integer, got {tau}")
    p = prices.values
    if p.size <= tau:
        raise InsufficientDataError(f"need more than {tau} prices, got {p.size}")
    logp = np.log(p)
    return ReturnSeries(logp[tau:] - logp[:-tau], tau=int(tau))


def zscore(series: SeriesLike) -> Series:
    """Standardize to zero mean and unit population standard deviation."""
    x = as_array(series)
    if x.size < 2:
        raise InsufficientDataError("zscore needs at least two observations")
    if np.ptp(x) == 0:
        raise DegenerateSeriesError("series has zero standard deviation")
    centered = x - x.mean()
    sd = np.sqrt(np.mean(centered**2))
    dt = series.dt if isinstance(series, Series) else 1.0
    return Series(centered / sd, dt=dt)


def aggregate_returns(returns: ReturnSeries | SeriesLike, k: int) -> ReturnSeries:
    """Sum returns over non-overlapping windows of width ``k``.

    The trailing partial window is dropped. Plain arrays are taken as
    one-step returns.
    """
    if int(k) != k or k < 1:
        raise ValidationError(f"k must be a positive integer, got {k}")
    k = int(k)
    x = as_array(returns)
    tau = returns.tau if isinstance(returns, ReturnSeries) else 1
    if k > x.size:
        raise InsufficientDataError(f"window width {k} exceeds series length {x.size}")
    n = x.size // k
    if k == 1:
        out = x.copy()
    else:
        out = x[: n * k].reshape(n, k).sum(axis=1)
    return ReturnSeries(out, tau=tau * k)


def excess_kurtosis(series: SeriesLike) -> float:
    """m4 / m2**2 - 3 from central sample moments."""
    x = as_array(series)
    if x.size < 4:
        raise InsufficientDataError("excess kurtosis needs at least four observations")
    if np.ptp(x) == 0:
        raise DegenerateSeriesError("series has zero variance")
    c = x - x.mean()
    m2 = np.mean(c**2)
    m4 = np.mean(c**4)
    return float(m4 / m2**2 - 3.0)
