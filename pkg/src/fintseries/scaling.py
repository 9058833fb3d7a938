"""Scaling diagnostics: R/S Hurst exponent, DFA, periodogram and crossover fits."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DegenerateSeriesError,
    InsufficientDataError,
    InsufficientScalesError,
    ValidationError,
)
from .series import SeriesLike, as_array

MIN_BOX = 4


@dataclass(frozen=True)
class BoxSchedule:
    """Strictly increasing window lengths used for a scaling regression."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if not sizes:
            raise ValidationError("box schedule is empty")
        if any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ValidationError(f"box sizes must be strictly increasing: {sizes}")
        if sizes[0] < MIN_BOX:
            raise ValidationError(f"smallest box must be >= {MIN_BOX}, got {sizes[0]}")
        object.__setattr__(self, "sizes", sizes)

    @classmethod
    def geometric(cls, tau_min: int, tau_max: int, ratio: float = 2 ** 0.25) -> "BoxSchedule":
        """Rounded geometric progression from ``tau_min`` up to ``tau_max`` inclusive."""
        if tau_min < MIN_BOX:
            raise ValidationError(f"tau_min must be >= {MIN_BOX}, got {tau_min}")
        if tau_max < tau_min:
            raise ValidationError(f"tau_max ({tau_max}) is below tau_min ({tau_min})")
        if ratio <= 1:
            raise ValidationError(f"ratio must exceed 1, got {ratio}")
        sizes: list[int] = []
        k = 0
        while True:
            s = int(round(tau_min * ratio**k))
            if s > tau_max:
                break
            if not sizes or s > sizes[-1]:
                sizes.append(s)
            k += 1
        return cls(tuple(sizes))

    @classmethod
    def default(cls, length: int, tau_min: int = 8) -> "BoxSchedule":
        """Quarter-octave progression from ``tau_min`` to ``length // 4``."""
        return cls.geometric(tau_min, length // 4)

    def check(self, length: int) -> None:
        if self.sizes[-1] > length // 4:
            raise ValidationError(
                f"largest box {self.sizes[-1]} leaves fewer than 4 windows for length {length}"
            )


@dataclass(frozen=True, eq=False)
class ScalingResult:
    sizes: np.ndarray
    statistic: np.ndarray
    exponent: float
    intercept: float
    r_squared: float

    @property
    def label(self) -> str:
        return classify_exponent(self.exponent)


def classify_exponent(exponent: float, tol: float = 0.05) -> str:
    """Label a Hurst/DFA exponent: above 0.5 persistent, below anti-persistent."""
    if abs(exponent - 0.5) <= tol:
        return "random"
    return "persistent" if exponent > 0.5 else "anti-persistent"


def loglog_fit(x: Sequence[float], y: Sequence[float]) -> tuple[float, float, float]:
    """OLS of log y on log x; returns (slope, intercept, r_squared)."""
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.asarray(y, dtype=float))
    return _ols(lx, ly)


def _ols(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    xm, ym = x.mean(), y.mean()
    dx, dy = x - xm, y - ym
    sxx = float(dx @ dx)
    slope = float(dx @ dy) / sxx
    intercept = float(ym - slope * xm)
    syy = float(dy @ dy)
    resid = dy - slope * dx
    r2 = 1.0 - float(resid @ resid) / syy if syy > 0 else 1.0
    return slope, intercept, min(max(r2, 0.0), 1.0)


def _windows(x: np.ndarray, tau: int) -> np.ndarray:
    if int(tau) != tau or tau < 1:
        raise ValidationError(f"window length must be a positive integer, got {tau}")
    n = x.size // tau
    if n < 1:
        raise InsufficientDataError(f"window length {tau} exceeds series length {x.size}")
    return x[: n * tau].reshape(n, tau)


def rs_statistic(series: SeriesLike, tau: int) -> float:
    """Mean rescaled range R/S over the complete windows of length ``tau``.

    Windows with zero standard deviation are skipped.
    """
    w = _windows(as_array(series), tau)
    live = np.ptp(w, axis=1) > 0
    if not live.any():
        raise DegenerateSeriesError(f"every window of length {tau} has zero standard deviation")
    w = w[live]
    dev = w - w.mean(axis=1, keepdims=True)
    cum = np.cumsum(dev, axis=1)
    r = cum.max(axis=1) - cum.min(axis=1)
    s = np.sqrt(np.mean(dev**2, axis=1))
    return float(np.mean(r / s))


def _scaling_fit(
    x: np.ndarray,
    schedule: BoxSchedule | None,
    stat: Callable[[np.ndarray, int], float],
) -> ScalingResult:
    if schedule is None:
        schedule = BoxSchedule.default(x.size)
    schedule.check(x.size)
    sizes, values = [], []
    degenerate = 0
    for tau in schedule.sizes:
        try:
            v = stat(x, tau)
        except DegenerateSeriesError:
            degenerate += 1
            continue
        if v > 0 and math.isfinite(v):
            sizes.append(tau)
            values.append(v)
    if not sizes and degenerate:
        raise DegenerateSeriesError("series is degenerate at every scale")
    if len(sizes) < 3:
        raise InsufficientScalesError(f"only {len(sizes)} usable scales, need at least 3")
    slope, intercept, r2 = loglog_fit(sizes, values)
    return ScalingResult(np.array(sizes), np.array(values), slope, intercept, r2)


def hurst_exponent(series: SeriesLike, schedule: BoxSchedule | None = None) -> ScalingResult:
    """Slope of log(R/S) against log(tau)."""
    return _scaling_fit(as_array(series), schedule, rs_statistic)


def _profile(x: np.ndarray) -> np.ndarray:
    if np.ptp(x) == 0:
        raise DegenerateSeriesError("constant series has no fluctuations")
    return np.cumsum(x - x.mean())


def _detrended_msq(profile: np.ndarray, tau: int) -> np.ndarray:
    """Per-window mean squared residual about the least-squares line."""
    w = _windows(profile, tau)
    t = np.arange(tau, dtype=float)
    tc = t - t.mean()
    wc = w - w.mean(axis=1, keepdims=True)
    slope = (wc @ tc) / (tc @ tc)
    resid = wc - slope[:, None] * tc
    return np.mean(resid**2, axis=1)


def dfa_fluctuation(series: SeriesLike, tau: int) -> float:
    """DFA-1 fluctuation F(tau) of the cumulative mean-removed profile."""
    if tau < MIN_BOX:
        raise ValidationError(f"DFA window must be >= {MIN_BOX}, got {tau}")
    msq = _detrended_msq(_profile(as_array(series)), tau)
    f = float(np.sqrt(msq.mean()))
    if f == 0.0:
        raise DegenerateSeriesError(f"zero residual in every window of length {tau}")
    return f


def dfa_exponent(series: SeriesLike, schedule: BoxSchedule | None = None) -> ScalingResult:
    """Slope of log F(tau) against log(tau)."""
    x = as_array(series)
    profile = _profile(x)

    def stat(_, tau):
        f = float(np.sqrt(_detrended_msq(profile, tau).mean()))
        if f == 0.0:
            raise DegenerateSeriesError(f"zero residual at scale {tau}")
        return f

    return _scaling_fit(x, schedule, stat)


def power_spectrum(series: SeriesLike, dt: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """One-sided periodogram of the mean-removed series.

    Power is normalized so that it sums to the population variance.
    Frequencies are in cycles per unit time (``dt`` defaults to the series'
    sampling interval, else 1).
    """
    x = as_array(series)
    if x.size < 8:
        raise InsufficientDataError(f"power spectrum needs at least 8 samples, got {x.size}")
    if dt is None:
        dt = getattr(series, "dt", 1.0)
    n = x.size
    coef = np.fft.rfft(x - x.mean())
    power = np.abs(coef) ** 2 / n**2
    # fold negative frequencies; DC and (even n) Nyquist appear once
    power[1 : (n + 1) // 2] *= 2.0
    return np.fft.rfftfreq(n, d=dt), power


def spectrum_exponent(frequencies: np.ndarray, power: np.ndarray) -> ScalingResult:
    """Fit power ~ f**(-beta); ``exponent`` holds beta. Zero frequency is excluded."""
    f = np.asarray(frequencies, dtype=float)
    p = np.asarray(power, dtype=float)
    keep = (f > 0) & (p > 0)
    if keep.sum() < 3:
        raise InsufficientScalesError("fewer than 3 positive-frequency points")
    slope, intercept, r2 = loglog_fit(f[keep], p[keep])
    return ScalingResult(f[keep], p[keep], -slope, intercept, r2)


@dataclass(frozen=True)
class TwoSegmentFit:
    slope1: float
    slope2: float
    crossover: float
    split: int
    sse: float


def _line_sse(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    slope, intercept, _ = _ols(x, y)
    r = y - (slope * x + intercept)
    return slope, intercept, float(r @ r)


def two_segment_fit(log_x: Sequence[float], log_y: Sequence[float], base: float = 10.0) -> TwoSegmentFit:
    """Best two-line fit over every interior breakpoint.

    Each side gets an independent least-squares line and needs at least 3
    points. The crossover is where the two lines meet, converted back from
    logarithms of ``base``; when the lines are parallel or meet outside the
    data range it falls back to the midpoint of the split.
    """
    lx = np.asarray(log_x, dtype=float)
    ly = np.asarray(log_y, dtype=float)
    if lx.shape != ly.shape or lx.ndim != 1:
        raise ValidationError("log_x and log_y must be 1-D and equal length")
    if np.any(np.diff(lx) <= 0):
        raise ValidationError("log_x must be strictly increasing")
    n = lx.size
    if n < 6:
        raise InsufficientScalesError(f"two-segment fit needs at least 6 points, got {n}")
    best = None
    for k in range(3, n - 2):
        s1, b1, e1 = _line_sse(lx[:k], ly[:k])
        s2, b2, e2 = _line_sse(lx[k:], ly[k:])
        sse = e1 + e2
        if best is None or sse < best[0]:
            best = (sse, k, s1, b1, s2, b2)
    sse, k, s1, b1, s2, b2 = best
    cross = 0.5 * (lx[k - 1] + lx[k])
    if s1 != s2:
        meet = (b2 - b1) / (s1 - s2)
        if lx[0] <= meet <= lx[-1]:
            cross = meet
    return TwoSegmentFit(s1, s2, float(base**cross), k, sse)
