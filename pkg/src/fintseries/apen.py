"""Approximate Entropy with self-matches counted.

Two evaluation paths produce identical match counts, and hence bitwise
identical results: ``"naive"`` compares every pair of embedded windows,
``"sorted"`` first restricts candidates to windows whose leading element is
within ``r`` of the reference window's.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSeriesError, InsufficientDataError, ValidationError
from .series import SeriesLike, as_array

DEFAULT_M = 2
DEFAULT_R_FACTOR = 0.2


@dataclass(frozen=True)
class ApEnParams:
    m: int = DEFAULT_M
    r: float = 1.0

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValidationError(f"m must be a positive integer, got {self.m}")
        if not (math.isfinite(self.r) and self.r > 0):
            raise ValidationError(f"r must be positive, got {self.r}")

    @classmethod
    def default_for(cls, series: SeriesLike, m: int = DEFAULT_M, factor: float = DEFAULT_R_FACTOR) -> "ApEnParams":
        """m=2 and r = 0.2 x population standard deviation of ``series``."""
        x = as_array(series)
        sd = float(np.std(x))
        if sd == 0:
            raise DegenerateSeriesError("default tolerance undefined for a constant series")
        return cls(m, factor * sd)


def chebyshev_distance(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValidationError(f"window shapes differ: {a.shape} vs {b.shape}")
    return float(np.max(np.abs(b - a), initial=0.0))


def _embed(x: np.ndarray, m: int) -> np.ndarray:
    return np.lib.stride_tricks.sliding_window_view(x, m)


def _counts_naive(emb: np.ndarray, r: float) -> np.ndarray:
    counts = np.empty(emb.shape[0], dtype=np.int64)
    for i in range(emb.shape[0]):
        d = np.max(np.abs(emb - emb[i]), axis=1)
        counts[i] = np.count_nonzero(d <= r)
    return counts


def _counts_sorted(emb: np.ndarray, r: float) -> np.ndarray:
    lead = emb[:, 0]
    order = np.argsort(lead, kind="stable")
    sorted_lead = lead[order]
    # widened bracket; the exact test below decides membership
    slack = r * 1e-9 + 4 * np.finfo(float).eps * (np.max(np.abs(lead)) + r)
    lo = np.searchsorted(sorted_lead, lead - r - slack, side="left")
    hi = np.searchsorted(sorted_lead, lead + r + slack, side="right")
    counts = np.empty(emb.shape[0], dtype=np.int64)
    for i in range(emb.shape[0]):
        cand = emb[order[lo[i] : hi[i]]]
        d = np.max(np.abs(cand - emb[i]), axis=1)
        counts[i] = np.count_nonzero(d <= r)
    return counts


_COUNTERS = {"naive": _counts_naive, "sorted": _counts_sorted}


def phi_m(series: SeriesLike, m: int, r: float, method: str = "sorted") -> float:
    """Mean log fraction of embedded windows within ``r`` of each window."""
    x = as_array(series)
    ApEnParams(m, r)
    if x.size < m + 1:
        raise InsufficientDataError(f"need at least m + 1 = {m + 1} points, got {x.size}")
    try:
        counter = _COUNTERS[method]
    except KeyError:
        raise ValidationError(f"unknown method {method!r}; choose from {sorted(_COUNTERS)}") from None
    emb = _embed(x, m)
    counts = counter(emb, r)
    return float(np.mean(np.log(counts / emb.shape[0])))


def apen(series: SeriesLike, params: ApEnParams | None = None, method: str = "sorted") -> float:
    """Phi^m(r) - Phi^(m+1)(r). ``params`` defaults to :meth:`ApEnParams.default_for`."""
    x = as_array(series)
    if params is None:
        params = ApEnParams.default_for(x)
    if x.size < params.m + 2:
        raise InsufficientDataError(f"need at least m + 2 = {params.m + 2} points, got {x.size}")
    return phi_m(x, params.m, params.r, method) - phi_m(x, params.m + 1, params.r, method)


def rolling_apen(
    series: SeriesLike,
    window: int,
    step: int = 1,
    params: ApEnParams | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """ApEn over sliding windows; returns (window end indices, values).

    With ``params`` unset, r is fixed from the whole series so values are
    comparable across windows.
    """
    x = as_array(series)
    if window > x.size:
        raise InsufficientDataError(f"window {window} exceeds series length {x.size}")
    if step < 1:
        raise ValidationError(f"step must be positive, got {step}")
    if params is None:
        params = ApEnParams.default_for(x)
    starts = np.arange(0, x.size - window + 1, step)
    values = np.array([apen(x[s : s + window], params) for s in starts])
    return starts + window - 1, values
