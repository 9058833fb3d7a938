"""Seedable benchmark processes: Gaussian noise, random walk, GARCH(1,1), CML.

All generators draw normal deviates from ``numpy.random.default_rng(seed)``
(PCG64 bit stream, ziggurat normal transform), so a given ``(params, seed)``
reproduces the same output on every platform for a fixed numpy release.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainError,
    NonstationaryParametersError,
    ShapeError,
    ValidationError,
)
from .series import Series


def _check_n(n: int) -> int:
    if int(n) != n or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n}")
    return int(n)


@dataclass(frozen=True)
class GarchParams:
    alpha0: float
    alpha1: float
    beta1: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha0) and self.alpha0 > 0):
            raise ValidationError(f"alpha0 must be positive, got {self.alpha0}")
        if not (math.isfinite(self.alpha1) and self.alpha1 >= 0):
            raise ValidationError(f"alpha1 must be nonnegative, got {self.alpha1}")
        if not (math.isfinite(self.beta1) and self.beta1 >= 0):
            raise ValidationError(f"beta1 must be nonnegative, got {self.beta1}")

    @property
    def stationary(self) -> bool:
        return self.alpha1 + self.beta1 < 1

    @property
    def unconditional_variance(self) -> float:
        if not self.stationary:
            return math.inf
        return self.alpha0 / (1.0 - self.alpha1 - self.beta1)


# Parameters of the benchmark GARCH(1,1) run.
BENCHMARK_GARCH = GarchParams(alpha0=0.00023, alpha1=0.09, beta1=0.01)


@dataclass(frozen=True)
class CmlParams:
    n_sites: int = 500
    a: float = 1.97
    epsilon: float = 0.4
    transient: int = 10_000
    steps: int = 3000

    def __post_init__(self):
        if int(self.n_sites) != self.n_sites or self.n_sites < 3:
            raise ValidationError(f"n_sites must be an integer >= 3, got {self.n_sites}")
        if not (0 < self.a <= 2):
            raise ValidationError(f"a must lie in (0, 2], got {self.a}")
        if not (0 <= self.epsilon <= 1):
            raise ValidationError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        if int(self.transient) != self.transient or self.transient < 0:
            raise ValidationError(f"transient must be a nonnegative integer, got {self.transient}")
        if int(self.steps) != self.steps or self.steps < 1:
            raise ValidationError(f"steps must be a positive integer, got {self.steps}")


@dataclass(frozen=True, eq=False)
class SeriesPanel:
    """N variables by T observations, one variable per row."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=float)
        if arr.ndim != 2:
            raise ShapeError(f"panel must be two-dimensional, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ShapeError(f"panel must be nonempty, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            row = int(np.argwhere(~np.isfinite(arr))[0, 0])
            raise DomainError(f"panel row {row} contains non-finite values")
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def n_vars(self) -> int:
        return self.data.shape[0]

    @property
    def n_obs(self) -> int:
        return self.data.shape[1]

    def site(self, i: int = 0) -> Series:
        return Series(self.data[i])


def gen_gaussian(n: int, seed: int) -> Series:
    n = _check_n(n)
    return Series(np.random.default_rng(seed).standard_normal(n))


def gen_random_walk(n: int, seed: int, sigma: float = 1.0, x0: float = 0.0) -> Series:
    """x0 plus the running sum of ``sigma``-scaled Gaussian increments."""
    n = _check_n(n)
    if not (math.isfinite(sigma) and sigma > 0):
        raise ValidationError(f"sigma must be positive, got {sigma}")
    eta = gen_gaussian(n, seed).values
    return Series(x0 + np.cumsum(sigma * eta))


def gen_garch11(
    n: int,
    params: GarchParams = BENCHMARK_GARCH,
    seed: int = 0,
    *,
    allow_nonstationary: bool = False,
) -> tuple[Series, Series]:
    """Simulate GARCH(1,1) with Gaussian innovations.

    Returns ``(returns, volatility)`` where volatility holds sigma_t (not the
    variance). The recursion starts from the unconditional variance; with
    ``allow_nonstationary`` and alpha1 + beta1 >= 1 it starts from alpha0.
    """
    n = _check_n(n)
    if not params.stationary and not allow_nonstationary:
        raise NonstationaryParametersError(
            f"alpha1 + beta1 = {params.alpha1 + params.beta1} >= 1; "
            "pass allow_nonstationary to simulate anyway"
        )
    eta = gen_gaussian(n, seed).values.tolist()
    a0, a1, b1 = params.alpha0, params.alpha1, params.beta1
    var = params.unconditional_variance if params.stationary else a0
    x = [0.0] * n
    sig = [0.0] * n
    for t in range(n):
        if t:
            var = a0 + a1 * x[t - 1] * x[t - 1] + b1 * var
        s = math.sqrt(var)
        sig[t] = s
        x[t] = eta[t] * s
    return Series(x), Series(sig)


def _cml_step(y: np.ndarray, a: float, eps: float) -> np.ndarray:
    f = 1.0 - a * y * y
    return (1.0 - eps) * f + (eps / 2.0) * (np.roll(f, -1) + np.roll(f, 1))


def gen_cml(params: CmlParams = CmlParams(), seed: int = 0, initial_state=None) -> SeriesPanel:
    """Diffusively coupled logistic maps on a periodic ring.

    Initial values are uniform on [-1, 1] unless ``initial_state`` is given.
    The first ``params.transient`` iterates are discarded and the following
    ``params.steps`` are returned as an ``n_sites x steps`` panel.
    """
    if initial_state is None:
        y = np.random.default_rng(seed).uniform(-1.0, 1.0, params.n_sites)
    else:
        y = np.array(initial_state, dtype=float)
        if y.shape != (params.n_sites,):
            raise ShapeError(f"initial_state must have shape ({params.n_sites},), got {y.shape}")
        if np.any(np.abs(y) > 1):
            raise ValidationError("initial_state values must lie in [-1, 1]")
    a, eps = params.a, params.epsilon
    for _ in range(params.transient):
        y = _cml_step(y, a, eps)
    out = np.empty((params.n_sites, params.steps))
    for t in range(params.steps):
        y = _cml_step(y, a, eps)
        out[:, t] = y
    return SeriesPanel(out)
