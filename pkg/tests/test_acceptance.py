"""Acceptance checks, each at its stated tolerance.

Every check records a PASS/FAIL line through the ``accept`` fixture; the
lines are printed in the terminal summary, followed by one verdict per
criterion.  Run just this module with ``pytest tests/test_acceptance.py``.
"""

import math
import time

import numpy as np
import pytest
from scipy.integrate import quad

from fintseries import (
    BENCHMARK_GARCH,
    ApEnParams,
    RmtBounds,
    SeriesPanel,
    aggregate_returns,
    acf,
    apen,
    correlation_matrix,
    dfa_exponent,
    eigen_spectrum,
    excess_kurtosis,
    gen_garch11,
    gen_gaussian,
    log_returns,
    mp_density,
    power_spectrum,
    spectrum_exponent,
    tail_exponent,
    two_segment_fit,
)
from fintseries.cli import main
from fintseries.pipeline import table1

SEEDS = range(10)

# (row, statistic, target, tolerance); "hurst" is the R/S estimate
TABLE1_CHECKS = [
    ("random", "hurst", 0.50, 0.05),
    ("random", "dfa", 0.50, 0.05),
    ("cml", "hurst", 0.46, 0.06),
    ("cml", "dfa", 0.48, 0.06),
    ("garch", "hurst", 0.63, 0.08),
    ("garch", "dfa", 0.51, 0.05),
]


@pytest.fixture(scope="module")
def tables():
    out, elapsed = {}, {}
    for seed in SEEDS:
        t0 = time.perf_counter()
        rows = table1(seed)
        elapsed[seed] = time.perf_counter() - t0
        out[seed] = {name: {"hurst": h.exponent, "dfa": d.exponent} for name, (h, d) in rows.items()}
    return out, elapsed


# -- 1: benchmark exponents ------------------------------------------------

@pytest.mark.parametrize("row,stat,target,tol", TABLE1_CHECKS)
def test_c1_seed0(tables, accept, row, stat, target, tol):
    value = tables[0][0][row][stat]
    ok = abs(value - target) <= tol
    accept("1", f"{row} {stat} seed 0 in {target} +/- {tol}", ok, f"got {value:.4f}")
    assert ok


@pytest.mark.parametrize("row,stat,target,tol", TABLE1_CHECKS)
def test_c1_ten_seeds(tables, accept, row, stat, target, tol):
    values = [tables[0][s][row][stat] for s in SEEDS]
    hits = sum(abs(v - target) <= tol for v in values)
    ok = hits >= 8
    accept("1", f"{row} {stat} in range for >= 8 of 10 seeds", ok, f"{hits}/10, mean {np.mean(values):.4f}")
    assert ok


def test_c1_runtime(tables, accept):
    worst = max(tables[1].values())
    ok = worst < 10.0
    accept("1", "full table for one seed in < 10 s", ok, f"slowest seed {worst:.2f} s")
    assert ok


# -- 2: crossover fitting and the alpha/beta relation --------------------

def test_c2_two_segment(accept):
    x = np.logspace(1, 4, 40)
    lx, lb = np.log10(x), math.log10(600.0)
    ly = np.where(lx <= lb, 0.2 + 0.31 * lx, 0.2 + 0.31 * lb + 0.90 * (lx - lb))
    fit = two_segment_fit(lx, ly)
    err = max(abs(fit.slope1 - 0.31), abs(fit.slope2 - 0.90), abs(fit.crossover - 600.0))
    ok = err <= 1e-6
    accept("2", "two-segment fit recovers 0.31 / 0.90 / 600", ok, f"max error {err:.2e}")
    assert ok


def test_c2_alpha_beta_relation(accept):
    x = gen_gaussian(4096, 0)
    alpha = dfa_exponent(x).exponent
    beta = spectrum_exponent(*power_spectrum(x)).exponent
    gap = abs(alpha - (1 + beta) / 2)
    ok = gap < 0.07
    accept("2", "white noise |alpha - (1+beta)/2| < 0.07", ok, f"alpha {alpha:.4f}, beta {beta:.4f}")
    assert ok


# -- 3: correlation spectra -----------------------------------------------

def test_c3_uncorrelated_panel(accept):
    panel = SeriesPanel(np.random.default_rng(0).standard_normal((100, 1000)))
    spec = eigen_spectrum(correlation_matrix(panel), 1000)
    lo, hi = (1 - math.sqrt(0.1)) ** 2, (1 + math.sqrt(0.1)) ** 2
    inside = np.mean((spec.eigenvalues >= lo) & (spec.eigenvalues <= hi))
    ok1 = accept("3", ">= 95% of eigenvalues inside the noise band", inside >= 0.95, f"{inside:.2f}")
    rel = abs(spec.eigenvalues.sum() - 100) / 100
    ok2 = accept("3", "eigenvalue sum equals N within 1e-8", rel <= 1e-8, f"relative error {rel:.1e}")
    assert ok1 and ok2


@pytest.mark.parametrize("q", [1, 2, 4, 10])
def test_c3_density_normalized(accept, q):
    b = RmtBounds.from_q(q)
    total, _ = quad(lambda v: mp_density(v, q), b.lambda_min, b.lambda_max, epsabs=1e-12, epsrel=1e-12, limit=200)
    ok = abs(total - 1) <= 1e-6
    accept("3", f"density integrates to 1 at q={q}", ok, f"{total:.10f}")
    assert ok


def test_c3_common_factor(accept):
    tops = []
    for seed in SEEDS:
        rng = np.random.default_rng(seed)
        common = rng.standard_normal(1000)
        panel = rng.standard_normal((100, 1000)) + 0.5 * common
        spec = eigen_spectrum(correlation_matrix(panel), 1000)
        tops.append(spec.eigenvalues[0] - spec.bounds.lambda_max)
    ok = min(tops) > 0
    accept("3", "common factor lifts top eigenvalue above lambda_max, 10/10 seeds", ok, f"min margin {min(tops):.2f}")
    assert ok


# -- 4: approximate entropy ----------------------------------------------

def _phi_oracle(u, m, r):
    count = len(u) - m + 1
    total = 0.0
    for i in range(count):
        close = sum(max(abs(u[j + k] - u[i + k]) for k in range(m)) <= r for j in range(count))
        total += math.log(close / count)
    return total / count


def test_c4_constant(accept):
    values = [apen(np.full(n, c), ApEnParams(m, 0.1)) for n, c, m in [(10, 0.0, 1), (100, -3.5, 2), (500, 1e6, 3)]]
    ok = all(v == 0.0 for v in values)
    accept("4", "constant series gives exactly 0", ok)
    assert ok


def test_c4_paths_bitwise(accept):
    rng = np.random.default_rng(0)
    mismatches = 0
    for case in range(200):
        n = int(rng.integers(5, 1001))
        kind = case % 4
        if kind == 0:
            x = rng.standard_normal(n)
        elif kind == 1:
            x = rng.integers(0, 5, n).astype(float)
        elif kind == 2:
            x = np.cumsum(rng.standard_normal(n))
        else:
            x = np.round(rng.uniform(-1, 1, n), 2)
        m = int(rng.integers(1, 4))
        if n < m + 2:
            continue
        r = float(rng.uniform(0.05, 0.5)) * (np.std(x) or 1.0)
        p = ApEnParams(m, r)
        mismatches += apen(x, p, method="sorted") != apen(x, p, method="naive")
    ok = mismatches == 0
    accept("4", "sorted and naive paths bitwise equal on 200 cases", ok, f"{mismatches} mismatches")
    assert ok


def test_c4_oracle(accept):
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(30):
        n = int(rng.integers(5, 51))
        u = rng.standard_normal(n)
        m = int(rng.integers(1, 3))
        r = 0.2 * float(np.std(u))
        for method in ("naive", "sorted"):
            expect = _phi_oracle(u.tolist(), m, r) - _phi_oracle(u.tolist(), m + 1, r)
            worst = max(worst, abs(apen(u, ApEnParams(m, r), method=method) - expect))
    ok = worst <= 1e-14
    accept("4", "brute-force oracle agreement to 1e-14 for N <= 50", ok, f"max error {worst:.1e}")
    assert ok


def test_c4_noise_vs_alternating(accept):
    noise = np.random.default_rng(0).standard_normal(1000)
    alt = np.array([(-1.0) ** i for i in range(1000)])
    a = apen(noise, ApEnParams(2, 0.2 * np.std(noise)))
    b = apen(alt, ApEnParams(2, 0.2 * np.std(alt)))
    ok = a > 10 * b
    accept("4", "noise ApEn > 10 x alternating ApEn", ok, f"{a:.4f} vs {b:.2e}")
    assert ok


# -- 5: stylized facts on generated returns ------------------------------

@pytest.fixture(scope="module")
def garch_returns():
    return gen_garch11(100_000, BENCHMARK_GARCH, 0)[0]


def test_c5_acf(garch_returns, accept):
    n = len(garch_returns)
    signed = acf(garch_returns, 50)
    frac = np.mean(np.abs(signed.values[1:]) < 2 / math.sqrt(n))
    ok1 = accept("5", "return ACF inside 2/sqrt(N) for >= 95% of lags 1..50", frac >= 0.95, f"{frac:.2f}")
    lag1 = acf(np.abs(garch_returns.values), 1).values[1]
    ok2 = accept("5", "|return| ACF at lag 1 > 3/sqrt(N)", lag1 > 3 / math.sqrt(n), f"{lag1:.4f} vs {3 / math.sqrt(n):.4f}")
    assert ok1 and ok2


def test_c5_kurtosis(garch_returns, accept):
    ks = (1, 2, 5, 10, 25)
    kurt = [excess_kurtosis(aggregate_returns(garch_returns, k)) for k in ks]
    shown = ", ".join(f"k={k}: {v:.3f}" for k, v in zip(ks, kurt))
    ok1 = accept("5", "excess kurtosis > 0", kurt[0] > 0, f"{kurt[0]:.4f}")
    ok2 = accept("5", "excess kurtosis non-increasing under aggregation", all(np.diff(kurt) <= 0), shown)
    assert ok1 and ok2


# -- 6: tail index ---------------------------------------------------------

@pytest.mark.parametrize("alpha,tol,seed", [(3.0, 0.15, 0), (1.7, 0.1, 1)])
def test_c6_hill(accept, alpha, tol, seed):
    u = np.random.default_rng(seed).uniform(size=100_000)
    x = (1.0 - u) ** (-1.0 / alpha)
    est = tail_exponent(x, 0.05).alpha
    ok = abs(est - alpha) <= tol
    accept("6", f"Hill recovers {alpha} +/- {tol}", ok, f"got {est:.4f}")
    assert ok


# -- 7: invariants ---------------------------------------------------------

def test_c7_telescoping(accept):
    p = 50 * np.exp(np.cumsum(np.random.default_rng(0).normal(0, 0.01, 1001)))
    one = log_returns(p).values
    err = 0.0
    for tau in (2, 5, 10):
        summed = np.array([one[i : i + tau].sum() for i in range(len(one) - tau + 1)])
        err = max(err, np.max(np.abs(log_returns(p, tau).values - summed)))
    ok = err <= 1e-12
    accept("7", "log-returns telescope", ok, f"max error {err:.1e}")
    assert ok


def test_c7_dfa_invariance(accept):
    x = gen_gaussian(2048, 0).values
    base = dfa_exponent(x).exponent
    err = max(abs(dfa_exponent(a * x + b).exponent - base) for a, b in [(1, 5.0), (1, -1e3), (0.01, 0), (300, 2)])
    ok = err <= 1e-6
    accept("7", "DFA exponent shift and scale invariant", ok, f"max change {err:.1e}")
    assert ok


def test_c7_correlation_invariance(accept):
    rng = np.random.default_rng(0)
    x = rng.standard_normal((20, 300)) + 0.3 * rng.standard_normal(300)
    c = correlation_matrix(x).entries
    y = x * rng.uniform(0.1, 50, (20, 1)) + rng.uniform(-100, 100, (20, 1))
    affine = np.max(np.abs(correlation_matrix(y).entries - c))
    perm = rng.permutation(20)
    permuted = np.max(np.abs(correlation_matrix(x[perm]).entries - c[np.ix_(perm, perm)]))
    ok = affine <= 1e-12 and permuted <= 1e-12
    accept("7", "correlation affine invariance and permutation equivariance", ok, f"{affine:.1e}, {permuted:.1e}")
    assert ok


def test_c7_apen_invariance(accept):
    rng = np.random.default_rng(0)
    x = rng.integers(-8, 8, 400).astype(float)
    p = ApEnParams(2, 1.5)
    base = apen(x, p)
    ok = all(apen(x + c, p) == base for c in (-7.0, 3.0, 1024.0))
    ok = ok and all(apen(c * x, ApEnParams(2, c * 1.5)) == base for c in (0.25, 2.0, 8.0))
    accept("7", "ApEn translation and joint-scale invariance", ok)
    assert ok


def test_c7_cli_determinism(tmp_path, accept, capsys):
    runs = [
        ["report-table1", "--seed", "0"],
        ["generate", "--process", "cml", "--n", "500", "--sites", "60", "--transient", "1000", "--seed", "1",
         "--out", str(tmp_path / "cml.csv")],
        ["rmt", "--in", str(tmp_path / "cml.csv"), "--bins", "20"],
    ]

    def execute():
        snapshot = {}
        for i, argv in enumerate(runs):
            assert main([*argv, "--report", str(tmp_path / f"r{i}.json"), "--plot-dir", str(tmp_path / "plots")]) == 0
        for p in sorted(tmp_path.rglob("*")):
            if p.is_file():
                snapshot[p.relative_to(tmp_path)] = p.read_bytes()
        return snapshot

    first = execute()
    second = execute()
    capsys.readouterr()
    ok = first == second and len(first) > 5
    accept("7", "CLI reruns byte-identical", ok, f"{len(first)} files compared")
    assert ok
