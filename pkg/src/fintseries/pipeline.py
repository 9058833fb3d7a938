"""Run configuration, pipeline orchestration and report assembly."""

from __future__ import annotations

import contextlib
import hashlib
import json
import math
import warnings
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .apen import ApEnParams, apen, rolling_apen
from .errors import NonstationaryParametersError, ToolkitError, ValidationError
from .generators import (
    BENCHMARK_GARCH,
    CmlParams,
    GarchParams,
    SeriesPanel,
    gen_cml,
    gen_garch11,
    gen_gaussian,
    gen_random_walk,
)
from .io import emit_plot_data, ingest_csv, write_panel_csv, write_series_csv
from .rmt import correlation_matrix, eigen_spectrum, market_mode, spectrum_vs_rmt
from .scaling import (
    BoxSchedule,
    ScalingResult,
    dfa_exponent,
    hurst_exponent,
    power_spectrum,
    spectrum_exponent,
)
from .series import PriceSeries, Series, log_returns
from .stylized import acf, tail_exponent

COMMANDS = ("generate", "analyze", "rmt", "apen", "report-table1")
PROCESSES = ("gaussian", "walk", "garch", "cml")
METHODS = ("hurst", "dfa", "spectrum", "acf", "tails", "apen")

# Warning identifiers that may appear in a report.
W_PANEL_UNDERSAMPLED = "panel-undersampled"
W_NONSTATIONARY = "nonstationary-garch"
W_APEN_DEFAULT = "apen-default-params"
W_PRICE_TO_RETURNS = "price-to-returns"


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int = 0
    input: str | None = None
    out: str | None = None
    plot_dir: str | None = None
    # generation
    process: str | None = None
    n: int = 3000
    vars: int | None = None
    sigma: float = 1.0
    x0: float = 0.0
    alpha0: float = BENCHMARK_GARCH.alpha0
    alpha1: float = BENCHMARK_GARCH.alpha1
    beta1: float = BENCHMARK_GARCH.beta1
    allow_nonstationary: bool = False
    sites: int = 500
    a: float = 1.97
    epsilon: float = 0.4
    transient: int = 10_000
    site: int = 0
    # analysis
    method: str | None = None
    m: int | None = None
    r: float | None = None
    tau_min: int = 8
    tau_max: int | None = None
    tail_fraction: float = 0.05
    max_lag: int = 50
    bins: int = 20
    log_returns: bool = False
    window: int | None = None
    step: int = 1
    returns: str | None = None

    def validate(self) -> None:
        """Check every parameter the command will use; raises ValidationError."""
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}")
        if self.command == "generate":
            if self.process not in PROCESSES:
                raise ValidationError(f"--process must be one of {PROCESSES}, got {self.process!r}")
            if not self.out:
                raise ValidationError("generate needs --out")
            _positive_int("n", self.n)
            if self.process == "gaussian" and self.vars is not None:
                _positive_int("vars", self.vars)
            if self.process == "walk" and not self.sigma > 0:
                raise ValidationError(f"sigma must be positive, got {self.sigma}")
            if self.process == "garch":
                self.garch_params()
            if self.process == "cml":
                self.cml_params()
        elif self.command == "analyze":
            if self.method not in METHODS:
                raise ValidationError(f"--method must be one of {METHODS}, got {self.method!r}")
            self._need_input()
        elif self.command in ("rmt", "apen"):
            self._need_input()
        elif self.command == "report-table1":
            _positive_int("n", self.n)
            self.cml_params()
        if self.command in ("analyze", "apen"):
            if self.m is not None or self.r is not None:
                ApEnParams(self.m if self.m is not None else 2, self.r if self.r is not None else 1.0)
            if self.window is not None:
                _positive_int("window", self.window)
            _positive_int("step", self.step)
        if self.tau_min < 4:
            raise ValidationError(f"tau_min must be >= 4, got {self.tau_min}")
        if self.tau_max is not None and self.tau_max < self.tau_min:
            raise ValidationError("tau_max must not be below tau_min")
        if not (0 < self.tail_fraction <= 0.2):
            raise ValidationError(f"tail_fraction must lie in (0, 0.2], got {self.tail_fraction}")
        _positive_int("max_lag", self.max_lag)
        _positive_int("bins", self.bins)

    def _need_input(self) -> None:
        if not self.input:
            raise ValidationError(f"{self.command} needs --in")
        if not Path(self.input).is_file():
            raise ValidationError(f"input file not found: {self.input}")

    def garch_params(self) -> GarchParams:
        p = GarchParams(self.alpha0, self.alpha1, self.beta1)
        if not p.stationary and not self.allow_nonstationary:
            raise NonstationaryParametersError(
                f"alpha1 + beta1 = {self.alpha1 + self.beta1} >= 1; use --allow-nonstationary"
            )
        return p

    def cml_params(self) -> CmlParams:
        return CmlParams(self.sites, self.a, self.epsilon, self.transient, self.n)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @property
    def hash(self) -> str:
        # output locations do not change what is computed
        d = {k: v for k, v in self.to_dict().items() if k not in ("out", "plot_dir")}
        blob = json.dumps(d, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:12]

    @classmethod
    def from_mapping(cls, mapping: dict[str, Any]) -> "RunConfig":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in mapping.items() if k in names and v is not None})


def _positive_int(name: str, value) -> None:
    if not isinstance(value, (int, np.integer)) or value < 1:
        raise ValidationError(f"{name} must be a positive integer, got {value!r}")


@dataclass
class Report:
    config: RunConfig
    results: dict[str, Any] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    # objects for plot-data emission, keyed by file stem; not serialized
    artifacts: dict[str, Any] = field(default_factory=dict, repr=False)
    # generated data awaiting write-out: ("series", columns) or ("panel", matrix)
    payload: tuple[str, Any] | None = field(default=None, repr=False)

    def warn(self, code: str, detail: str) -> None:
        msg = f"{code}: {detail}"
        if msg not in self.warnings:
            self.warnings.append(msg)

    def to_dict(self) -> dict[str, Any]:
        return {
            "tool": "fintseries",
            "version": __version__,
            "config": self.config.to_dict(),
            "config_hash": self.config.hash,
            "results": _plain(self.results),
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n"


def _plain(obj):
    """Convert numpy containers and scalars into JSON-ready Python values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    return obj


@contextlib.contextmanager
def stage(name: str):
    """Prefix any toolkit error raised inside with the pipeline stage name."""
    try:
        yield
    except ToolkitError as exc:
        if not getattr(exc, "stage", None):
            exc.stage = name
            exc.args = (f"[{name}] {exc}",) + exc.args[1:]
        raise


def scaling_summary(res: ScalingResult) -> dict[str, Any]:
    return {
        "exponent": res.exponent,
        "intercept": res.intercept,
        "r_squared": res.r_squared,
        "label": res.label,
        "sizes": res.sizes,
        "statistic": res.statistic,
    }


def child_seeds(seed: int, count: int) -> list[int]:
    """Independent, reproducible integer seeds derived from ``seed``."""
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(count)]


TABLE1_ROWS = ("random", "cml", "garch")


def table1(
    seed: int = 0,
    n: int = 3000,
    cml: CmlParams | None = None,
    garch: GarchParams = BENCHMARK_GARCH,
    returns: Series | None = None,
    site: int = 0,
) -> dict[str, tuple[ScalingResult, ScalingResult]]:
    """Hurst and DFA fits for the benchmark processes (and optional real returns).

    Each row uses the default box schedule for its length and its own child
    seed of ``seed``.
    """
    cml = cml or CmlParams(steps=n)
    s_rand, s_cml, s_garch = child_seeds(seed, 3)
    inputs: dict[str, Series] = {}
    with stage("generate random"):
        inputs["random"] = gen_gaussian(n, s_rand)
    with stage("generate cml"):
        inputs["cml"] = gen_cml(cml, s_cml).site(site)
    with stage("generate garch"):
        inputs["garch"] = gen_garch11(n, garch, s_garch)[0]
    if returns is not None:
        inputs["returns"] = returns
    out = {}
    for name, x in inputs.items():
        with stage(f"hurst {name}"):
            h = hurst_exponent(x)
        with stage(f"dfa {name}"):
            d = dfa_exponent(x)
        out[name] = (h, d)
    return out


def _load_series(cfg: RunConfig, report: Report, path: str | None = None) -> Series:
    with stage("ingest"):
        ing = ingest_csv(path or cfg.input, "single")
    report.results["input"] = {"path": path or cfg.input, "rows": ing.n_rows, "skipped_lines": ing.skipped}
    if isinstance(ing.data, PriceSeries):
        report.warn(W_PRICE_TO_RETURNS, "input has a price column; analyzing one-step log-returns")
        with stage("log-returns"):
            return log_returns(ing.data, 1)
    return ing.data


def _schedule(cfg: RunConfig, length: int) -> BoxSchedule:
    hi = cfg.tau_max if cfg.tau_max is not None else length // 4
    return BoxSchedule.geometric(cfg.tau_min, hi)


def _apen_params(cfg: RunConfig, x: Series, report: Report) -> ApEnParams:
    if cfg.m is None or cfg.r is None:
        base = ApEnParams.default_for(x, m=cfg.m if cfg.m is not None else 2)
        r = cfg.r if cfg.r is not None else base.r
        params = ApEnParams(base.m, r)
        report.warn(W_APEN_DEFAULT, f"using m={params.m}, r={params.r!r} (0.2 x std where unset)")
        return params
    return ApEnParams(cfg.m, cfg.r)


def _run_generate(cfg: RunConfig, report: Report) -> None:
    res: dict[str, Any] = {"process": cfg.process}
    with stage(f"generate {cfg.process}"):
        if cfg.process == "gaussian" and cfg.vars:
            data = np.random.default_rng(cfg.seed).standard_normal((cfg.vars, cfg.n))
            report.payload = ("panel", data)
            res.update(n_vars=cfg.vars, n_obs=cfg.n)
        elif cfg.process == "gaussian":
            x = gen_gaussian(cfg.n, cfg.seed)
            report.payload = ("series", {"value": x.values})
        elif cfg.process == "walk":
            x = gen_random_walk(cfg.n, cfg.seed, cfg.sigma, cfg.x0)
            report.payload = ("series", {"value": x.values})
        elif cfg.process == "garch":
            params = cfg.garch_params()
            if not params.stationary:
                report.warn(W_NONSTATIONARY, f"alpha1 + beta1 = {params.alpha1 + params.beta1} >= 1")
            x, vol = gen_garch11(cfg.n, params, cfg.seed, allow_nonstationary=cfg.allow_nonstationary)
            report.payload = ("series", {"value": x.values, "volatility": vol.values})
        else:
            panel = gen_cml(cfg.cml_params(), cfg.seed)
            report.payload = ("panel", panel.data)
            res.update(n_vars=panel.n_vars, n_obs=panel.n_obs)
    kind, data = report.payload
    if kind == "series":
        v = data["value"]
        res.update(n=v.size, mean=float(v.mean()), std=float(v.std()))
    res["out"] = cfg.out
    report.results["generate"] = res


def _run_analyze(cfg: RunConfig, report: Report) -> None:
    x = _load_series(cfg, report)
    method = cfg.method
    with stage(f"analyze {method}"):
        if method in ("hurst", "dfa"):
            fit = (hurst_exponent if method == "hurst" else dfa_exponent)(x, _schedule(cfg, len(x)))
            report.results[method] = scaling_summary(fit)
            report.artifacts[method] = fit
        elif method == "spectrum":
            freqs, power = power_spectrum(x)
            fit = spectrum_exponent(freqs, power)
            report.results["spectrum"] = {
                "beta": fit.exponent,
                "intercept": fit.intercept,
                "r_squared": fit.r_squared,
                "dfa_equivalent_alpha": (1 + fit.exponent) / 2,
                "total_power": float(power.sum()),
            }
            report.artifacts["spectrum"] = fit
        elif method == "acf":
            max_lag = min(cfg.max_lag, (len(x) - 1) // 2)
            signed = acf(x, max_lag)
            absolute = acf(np.abs(x.values), max_lag)
            band = signed.band()
            report.results["acf"] = {
                "max_lag": max_lag,
                "band_2_over_sqrt_n": band,
                "returns": signed.values,
                "abs_returns": absolute.values,
                "fraction_within_band": float(np.mean(np.abs(signed.values[1:]) < band)),
            }
            report.artifacts["acf"] = signed
            report.artifacts["acf-abs"] = absolute
        elif method == "tails":
            fits = {side: tail_exponent(x, cfg.tail_fraction, side) for side in ("positive", "negative")}
            report.results["tails"] = {
                side: {"alpha": f.alpha, "k_used": f.k_used, "estimator": "hill"} for side, f in fits.items()
            }
            report.results["tails"]["tail_fraction"] = cfg.tail_fraction
        else:
            params = _apen_params(cfg, x, report)
            report.results["apen"] = {"m": params.m, "r": params.r, "value": apen(x, params)}


def _run_rmt(cfg: RunConfig, report: Report) -> None:
    with stage("ingest"):
        ing = ingest_csv(cfg.input, "panel")
    panel: SeriesPanel = ing.data
    if cfg.log_returns:
        with stage("log-returns"):
            panel = SeriesPanel(np.array([log_returns(row, 1).values for row in panel.data]))
    with stage("correlation"):
        corr = correlation_matrix(panel)
    with stage("eigen"), warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        spec = eigen_spectrum(corr, panel.n_obs)
    if caught:
        report.warn(W_PANEL_UNDERSAMPLED, f"n_obs={panel.n_obs} <= n_vars={panel.n_vars}")
    lam, vec = market_mode(spec)
    res = {
        "n_vars": panel.n_vars,
        "n_obs": panel.n_obs,
        "q": spec.bounds.q,
        "lambda_min": spec.bounds.lambda_min,
        "lambda_max": spec.bounds.lambda_max,
        "eigenvalue_sum": float(spec.eigenvalues.sum()),
        "n_deviating": int(spec.deviating.size),
        "fraction_inside": spec.fraction_inside,
        "market_mode": {"eigenvalue": lam, "fraction_positive": float(np.mean(vec > 0))},
        "eigenvalues": spec.eigenvalues,
    }
    if spec.n >= 20:
        with stage("density"):
            cmp = spectrum_vs_rmt(spec, cfg.bins)
        res["density"] = {
            "bins": cfg.bins,
            "max_abs_deviation": cmp.max_abs_deviation,
            "peak_density": cmp.peak_density,
        }
        report.artifacts["density"] = cmp
    report.results["rmt"] = res


def _run_apen(cfg: RunConfig, report: Report) -> None:
    x = _load_series(cfg, report)
    with stage("apen"):
        params = _apen_params(cfg, x, report)
        res: dict[str, Any] = {"m": params.m, "r": params.r, "value": apen(x, params)}
        if cfg.window is not None:
            ends, values = rolling_apen(x, cfg.window, cfg.step, params)
            res["rolling"] = {"window": cfg.window, "step": cfg.step, "end": ends, "values": values}
            report.artifacts["apen-rolling"] = (ends, values)
    report.results["apen"] = res


def _run_table1(cfg: RunConfig, report: Report) -> None:
    returns = _load_series(cfg, report, cfg.returns) if cfg.returns else None
    rows = table1(cfg.seed, cfg.n, cfg.cml_params(), cfg.garch_params(), returns, cfg.site)
    table = {}
    for name, (h, d) in rows.items():
        table[name] = {"hurst": h.exponent, "dfa": d.exponent, "hurst_r2": h.r_squared, "dfa_r2": d.r_squared}
        report.artifacts[f"{name}-hurst"] = h
        report.artifacts[f"{name}-dfa"] = d
    report.results["table1"] = table
    report.results["seeds"] = dict(zip(TABLE1_ROWS, child_seeds(cfg.seed, 3)))


_RUNNERS = {
    "generate": _run_generate,
    "analyze": _run_analyze,
    "rmt": _run_rmt,
    "apen": _run_apen,
    "report-table1": _run_table1,
}


def run_pipeline(config: RunConfig) -> Report:
    """Validate ``config`` and run it in memory; nothing is written."""
    config.validate()
    report = Report(config)
    _RUNNERS[config.command](config, report)
    return report


def write_outputs(report: Report, report_path: str | Path | None = None) -> list[Path]:
    """Write generated data, plot data and (optionally) the JSON report."""
    cfg = report.config
    written: list[Path] = []
    if report.payload is not None:
        kind, data = report.payload
        if kind == "series":
            write_series_csv(cfg.out, data)
        else:
            write_panel_csv(cfg.out, data)
        written.append(Path(cfg.out))
    if cfg.plot_dir and report.artifacts:
        d = Path(cfg.plot_dir)
        d.mkdir(parents=True, exist_ok=True)
        for name, obj in report.artifacts.items():
            stem = f"{cfg.command}-{name}"
            written += emit_plot_data(obj, d / f"{stem}.dat", quantity=stem, config_hash=cfg.hash)
    if report_path is not None:
        Path(report_path).write_text(report.to_json())
        written.append(Path(report_path))
    return written
