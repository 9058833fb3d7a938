"""Command-line entry point.

Exit codes: 0 success, 2 validation error, 3 data error, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .errors import DataError, NumericError, ToolkitError, ValidationError
from .pipeline import METHODS, PROCESSES, RunConfig, run_pipeline, write_outputs


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--report", metavar="PATH", help="write the JSON report here instead of stdout")
    p.add_argument("--plot-dir", metavar="DIR", help="directory for plot-data files")


def _scales(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tau-min", type=int, default=8)
    p.add_argument("--tau-max", type=int)


def _apen_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=int, help="embedding dimension (default 2)")
    p.add_argument("--r", type=float, help="tolerance (default 0.2 x std)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fintseries", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="simulate a benchmark process to CSV")
    g.add_argument("--process", choices=PROCESSES, required=True)
    g.add_argument("--n", type=int, default=3000, help="number of observations (CML: steps)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True, metavar="PATH")
    g.add_argument("--vars", type=int, help="gaussian only: emit an uncorrelated VARS x N panel")
    g.add_argument("--sigma", type=float, default=1.0)
    g.add_argument("--x0", type=float, default=0.0)
    g.add_argument("--alpha0", type=float, default=0.00023)
    g.add_argument("--alpha1", type=float, default=0.09)
    g.add_argument("--beta1", type=float, default=0.01)
    g.add_argument("--allow-nonstationary", action="store_true")
    g.add_argument("--sites", type=int, default=500)
    g.add_argument("--a", type=float, default=1.97)
    g.add_argument("--epsilon", type=float, default=0.4)
    g.add_argument("--transient", type=int, default=10_000)
    _common(g)

    a = sub.add_parser("analyze", help="run one diagnostic on a single-series CSV")
    a.add_argument("--method", choices=METHODS, required=True)
    a.add_argument("--in", dest="input", required=True, metavar="PATH")
    _scales(a)
    _apen_opts(a)
    a.add_argument("--tail-fraction", type=float, default=0.05)
    a.add_argument("--max-lag", type=int, default=50)
    _common(a)

    r = sub.add_parser("rmt", help="correlation spectrum of a panel CSV against random-matrix theory")
    r.add_argument("--in", dest="input", required=True, metavar="PATH")
    r.add_argument("--bins", type=int, default=20)
    r.add_argument("--log-returns", action="store_true", help="rows are prices; correlate their log-returns")
    _common(r)

    e = sub.add_parser("apen", help="approximate entropy, optionally over a rolling window")
    e.add_argument("--in", dest="input", required=True, metavar="PATH")
    _apen_opts(e)
    e.add_argument("--window", type=int)
    e.add_argument("--step", type=int, default=1)
    _common(e)

    t = sub.add_parser("report-table1", help="Hurst and DFA exponents of the benchmark processes")
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--returns", metavar="PATH", help="optional single-series CSV of returns or prices")
    t.add_argument("--n", type=int, default=3000)
    t.add_argument("--sites", type=int, default=500)
    t.add_argument("--transient", type=int, default=10_000)
    t.add_argument("--site", type=int, default=0)
    _common(t)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    opts = {k: v for k, v in vars(ns).items() if k != "report"}
    return RunConfig.from_mapping(opts)


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        config = config_from_args(ns)
        report = run_pipeline(config)
        write_outputs(report, ns.report)
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return ValidationError.exit_code
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return DataError.exit_code
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return NumericError.exit_code
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return DataError.exit_code
    if ns.report is None:
        sys.stdout.write(report.to_json())
    return 0


if __name__ == "__main__":
    sys.exit(main())
