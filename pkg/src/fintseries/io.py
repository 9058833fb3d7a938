"""CSV ingestion and plain-text plot data.

Single-series files carry a header with a ``price`` or ``value`` column.
Panel files are headerless comma-separated matrices, one variable per row.
Blank lines and ``#`` comment lines are skipped and reported.
All floats are written with 17 significant digits.
"""

from __future__ import annotations

import csv
import functools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Sequence

import numpy as np

from .errors import DomainError, ParseError, ShapeError, ValidationError
from .generators import SeriesPanel
from .rmt import RmtComparison
from .scaling import ScalingResult
from .series import PriceSeries, Series
from .stylized import AcfResult

FLOAT_FMT = "%.17g"

Layout = Literal["single", "panel"]


@dataclass
class IngestResult:
    data: PriceSeries | Series | SeriesPanel
    n_rows: int
    skipped: list[tuple[int, str]] = field(default_factory=list)
    column: str | None = None


def _parse(cell: str, line: int) -> float:
    try:
        v = float(cell)
    except ValueError:
        raise ParseError(f"malformed numeric cell {cell.strip()!r}", line) from None
    if not np.isfinite(v):
        raise ParseError(f"non-finite numeric cell {cell.strip()!r}", line)
    return v


def _content_lines(path: Path) -> tuple[list[tuple[int, str]], list[tuple[int, str]]]:
    lines, skipped = [], []
    with open(path, newline="") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.strip()
            if not text:
                skipped.append((lineno, "blank"))
            elif text.startswith("#"):
                skipped.append((lineno, "comment"))
            else:
                lines.append((lineno, text))
    return lines, skipped


def ingest_csv(path: str | Path, layout: Layout = "single") -> IngestResult:
    path = Path(path)
    if layout == "single":
        return _ingest_single(path)
    if layout == "panel":
        return _ingest_panel(path)
    raise ValidationError(f"layout must be 'single' or 'panel', got {layout!r}")


def _ingest_single(path: Path) -> IngestResult:
    header = None
    col = kind = None
    values: list[float] = []
    lines, skipped = _content_lines(path)
    for lineno, text in lines:
        cells = next(csv.reader([text]))
        if header is None:
            header = [c.strip().lower() for c in cells]
            for name in ("price", "value"):
                if name in header:
                    col, kind = header.index(name), name
                    break
            else:
                raise ParseError("header has no 'price' or 'value' column", lineno)
            continue
        if len(cells) != len(header):
            raise ShapeError(f"line {lineno}: expected {len(header)} cells, got {len(cells)}", row=lineno)
        v = _parse(cells[col], lineno)
        if kind == "price" and v <= 0:
            raise DomainError(f"line {lineno}: price must be strictly positive, got {v}")
        values.append(v)
    if header is None:
        raise ParseError("file is empty")
    if not values:
        raise ParseError("file has a header but no data rows")
    data = PriceSeries(values) if kind == "price" else Series(values)
    return IngestResult(data, len(values), skipped, kind)


def _ingest_panel(path: Path) -> IngestResult:
    rows: list[list[float]] = []
    width = None
    lines, skipped = _content_lines(path)
    for lineno, text in lines:
        row = [_parse(c, lineno) for c in text.split(",")]
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ShapeError(
                f"row {len(rows)} (line {lineno}) has {len(row)} values, expected {width}",
                row=len(rows),
            )
        rows.append(row)
    if not rows:
        raise ParseError("panel file has no data rows")
    return IngestResult(SeriesPanel(np.array(rows)), len(rows), skipped)


def write_series_csv(path: str | Path, columns: dict[str, Sequence[float]]) -> None:
    """Write named equal-length columns with a leading integer index ``t``."""
    arrays = {k: np.asarray(v, dtype=float) for k, v in columns.items()}
    n = {a.size for a in arrays.values()}
    if len(n) != 1:
        raise ShapeError("columns differ in length")
    with open(path, "w", newline="") as fh:
        fh.write(",".join(["t", *arrays]) + "\n")
        for t, row in enumerate(zip(*arrays.values())):
            fh.write(",".join([str(t), *(FLOAT_FMT % v for v in row)]) + "\n")


def write_panel_csv(path: str | Path, data: np.ndarray) -> None:
    with open(path, "w", newline="") as fh:
        for row in np.asarray(data, dtype=float):
            fh.write(",".join(FLOAT_FMT % v for v in row) + "\n")


def _write_xy(path: Path, x, y, header: str) -> Path:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    with open(path, "w") as fh:
        fh.write(f"# {header}\n")
        for a, b in zip(x, y):
            fh.write(f"{FLOAT_FMT % a} {FLOAT_FMT % b}\n")
    return path


@functools.singledispatch
def emit_plot_data(result, path: str | Path, quantity: str = "", config_hash: str = "") -> list[Path]:
    """Write ``result`` as whitespace-separated (x, y) text; returns the paths written."""
    if isinstance(result, tuple) and len(result) == 2:
        x, y = result
        if len(x) == 0:
            raise ValidationError("nothing to emit")
        return [_write_xy(Path(path), x, y, f"{quantity or 'x y'} config={config_hash}")]
    raise TypeError(f"no plot-data writer for {type(result).__name__}")


@emit_plot_data.register
def _(result: ScalingResult, path, quantity: str = "scaling", config_hash: str = "") -> list[Path]:
    if len(result.sizes) == 0:
        raise ValidationError("nothing to emit")
    header = f"{quantity}: log10(scale) log10(statistic) config={config_hash}"
    return [_write_xy(Path(path), np.log10(result.sizes), np.log10(result.statistic), header)]


@emit_plot_data.register
def _(result: AcfResult, path, quantity: str = "acf", config_hash: str = "") -> list[Path]:
    header = f"{quantity}: lag autocorrelation config={config_hash}"
    return [_write_xy(Path(path), result.lags, result.values, header)]


@emit_plot_data.register
def _(result: RmtComparison, path, quantity: str = "eigenvalue-density", config_hash: str = "") -> list[Path]:
    """Two files sharing the bin-center grid: ``<stem>_hist<ext>`` and ``<stem>_theory<ext>``."""
    path = Path(path)
    suffix = path.suffix or ".dat"
    hist = path.with_name(f"{path.stem}_hist{suffix}")
    theory = path.with_name(f"{path.stem}_theory{suffix}")
    return [
        _write_xy(hist, result.centers, result.histogram, f"{quantity} histogram: lambda density config={config_hash}"),
        _write_xy(theory, result.centers, result.density_curve, f"{quantity} theory: lambda density config={config_hash}"),
    ]
