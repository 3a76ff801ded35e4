"""Minimal deterministic SVG charts: polyline plots and cell heatmaps.

Output is a single self-contained SVG string with axes, tick labels, and
the data either as polylines or as filled cells.  No timestamps, no
randomness: identical inputs give identical bytes.  The root element
carries data-x-range / data-y-range attributes so files are
self-describing.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["line_chart", "heatmap", "nice_ticks"]

_WIDTH = 720
_HEIGHT = 480
_MARGIN_L = 78
_MARGIN_R = 24
_MARGIN_T = 40
_MARGIN_B = 56

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#e377c2", "#17becf", "#7f7f7f")

# Dark-blue to yellow ramp for heatmap cells.
_HEAT_STOPS = (
    (0.0, (68, 1, 84)),
    (0.25, (59, 82, 139)),
    (0.5, (33, 145, 140)),
    (0.75, (94, 201, 98)),
    (1.0, (253, 231, 37)),
)

_MAX_HEAT_COLS = 512
_MAX_HEAT_ROWS = 256


def nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    """Round tick positions covering [lo, hi] with a 1-2-5 step."""
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        return [lo, hi]
    span = hi - lo
    raw_step = span / max(target - 1, 1)
    mag = 10.0 ** math.floor(math.log10(raw_step))
    for mult in (1.0, 2.0, 5.0, 10.0):
        step = mult * mag
        if span / step <= target - 1 + 1e-9:
            break
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    value = first
    while value <= hi + step * 1e-9:
        ticks.append(0.0 if abs(value) < step * 1e-9 else value)
        value += step
    return ticks


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _fmt_tick(value: float) -> str:
    return f"{value:g}"


def _color(frac: float) -> str:
    frac = min(max(frac, 0.0), 1.0)
    for (lo_p, lo_c), (hi_p, hi_c) in zip(_HEAT_STOPS, _HEAT_STOPS[1:]):
        if frac <= hi_p:
            w = 0.0 if hi_p == lo_p else (frac - lo_p) / (hi_p - lo_p)
            rgb = tuple(round(a + (b - a) * w) for a, b in zip(lo_c, hi_c))
            return "#%02x%02x%02x" % rgb
    return "#%02x%02x%02x" % _HEAT_STOPS[-1][1]


class _Frame:
    """Maps data coordinates into the plot rectangle (y grows upward)."""

    def __init__(self, x_lo, x_hi, y_lo, y_hi):
        if x_hi <= x_lo:
            x_hi = x_lo + 1.0
        if y_hi <= y_lo:
            y_hi = y_lo + 1.0
        self.x_lo, self.x_hi = x_lo, x_hi
        self.y_lo, self.y_hi = y_lo, y_hi
        self.px_lo = _MARGIN_L
        self.px_hi = _WIDTH - _MARGIN_R
        self.py_lo = _HEIGHT - _MARGIN_B
        self.py_hi = _MARGIN_T

    def x(self, v: float) -> float:
        f = (v - self.x_lo) / (self.x_hi - self.x_lo)
        return self.px_lo + f * (self.px_hi - self.px_lo)

    def y(self, v: float) -> float:
        f = (v - self.y_lo) / (self.y_hi - self.y_lo)
        return self.py_lo + f * (self.py_hi - self.py_lo)


def _axes(parts: list[str], frame: _Frame, x_label: str, y_label: str, title: str) -> None:
    parts.append(
        f'<rect x="{frame.px_lo}" y="{frame.py_hi}" width="{frame.px_hi - frame.px_lo}" '
        f'height="{frame.py_lo - frame.py_hi}" fill="none" stroke="#333" stroke-width="1"/>'
    )
    for tick in nice_ticks(frame.x_lo, frame.x_hi):
        if not frame.x_lo <= tick <= frame.x_hi:
            continue
        px = frame.x(tick)
        parts.append(f'<line x1="{_fmt(px)}" y1="{frame.py_lo}" x2="{_fmt(px)}" y2="{frame.py_lo + 5}" stroke="#333"/>')
        parts.append(
            f'<text x="{_fmt(px)}" y="{frame.py_lo + 18}" font-size="11" text-anchor="middle" '
            f'fill="#333">{_fmt_tick(tick)}</text>'
        )
    for tick in nice_ticks(frame.y_lo, frame.y_hi):
        if not frame.y_lo <= tick <= frame.y_hi:
            continue
        py = frame.y(tick)
        parts.append(f'<line x1="{frame.px_lo - 5}" y1="{_fmt(py)}" x2="{frame.px_lo}" y2="{_fmt(py)}" stroke="#333"/>')
        parts.append(
            f'<text x="{frame.px_lo - 8}" y="{_fmt(py + 4)}" font-size="11" text-anchor="end" '
            f'fill="#333">{_fmt_tick(tick)}</text>'
        )
    mid_x = (frame.px_lo + frame.px_hi) / 2
    if x_label:
        parts.append(
            f'<text x="{_fmt(mid_x)}" y="{_HEIGHT - 14}" font-size="13" text-anchor="middle" fill="#000">{x_label}</text>'
        )
    if y_label:
        mid_y = (frame.py_lo + frame.py_hi) / 2
        parts.append(
            f'<text x="20" y="{_fmt(mid_y)}" font-size="13" text-anchor="middle" fill="#000" '
            f'transform="rotate(-90 20 {_fmt(mid_y)})">{y_label}</text>'
        )
    if title:
        parts.append(
            f'<text x="{_fmt(mid_x)}" y="24" font-size="14" text-anchor="middle" fill="#000">{title}</text>'
        )


def _svg(parts: list[str], x_range: tuple[float, float], y_range: tuple[float, float]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}" data-x-range="{x_range[0]!r},{x_range[1]!r}" '
        f'data-y-range="{y_range[0]!r},{y_range[1]!r}">'
    )
    body = "".join(parts)
    return f'{head}<rect width="{_WIDTH}" height="{_HEIGHT}" fill="#ffffff"/>{body}</svg>\n'


def line_chart(
    x: np.ndarray,
    series: list[tuple[str, np.ndarray]],
    x_label: str = "",
    y_label: str = "",
    title: str = "",
) -> str:
    """Polyline chart of one or more series over a shared x axis."""
    x = np.asarray(x, dtype=float)
    if x.size < 2 or not series:
        raise ValueError("line chart needs at least two x samples and one series")
    y_all = np.concatenate([np.asarray(y, dtype=float) for _, y in series])
    y_lo = float(y_all.min())
    y_hi = float(y_all.max())
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    frame = _Frame(float(x.min()), float(x.max()), y_lo, y_hi)

    parts: list[str] = []
    body: list[str] = []
    for idx, (label, y) in enumerate(series):
        y = np.asarray(y, dtype=float)
        if y.shape != x.shape:
            raise ValueError(f"series {label!r} length does not match x")
        points = " ".join(f"{_fmt(frame.x(a))},{_fmt(frame.y(b))}" for a, b in zip(x, y))
        color = _PALETTE[idx % len(_PALETTE)]
        body.append(f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.2"/>')
        if len(series) > 1 and label:
            ly = _MARGIN_T + 14 + 14 * idx
            body.append(f'<line x1="{frame.px_hi - 110}" y1="{ly - 4}" x2="{frame.px_hi - 90}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
            body.append(f'<text x="{frame.px_hi - 84}" y="{ly}" font-size="11" fill="#333">{label}</text>')
    _axes(parts, frame, x_label, y_label, title)
    parts.extend(body)
    return _svg(parts, (frame.x_lo, frame.x_hi), (y_lo, y_hi))


def _pool_max(values: np.ndarray, max_rows: int, max_cols: int) -> np.ndarray:
    """Max-pool a 2-d grid down to the cell budget; peaks survive binning."""
    rows, cols = values.shape
    row_bin = max(1, math.ceil(rows / max_rows))
    col_bin = max(1, math.ceil(cols / max_cols))
    if row_bin == 1 and col_bin == 1:
        return values
    pad_r = (-rows) % row_bin
    pad_c = (-cols) % col_bin
    padded = np.pad(values, ((0, pad_r), (0, pad_c)), mode="edge")
    shaped = padded.reshape(padded.shape[0] // row_bin, row_bin, padded.shape[1] // col_bin, col_bin)
    return shaped.max(axis=(1, 3))


def heatmap(
    x: np.ndarray,
    y: np.ndarray,
    values: np.ndarray,
    x_label: str = "",
    y_label: str = "",
    title: str = "",
) -> str:
    """Cell heatmap of values[row, col] over (y[row], x[col]), y ascending upward."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    values = np.asarray(values, dtype=float)
    if values.shape != (y.size, x.size) or x.size < 1 or y.size < 1:
        raise ValueError("values must have shape (len(y), len(x))")

    cells = _pool_max(values, _MAX_HEAT_ROWS, _MAX_HEAT_COLS)
    n_rows, n_cols = cells.shape
    top = float(cells.max())
    scale = top if top > 0.0 else 1.0

    frame = _Frame(float(x.min()), float(x.max()), float(y.min()), float(y.max()))
    plot_w = frame.px_hi - frame.px_lo
    plot_h = frame.py_lo - frame.py_hi
    cell_w = plot_w / n_cols
    cell_h = plot_h / n_rows

    parts: list[str] = []
    body: list[str] = []
    for r in range(n_rows):
        # Row 0 is the lowest y value; draw it at the bottom.
        py = frame.py_lo - (r + 1) * cell_h
        for c in range(n_cols):
            color = _color(cells[r, c] / scale)
            px = frame.px_lo + c * cell_w
            body.append(
                f'<rect x="{_fmt(px)}" y="{_fmt(py)}" width="{_fmt(cell_w + 0.5)}" '
                f'height="{_fmt(cell_h + 0.5)}" fill="{color}"/>'
            )
    _axes(parts, frame, x_label, y_label, title)
    # Cells first so the axis frame stays visible on top.
    return _svg(body + parts, (frame.x_lo, frame.x_hi), (frame.y_lo, frame.y_hi))
