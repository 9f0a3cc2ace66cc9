"""Deterministic CSV and static-SVG emission.

CSV format: a comment line carrying the library version and run metadata,
one header row naming the columns, 17-significant-digit numbers, '.' decimal
separator, ',' field separator, '\n' line endings.  Identical inputs produce
byte-identical files.
"""

import os

import numpy as np

from . import __version__


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (complex, np.complexfloating)):
        return f"{value.real:.17g}{value.imag:+.17g}i"
    return f"{float(value):.17g}"


def write_csv(path, columns, rows, meta=None) -> str:
    meta = dict(meta or {})
    meta.setdefault("version", __version__)
    pairs = " ".join(f"{k}={v}" for k, v in sorted(meta.items()))
    lines = [f"# hbspace {pairs}", ",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def _svg_header(width, height, title):
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.0f}" y="18" text-anchor="middle" '
        f'font-family="monospace" font-size="13">{title}</text>',
    ]


def line_plot(path, xs, series, title="", xlabel="", ylabel="",
              width=640, height=420) -> str:
    """Static polyline plot; ``series`` maps labels to y-arrays."""
    xs = np.asarray(xs, dtype=float)
    margin = 56
    plot_w, plot_h = width - 2 * margin, height - 2 * margin
    ys_all = np.concatenate([np.asarray(v, dtype=float) for v in series.values()])
    x_lo, x_hi = float(xs.min()), float(xs.max())
    y_lo, y_hi = float(ys_all.min()), float(ys_all.max())
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    def sx(x):
        return margin + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y):
        return height - margin - (y - y_lo) / (y_hi - y_lo) * plot_h

    parts = _svg_header(width, height, title)
    parts.append(f'<rect x="{margin}" y="{margin}" width="{plot_w}" height="{plot_h}" '
                 'fill="none" stroke="black"/>')
    for frac in (0.0, 0.5, 1.0):
        xv = x_lo + frac * (x_hi - x_lo)
        yv = y_lo + frac * (y_hi - y_lo)
        parts.append(f'<text x="{sx(xv):.1f}" y="{height - margin + 16}" '
                     f'text-anchor="middle" font-family="monospace" font-size="10">'
                     f'{xv:.6g}</text>')
        parts.append(f'<text x="{margin - 6}" y="{sy(yv):.1f}" text-anchor="end" '
                     f'font-family="monospace" font-size="10">{yv:.6g}</text>')
    parts.append(f'<text x="{width / 2:.0f}" y="{height - 12}" text-anchor="middle" '
                 f'font-family="monospace" font-size="11">{xlabel}</text>')
    parts.append(f'<text x="16" y="{height / 2:.0f}" text-anchor="middle" '
                 f'font-family="monospace" font-size="11" '
                 f'transform="rotate(-90 16 {height / 2:.0f})">{ylabel}</text>')
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"]
    for i, (label, ys) in enumerate(series.items()):
        ys = np.asarray(ys, dtype=float)
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
        color = colors[i % len(colors)]
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     'stroke-width="1.5"/>')
        parts.append(f'<text x="{margin + 8}" y="{margin + 16 + 14 * i}" '
                     f'font-family="monospace" font-size="11" fill="{color}">{label}</text>')
    parts.append("</svg>")
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")
    return path


def heatmap(path, matrix, title="", width=520, height=520) -> str:
    """Static heatmap of a real matrix, linearly mapped to a blue-red ramp."""
    m = np.asarray(matrix, dtype=float)
    rows, cols = m.shape
    margin = 48
    cell_w = (width - 2 * margin) / cols
    cell_h = (height - 2 * margin) / rows
    lo, hi = float(m.min()), float(m.max())
    span = hi - lo if hi > lo else 1.0
    parts = _svg_header(width, height, title)
    for i in range(rows):
        for j in range(cols):
            t = (m[i, j] - lo) / span
            r = int(255 * t)
            b = int(255 * (1 - t))
            parts.append(
                f'<rect x="{margin + j * cell_w:.2f}" y="{margin + i * cell_h:.2f}" '
                f'width="{cell_w:.2f}" height="{cell_h:.2f}" '
                f'fill="rgb({r},64,{b})"/>'
            )
    parts.append(f'<text x="{margin}" y="{height - 10}" font-family="monospace" '
                 f'font-size="10">min={lo:.6g} max={hi:.6g}</text>')
    parts.append("</svg>")
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")
    return path
