"""CSV and SVG output of sampled values."""

from __future__ import annotations

import io
import sys
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import EmitError

WIDTH, HEIGHT = 800, 600
MARGIN = 50


def _point(p) -> tuple[float, ...]:
    return tuple(float(c) for c in np.atleast_1d(p))


def fmt(x: float) -> str:
    return f"{x:.15g}"


def to_csv(samples: Sequence) -> str:
    """One ``coord,...,value`` row per sample, 15 significant digits."""
    buf = io.StringIO()
    for point, value in samples:
        cells = [fmt(c) for c in _point(point)]
        cells.append(fmt(float(value)))
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def _scale(values, lo, hi, out_lo, out_hi):
    span = hi - lo if hi > lo else 1.0
    return out_lo + (np.asarray(values) - lo) / span * (out_hi - out_lo)


def _color(frac: float) -> str:
    # blue -> white -> red
    frac = min(max(frac, 0.0), 1.0)
    if frac < 0.5:
        k = frac / 0.5
        rgb = (int(255 * k), int(255 * k), 255)
    else:
        k = (frac - 0.5) / 0.5
        rgb = (255, int(255 * (1 - k)), int(255 * (1 - k)))
    return "#%02x%02x%02x" % rgb


def to_svg(samples: Sequence, nodes: Iterable | None = None, title: str = "") -> str:
    """Polyline for 1-D samples, heatmap of cells for 2-D samples."""
    pts = np.array([_point(p) for p, _ in samples])
    vals = np.array([float(v) for _, v in samples])
    node_list = [(_point(p), float(v)) for p, v in (nodes or [])]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'width="{WIDTH}" height="{HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{MARGIN}" y="30" font-size="16">{title}</text>')
    if pts.shape[1] == 1:
        allx = np.concatenate([pts[:, 0], [p[0] for p, _ in node_list]])
        ally = np.concatenate([vals, [v for _, v in node_list]])
        x0, x1, y0, y1 = allx.min(), allx.max(), ally.min(), ally.max()
        sx = _scale(pts[:, 0], x0, x1, MARGIN, WIDTH - MARGIN)
        sy = _scale(vals, y0, y1, HEIGHT - MARGIN, MARGIN)
        coords = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(sx, sy))
        out.append(f'<polyline points="{coords}" fill="none" stroke="blue" stroke-width="2"/>')
        for p, v in node_list:
            cx = float(_scale(p[0], x0, x1, MARGIN, WIDTH - MARGIN))
            cy = float(_scale(v, y0, y1, HEIGHT - MARGIN, MARGIN))
            out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="4" fill="red"/>')
    elif pts.shape[1] == 2:
        xs = np.unique(pts[:, 0])
        ys = np.unique(pts[:, 1])
        cw = (WIDTH - 2 * MARGIN) / len(xs)
        ch = (HEIGHT - 2 * MARGIN) / len(ys)
        v0, v1 = vals.min(), vals.max()
        xi = {x: k for k, x in enumerate(xs)}
        yi = {y: k for k, y in enumerate(ys)}
        for (px, py), v in zip(pts, vals):
            frac = (v - v0) / (v1 - v0) if v1 > v0 else 0.5
            x = MARGIN + xi[px] * cw
            y = HEIGHT - MARGIN - (yi[py] + 1) * ch
            out.append(
                f'<rect x="{x:.2f}" y="{y:.2f}" width="{cw:.2f}" height="{ch:.2f}" '
                f'fill="{_color(frac)}"/>'
            )
        for p, _ in node_list:
            cx = float(_scale(p[0], xs[0], xs[-1], MARGIN + cw / 2, WIDTH - MARGIN - cw / 2))
            cy = float(_scale(p[1], ys[0], ys[-1], HEIGHT - MARGIN - ch / 2, MARGIN + ch / 2))
            out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="3" fill="black"/>')
    else:
        raise EmitError("svg output supports 1-D or 2-D sample points only")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_samples(samples, format: str = "csv", path=None, nodes=None, title: str = "") -> None:
    """Write samples as csv or svg to ``path`` (stdout when ``None`` or ``"-"``)."""
    samples = list(samples)
    if not samples:
        raise EmitError("no samples to emit")
    if format == "csv":
        text = to_csv(samples)
    elif format == "svg":
        text = to_svg(samples, nodes=nodes, title=title)
    else:
        raise EmitError(f"unknown format {format!r}")
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise EmitError(f"cannot write {path}: {exc}") from exc
