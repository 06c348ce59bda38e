"""Minimal deterministic SVG 1.1 line charts."""
from __future__ import annotations

import math
from pathlib import Path
from xml.sax.saxutils import escape

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")
_W, _H = 640, 420
_LEFT, _RIGHT, _TOP, _BOTTOM = 70, 150, 40, 55


def _n(x: float) -> str:
    return f"{x:.2f}"


def _ticks(lo: float, hi: float, n: int = 6) -> list[float]:
    if hi <= lo:
        return [lo]
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


def line_chart(path, series: dict[str, tuple[list[float], list[float]]], *,
               title: str, xlabel: str, ylabel: str, logy: bool = False) -> Path:
    """Write a chart with one polyline per entry of ``series`` (name -> (x, y)).

    Non-finite points, and non-positive ones on a log axis, are dropped.
    """
    def ok(y):
        return math.isfinite(y) and (y > 0 or not logy)

    pts = {name: [(float(x), float(y)) for x, y in zip(xs, ys) if math.isfinite(x) and ok(y)]
           for name, (xs, ys) in series.items()}
    allp = [p for v in pts.values() for p in v]
    if allp:
        xmin, xmax = min(p[0] for p in allp), max(p[0] for p in allp)
        ys = [math.log10(p[1]) if logy else p[1] for p in allp]
        ymin, ymax = min(ys), max(ys)
    else:
        xmin, xmax, ymin, ymax = 0.0, 1.0, 0.0, 1.0
    if logy:
        ymin, ymax = math.floor(ymin), math.ceil(ymax)
    if xmax == xmin:
        xmax = xmin + 1
    if ymax == ymin:
        ymax = ymin + 1

    pw, ph = _W - _LEFT - _RIGHT, _H - _TOP - _BOTTOM

    def sx(x):
        return _LEFT + (x - xmin) / (xmax - xmin) * pw

    def sy(y):
        v = math.log10(y) if logy else y
        return _TOP + (1 - (v - ymin) / (ymax - ymin)) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<rect x="{_LEFT}" y="{_TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for x in _ticks(xmin, xmax):
        out.append(f'<line x1="{_n(sx(x))}" y1="{_TOP + ph}" x2="{_n(sx(x))}" y2="{_TOP + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{_n(sx(x))}" y="{_TOP + ph + 18}" text-anchor="middle">{x:.3g}</text>')
    yt = [10.0 ** e for e in range(int(ymin), int(ymax) + 1)] if logy else _ticks(ymin, ymax)
    for y in yt:
        lab = f"1e{int(round(math.log10(y)))}" if logy else f"{y:.3g}"
        out.append(f'<line x1="{_LEFT - 5}" y1="{_n(sy(y))}" x2="{_LEFT}" y2="{_n(sy(y))}" stroke="black"/>')
        out.append(f'<text x="{_LEFT - 8}" y="{_n(sy(y) + 4)}" text-anchor="end">{lab}</text>')
    out.append(f'<text x="{_LEFT + pw / 2}" y="{_H - 15}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="18" y="{_TOP + ph / 2}" text-anchor="middle" '
               f'transform="rotate(-90 18 {_TOP + ph / 2})">{escape(ylabel)}</text>')

    for i, (name, p) in enumerate(pts.items()):
        color = PALETTE[i % len(PALETTE)]
        if p:
            coords = " ".join(f"{_n(sx(x))},{_n(sy(y))}" for x, y in p)
            out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
            for x, y in p:
                out.append(f'<circle cx="{_n(sx(x))}" cy="{_n(sy(y))}" r="2.5" fill="{color}"/>')
        ly = _TOP + 14 + 18 * i
        out.append(f'<line x1="{_W - _RIGHT + 12}" y1="{ly}" x2="{_W - _RIGHT + 32}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{_W - _RIGHT + 38}" y="{ly + 4}">{escape(name)}</text>')
    out.append("</svg>")

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(out) + "\n")
    return path
