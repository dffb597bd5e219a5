"""Minimal static SVG charts rendered from result CSV files."""

from __future__ import annotations

import csv
import math
from pathlib import Path
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 420
MARGIN = dict(left=64, right=150, top=24, bottom=52)
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")


def _nice_ticks(lo: float, hi: float, n: int = 6) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((s * mag for s in (1, 2, 5, 10) if s * mag >= raw), default=raw)
    first = math.floor(lo / step + 1e-9)
    last = math.ceil(hi / step - 1e-9)
    return [round(i * step, 10) for i in range(first, last + 1)]


class _Frame:
    def __init__(self, xlo, xhi, ylo, yhi):
        self.xlo, self.xhi, self.ylo, self.yhi = xlo, xhi, ylo, yhi
        self.x0 = MARGIN["left"]
        self.x1 = WIDTH - MARGIN["right"]
        self.y0 = HEIGHT - MARGIN["bottom"]
        self.y1 = MARGIN["top"]

    def px(self, x):
        return self.x0 + (x - self.xlo) / (self.xhi - self.xlo) * (self.x1 - self.x0)

    def py(self, y):
        return self.y0 - (y - self.ylo) / (self.yhi - self.ylo) * (self.y0 - self.y1)


def _axes(fr: _Frame, yticks, xlabel, ylabel) -> list[str]:
    out = [
        f'<rect x="{fr.x0}" y="{fr.y1}" width="{fr.x1 - fr.x0}" height="{fr.y0 - fr.y1}" '
        'fill="none" stroke="#000"/>'
    ]
    for t in yticks:
        y = fr.py(t)
        out.append(f'<line x1="{fr.x0}" y1="{y:.2f}" x2="{fr.x1}" y2="{y:.2f}" stroke="#ddd"/>')
        out.append(f'<text x="{fr.x0 - 6}" y="{y + 4:.2f}" text-anchor="end">{t:g}</text>')
    cx = 0.5 * (fr.x0 + fr.x1)
    cy = 0.5 * (fr.y0 + fr.y1)
    out.append(f'<text x="{cx:.1f}" y="{HEIGHT - 12}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="16" y="{cy:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 16 {cy:.1f})">{escape(ylabel)}</text>')
    return out


def _legend(labels) -> list[str]:
    out = []
    x = WIDTH - MARGIN["right"] + 12
    for i, lab in enumerate(labels):
        y = MARGIN["top"] + 8 + 18 * i
        out.append(f'<rect x="{x}" y="{y - 9}" width="12" height="10" fill="{PALETTE[i % len(PALETTE)]}"/>')
        out.append(f'<text x="{x + 18}" y="{y}">{escape(lab)}</text>')
    return out


def _document(body: list[str]) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">')
    return "\n".join([head, *body, "</svg>"]) + "\n"


def bar_chart(categories, series: dict, xlabel: str, ylabel: str) -> str:
    """Grouped bar chart; ``series`` maps label -> one value per category."""
    values = [v for vals in series.values() for v in vals]
    ylo = min(0.0, min(values))
    yticks = _nice_ticks(ylo, max(values))
    fr = _Frame(0, len(categories), yticks[0], yticks[-1])
    body = _axes(fr, yticks, xlabel, ylabel)
    ns = len(series)
    slot = (fr.x1 - fr.x0) / len(categories)
    bw = 0.8 * slot / ns
    for j, (label, vals) in enumerate(series.items()):
        for i, v in enumerate(vals):
            x = fr.x0 + i * slot + 0.1 * slot + j * bw
            ytop, ybase = fr.py(max(v, 0.0)), fr.py(min(v, 0.0))
            body.append(f'<rect x="{x:.2f}" y="{ytop:.2f}" width="{bw:.2f}" '
                        f'height="{ybase - ytop:.2f}" fill="{PALETTE[j % len(PALETTE)]}"/>')
    for i, c in enumerate(categories):
        x = fr.x0 + (i + 0.5) * slot
        body.append(f'<text x="{x:.2f}" y="{fr.y0 + 16}" text-anchor="middle">{escape(str(c))}</text>')
    body += _legend(list(series))
    return _document(body)


def line_chart(x, series: dict, xlabel: str, ylabel: str) -> str:
    """Line chart with markers; ``series`` maps label -> y values aligned with ``x``."""
    values = [v for vals in series.values() for v in vals]
    yticks = _nice_ticks(min(values), max(values))
    xticks = _nice_ticks(min(x), max(x))
    fr = _Frame(xticks[0], xticks[-1], yticks[0], yticks[-1])
    body = _axes(fr, yticks, xlabel, ylabel)
    for t in xticks:
        body.append(f'<text x="{fr.px(t):.2f}" y="{fr.y0 + 16}" text-anchor="middle">{t:g}</text>')
    for j, (label, vals) in enumerate(series.items()):
        color = PALETTE[j % len(PALETTE)]
        pts = " ".join(f"{fr.px(a):.2f},{fr.py(b):.2f}" for a, b in zip(x, vals))
        body.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        for a, b in zip(x, vals):
            body.append(f'<circle cx="{fr.px(a):.2f}" cy="{fr.py(b):.2f}" r="2.5" fill="{color}"/>')
    body += _legend(list(series))
    return _document(body)


def plot_csv(csv_path, svg_path, kind: str) -> None:
    """Render the ``cs`` column of a result CSV as a bar or line chart.

    ``bar`` groups by N with one series per beta_E^2; ``line`` puts
    beta_B^2 on the x axis with one series per (N, beta_E^2, method).
    """
    with open(csv_path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise ValueError(f"{csv_path} has no data rows")
    ylabel = "Ergodic secrecy capacity (bits/s/Hz)"
    if kind == "bar":
        method = rows[0]["method"]
        rows = [r for r in rows if r["method"] == method]
        Ns = list(dict.fromkeys(int(r["N"]) for r in rows))
        series: dict = {}
        for r in rows:
            series.setdefault(f"beta_E^2 = {r['beta_E_sq_dB']} dB", {})[int(r["N"])] = float(r["cs"])
        series = {k: [v[n] for n in Ns] for k, v in series.items()}
        svg = bar_chart(Ns, series, "N", ylabel)
    elif kind == "line":
        xs = sorted({float(r["beta_B_sq_dB"]) for r in rows})
        series = {}
        for r in rows:
            label = f"N={r['N']}, beta_E^2={r['beta_E_sq_dB']} dB"
            if r["method"] != "closed_form":
                label += f" ({r['method']})"
            series.setdefault(label, {})[float(r["beta_B_sq_dB"])] = float(r["cs"])
        series = {k: [v[x] for x in xs] for k, v in series.items()}
        svg = line_chart(xs, series, "beta_B^2 (dB)", ylabel)
    else:
        raise ValueError(f"unknown plot kind {kind!r}")
    Path(svg_path).write_text(svg, encoding="utf-8", newline="\n")
