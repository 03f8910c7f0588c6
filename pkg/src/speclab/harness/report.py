"""CSV and SVG output for report rows."""
from __future__ import annotations

import csv
import io
import math
from xml.sax.saxutils import escape


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def parse_value(text: str):
    if text in ("true", "false"):
        return text == "true"
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def _as_dict(row) -> dict:
    return row.as_dict() if hasattr(row, "as_dict") else dict(row)


def csv_text(rows) -> str:
    rows = [_as_dict(r) for r in rows]
    if not rows:
        raise ValueError("no rows to write")
    header = list(rows[0])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([format_value(r.get(h, "")) for h in header])
    return buf.getvalue()


def emit_csv(rows, path) -> None:
    text = csv_text(rows)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def read_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        return [{k: parse_value(v) for k, v in r.items()} for r in csv.DictReader(fh)]


PALETTE = ("#000000", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22")
WIDTH, HEIGHT = 720, 480
MARGIN = dict(left=80, right=170, top=30, bottom=60)


def plot_series(rows) -> tuple[list, dict]:
    """k values and the series to draw: the mean and every ``*_total`` column."""
    rows = [_as_dict(r) for r in rows]
    if not rows:
        raise ValueError("no rows to plot")
    ks = [float(r["k"]) for r in rows]
    series = {"mean": [float(r["mean_eigenvalue"]) for r in rows]}
    for key in rows[0]:
        if key.endswith("_total"):
            vals = [float(r[key]) for r in rows]
            if all(math.isfinite(v) and v > 0 for v in vals):
                series[key[:-len("_total")]] = vals
    return ks, series


def _log_map(lo, hi, a, b):
    llo, lhi = math.log10(lo), math.log10(hi)
    span = lhi - llo or 1.0
    return lambda v: a + (math.log10(v) - llo) / span * (b - a)


def svg_text(rows, title: str = "eigenvalue means and lower bounds") -> str:
    ks, series = plot_series(rows)
    ys = [v for vals in series.values() for v in vals]
    x0, x1 = MARGIN["left"], WIDTH - MARGIN["right"]
    y0, y1 = HEIGHT - MARGIN["bottom"], MARGIN["top"]
    kmin, kmax = min(ks), max(ks)
    if kmax == kmin:
        kmax = kmin * 10
    fx = _log_map(kmin, kmax, x0, x1)
    fy = _log_map(min(ys), max(ys) if max(ys) > min(ys) else min(ys) * 10, y0, y1)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
           f'viewBox="0 0 {WIDTH} {HEIGHT}">',
           f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
           f'<text x="{(x0 + x1) / 2:.2f}" y="18" text-anchor="middle" font-size="14">{escape(title)}</text>',
           f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>',
           f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>',
           f'<text x="{(x0 + x1) / 2:.2f}" y="{HEIGHT - 15}" text-anchor="middle" font-size="13">k (log scale)</text>',
           f'<text x="20" y="{(y0 + y1) / 2:.2f}" text-anchor="middle" font-size="13" '
           f'transform="rotate(-90 20 {(y0 + y1) / 2:.2f})">value (log scale)</text>']
    for v in (min(ys), max(ys)):
        out.append(f'<text x="{x0 - 6}" y="{fy(v):.2f}" text-anchor="end" font-size="10">{v:.4g}</text>')
    for v in (kmin, max(ks)):
        out.append(f'<text x="{fx(v):.2f}" y="{y0 + 16}" text-anchor="middle" font-size="10">{v:g}</text>')
    for i, (name, vals) in enumerate(series.items()):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{fx(k):.3f},{fy(v):.3f}" for k, v in zip(ks, vals))
        out.append(f'<polyline data-series="{escape(name)}" fill="none" stroke="{color}" '
                   f'stroke-width="1.5" points="{pts}"/>')
        ly = MARGIN["top"] + 18 * i + 10
        out.append(f'<line x1="{x1 + 15}" y1="{ly}" x2="{x1 + 40}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{x1 + 46}" y="{ly + 4}" font-size="12">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_plot(rows, path) -> None:
    text = svg_text(rows)
    with open(path, "w") as fh:
        fh.write(text)
