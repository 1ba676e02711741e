"""Minimal self-contained SVG line plots.

The harness renders its own vector graphics (simple polyline plots with
axes, ticks and a text legend) so figure reproduction needs no plotting
stack. Every file starts with an XML comment carrying the run header.
"""

from __future__ import annotations

import math

WIDTH, HEIGHT = 720, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 160, 40, 55

PALETTE = ("#4053d3", "#ddb310", "#b51d14", "#00beff", "#fb49b0", "#00b25d", "#cacaca")
DASHES = ("", "6,3", "2,3", "8,3,2,3")


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    span = hi - lo
    step = 10.0 ** math.floor(math.log10(span / count))
    for mult in (1, 2, 5, 10):
        if span / (step * mult) <= count:
            step *= mult
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-12 * span:
        ticks.append(round(t, 12))
        t += step
    return ticks


def _fmt(v: float) -> str:
    return f"{v:g}"


def line_plot(path, series, *, title: str, xlabel: str, ylabel: str,
              logx: bool = False, header_lines=()) -> None:
    """Write an SVG polyline chart.

    ``series`` is an iterable of (label, xs, ys) triples; styles cycle
    through a small palette and dash set in order.
    """
    series = [(label, list(xs), list(ys)) for label, xs, ys in series]
    pts = [(x, y) for _, xs, ys in series for x, y in zip(xs, ys)]
    if not pts:
        raise ValueError("nothing to plot")

    def tx(x):
        return math.log10(x) if logx else x

    xs_all = [tx(x) for x, _ in pts]
    ys_all = [y for _, y in pts]
    x_lo, x_hi = min(xs_all), max(xs_all)
    y_lo, y_hi = min(ys_all), max(ys_all)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def px(x):
        return MARGIN_L + (tx(x) - x_lo) / (x_hi - x_lo) * plot_w

    def py(y):
        return MARGIN_T + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}">']
    if header_lines:
        safe = "\n".join(ln.replace("--", "- -") for ln in header_lines)
        out.append(f"<!--\n{safe}\n-->")
    out.append(f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>')
    out.append(
        f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>'
    )

    ax_y = MARGIN_T + plot_h
    out.append(f'<line x1="{MARGIN_L}" y1="{ax_y}" x2="{MARGIN_L + plot_w}" y2="{ax_y}" stroke="black"/>')
    out.append(f'<line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" y2="{ax_y}" stroke="black"/>')

    x_tick_vals = sorted({x for _, xs, _ in series for x in xs})
    if len(x_tick_vals) > 8:
        x_tick_vals = _ticks(x_lo, x_hi) if not logx else x_tick_vals[:: len(x_tick_vals) // 8 + 1]
    for xv in x_tick_vals:
        xp = px(xv)
        out.append(f'<line x1="{xp:.1f}" y1="{ax_y}" x2="{xp:.1f}" y2="{ax_y + 5}" stroke="black"/>')
        out.append(
            f'<text x="{xp:.1f}" y="{ax_y + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_fmt(xv)}</text>'
        )
    for yv in _ticks(y_lo, y_hi):
        yp = py(yv)
        out.append(f'<line x1="{MARGIN_L - 5}" y1="{yp:.1f}" x2="{MARGIN_L}" y2="{yp:.1f}" stroke="black"/>')
        out.append(
            f'<text x="{MARGIN_L - 8}" y="{yp + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{_fmt(yv)}</text>'
        )
    out.append(
        f'<text x="{MARGIN_L + plot_w / 2:.1f}" y="{HEIGHT - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{xlabel}</text>'
    )
    out.append(
        f'<text x="18" y="{MARGIN_T + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {MARGIN_T + plot_h / 2:.1f})">{ylabel}</text>'
    )

    for i, (label, xs, ys) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        dash = DASHES[(i // len(PALETTE)) % len(DASHES)]
        attr = f' stroke-dasharray="{dash}"' if dash else ""
        coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.8"{attr}/>')
        for x, y in zip(xs, ys):
            out.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="2.6" fill="{color}"/>')
        ly = MARGIN_T + 16 * (i + 1)
        lx = MARGIN_L + plot_w + 12
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" stroke="{color}" stroke-width="2"{attr}/>')
        out.append(
            f'<text x="{lx + 27}" y="{ly}" font-family="sans-serif" font-size="11">{label}</text>'
        )

    out.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(out) + "\n")
