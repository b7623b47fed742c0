"""Minimal static SVG charts; no interactivity, no dependencies."""

from __future__ import annotations

WIDTH = 880
HEIGHT = 420
MARGIN = 60

_PALETTE = [
    "#4477aa", "#ee6677", "#228833", "#ccbb44",
    "#66ccee", "#aa3377", "#bbbbbb", "#222222",
]


def _header(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2}" y="24" text-anchor="middle" font-family="sans-serif" '
        f'font-size="16">{title}</text>',
    ]


def bar_chart(values: list[tuple[int, float]], title: str) -> str:
    """Vertical bars over integer x labels; negative values hang below the zero line."""
    if not values:
        raise ValueError("nothing to chart")
    xs = [x for x, _ in values]
    ys = [y for _, y in values]
    lo, hi = min(min(ys), 0.0), max(max(ys), 0.0)
    span = (hi - lo) or 1.0
    plot_w = WIDTH - 2 * MARGIN
    plot_h = HEIGHT - 2 * MARGIN
    bar_w = plot_w / len(values)

    def ypix(v: float) -> float:
        return MARGIN + (hi - v) / span * plot_h

    parts = _header(title)
    zero = ypix(0.0)
    parts.append(
        f'<line x1="{MARGIN}" y1="{zero:.1f}" x2="{WIDTH - MARGIN}" y2="{zero:.1f}" '
        f'stroke="#888" stroke-width="1"/>'
    )
    for i, (x, v) in enumerate(values):
        left = MARGIN + i * bar_w
        top = min(ypix(v), zero)
        h = abs(ypix(v) - zero)
        color = _PALETTE[0] if v >= 0 else _PALETTE[1]
        parts.append(
            f'<rect x="{left + 1:.1f}" y="{top:.1f}" width="{bar_w - 2:.1f}" '
            f'height="{h:.1f}" fill="{color}"/>'
        )
        if len(values) <= 40 or i % max(1, len(values) // 20) == 0:
            parts.append(
                f'<text x="{left + bar_w / 2:.1f}" y="{HEIGHT - MARGIN + 16}" '
                f'text-anchor="middle" font-family="sans-serif" font-size="9">{x}</text>'
            )
    for v in (lo, hi):
        parts.append(
            f'<text x="{MARGIN - 6}" y="{ypix(v) + 3:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{v:.3g}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def line_chart(series: list[tuple[str, list[tuple[int, float]]]], title: str) -> str:
    """One polyline per named series over a shared integer x axis."""
    if not series or not series[0][1]:
        raise ValueError("nothing to chart")
    all_x = sorted({x for _, pts in series for x, _ in pts})
    all_y = [y for _, pts in series for _, y in pts]
    lo, hi = min(min(all_y), 0.0), max(all_y)
    span = (hi - lo) or 1.0
    x_lo, x_hi = all_x[0], all_x[-1]
    x_span = (x_hi - x_lo) or 1
    plot_w = WIDTH - 2 * MARGIN
    plot_h = HEIGHT - 2 * MARGIN

    def xpix(x: int) -> float:
        return MARGIN + (x - x_lo) / x_span * plot_w

    def ypix(v: float) -> float:
        return MARGIN + (hi - v) / span * plot_h

    parts = _header(title)
    parts.append(
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#888"/>'
    )
    for i, (name, pts) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        coords = " ".join(f"{xpix(x):.1f},{ypix(y):.1f}" for x, y in sorted(pts))
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{WIDTH - MARGIN + 4}" y="{MARGIN + 14 * i + 10}" '
            f'font-family="sans-serif" font-size="10" fill="{color}">{name}</text>'
        )
    for x in (x_lo, x_hi):
        parts.append(
            f'<text x="{xpix(x):.1f}" y="{HEIGHT - MARGIN + 16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{x}</text>'
        )
    for v in (lo, hi):
        parts.append(
            f'<text x="{MARGIN - 6}" y="{ypix(v) + 3:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{v:.3g}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
