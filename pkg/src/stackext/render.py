"""Arc-diagram rendering for layouts.

Vertices sit on a horizontal spine in order; every edge is a
semicircular arc whose colour names its page.  Two arrangements are
supported: alternating (odd pages bow above the spine, even pages
below) and stacked (one band per page, repeating the spine).  Output is
a plain SVG string with no external references, byte-identical for
identical inputs.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .model import Layout, edge

PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#e377c2",
    "#17becf",
    "#bcbd22",
    "#7f7f7f",
)

STEP = 46
MARGIN = 34
LABEL_GAP = 16
ACCENT = "#111111"


def page_color(page: int) -> str:
    return PALETTE[(page - 1) % len(PALETTE)]


def _esc(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )


def _arc(x1: float, x2: float, y: float, upward: bool) -> str:
    r = (x2 - x1) / 2.0
    sweep = 1 if upward else 0
    return f"M {x1:.1f} {y:.1f} A {r:.1f} {r:.1f} 0 0 {sweep} {x2:.1f} {y:.1f}"


def _sorted_edges(layout: Layout) -> list[tuple[str, str, int]]:
    items = []
    for e, p in layout.page_of.items():
        a, b = sorted((layout.rank_of(e[0]), layout.rank_of(e[1])))
        items.append((p, a, b))
    items.sort()
    order = list(layout.spine)
    return [(order[a - 1], order[b - 1], p) for p, a, b in items]


def render_arc_diagram(
    layout: Layout,
    new_vertices: Iterable[str] = (),
    new_edges: Iterable[tuple[str, str]] = (),
    stacked: bool = False,
) -> str:
    """Render ``layout`` to SVG markup.

    ``new_vertices`` and ``new_edges`` are drawn emphasised (thick
    strokes, filled dots) so an extension stands out from the fixed
    part.  Unknown names in either set are ignored.
    """
    fresh_v = {v for v in new_vertices if v in layout.spine}
    fresh_e = {edge(u, v) for u, v in new_edges}
    n = len(layout.spine)
    xs = {v: MARGIN + (i - 1) * STEP for i, v in enumerate(layout.spine, start=1)}
    width = 2 * MARGIN + STEP * max(n - 1, 0)
    arcs = _sorted_edges(layout)

    if stacked:
        return _render_stacked(layout, arcs, xs, width, fresh_v, fresh_e)

    up_r = [0.0]
    down_r = [0.0]
    for u, v, p in arcs:
        r = abs(xs[u] - xs[v]) / 2.0
        (up_r if p % 2 == 1 else down_r).append(r)
    top = max(up_r) + 18
    bottom = max(down_r) + LABEL_GAP + 18
    height = top + bottom
    base = top
    body = []
    for u, v, p in arcs:
        x1, x2 = sorted((xs[u], xs[v]))
        d = _arc(x1, x2, base, upward=p % 2 == 1)
        wd = 2.8 if edge(u, v) in fresh_e else 1.5
        body.append(
            f'<path d="{d}" fill="none" stroke="{page_color(p)}" '
            f'stroke-width="{wd}"/>'
        )
    body.extend(_spine_row(layout.spine, xs, base, fresh_v, width))
    return _document(width, height, body)


def _render_stacked(layout, arcs, xs, width, fresh_v, fresh_e):
    bands = []
    y = 0.0
    for p in range(1, layout.ell + 1):
        rows = [(u, v) for u, v, q in arcs if q == p]
        radius = max([abs(xs[u] - xs[v]) / 2.0 for u, v in rows], default=0.0)
        top = y + radius + 24
        body = [
            f'<text x="4" y="{y + 14:.1f}" font-size="11" '
            f'fill="{page_color(p)}" font-family="sans-serif">page {p}</text>'
        ]
        for u, v in rows:
            x1, x2 = sorted((xs[u], xs[v]))
            wd = 2.8 if edge(u, v) in fresh_e else 1.5
            body.append(
                f'<path d="{_arc(x1, x2, top, upward=True)}" fill="none" '
                f'stroke="{page_color(p)}" stroke-width="{wd}"/>'
            )
        body.extend(_spine_row(layout.spine, xs, top, fresh_v, width))
        bands.extend(body)
        y = top + LABEL_GAP + 22
    return _document(width, y, bands)


def _spine_row(spine, xs, base, fresh_v, width):
    out = [
        f'<line x1="0" y1="{base:.1f}" x2="{width}" y2="{base:.1f}" '
        f'stroke="#999999" stroke-width="0.8"/>'
    ]
    for v in spine:
        x = xs[v]
        if v in fresh_v:
            out.append(
                f'<circle cx="{x}" cy="{base:.1f}" r="4.5" fill="{ACCENT}"/>'
            )
        else:
            out.append(
                f'<circle cx="{x}" cy="{base:.1f}" r="3" fill="#ffffff" '
                f'stroke="#333333" stroke-width="1.2"/>'
            )
        style = ' font-weight="bold"' if v in fresh_v else ""
        out.append(
            f'<text x="{x}" y="{base + LABEL_GAP:.1f}" font-size="9" '
            f'text-anchor="middle" font-family="sans-serif"{style}>'
            f"{_esc(v)}</text>"
        )
    return out


def _document(width: float, height: float, body: Sequence[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"
