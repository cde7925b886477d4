"""Deterministic static SVG rendering: bodies, triangulations, atom rows.

One lattice unit maps to 32 px; lattice dots are drawn across each panel's
bounding box.  Output is plain text with no interactivity, byte-identical for
identical inputs.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .geometry import LatticeBody, LatticePoint
from .signed import atom_body

UNIT = 32
PAD = 16
GAP = 24
LABEL_H = 24


def _panel(
    elems: list[str],
    body: LatticeBody,
    cells: Sequence[Sequence[LatticePoint]],
    ox: int,
    oy: int,
) -> tuple[int, int]:
    """Draw one body (plus optional triangulation cells) at pixel offset (ox, oy)."""
    x0, y0, x1, y1 = body.bbox()

    def px(p: LatticePoint) -> tuple[int, int]:
        return ox + PAD + (p.x - x0) * UNIT, oy + PAD + (y1 - p.y) * UNIT

    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            cx, cy = px(LatticePoint(x, y))
            elems.append(f'<circle class="dot" cx="{cx}" cy="{cy}" r="2" fill="#999"/>')
    for cell in cells:
        pts = " ".join("%d,%d" % px(p) for p in cell)
        elems.append(
            f'<polygon class="cell" points="{pts}" fill="#ddd" stroke="#666" stroke-width="1"/>'
        )
    coords = [px(p) for p in body.vertices]
    if body.kind == "point":
        cx, cy = coords[0]
        elems.append(f'<circle class="body" cx="{cx}" cy="{cy}" r="4" fill="#000"/>')
    else:
        d = "M " + " L ".join("%d %d" % c for c in coords)
        if body.kind == "polygon":
            d += " Z"
        elems.append(f'<path class="body" d="{d}" fill="none" stroke="#000" stroke-width="2"/>')
    width = (x1 - x0) * UNIT + 2 * PAD
    height = (y1 - y0) * UNIT + 2 * PAD
    return width, height


def render_bodies(
    panels: Iterable[tuple[str, LatticeBody, Sequence[Sequence[LatticePoint]]]],
    header: str = "",
) -> str:
    """Lay out labelled body panels left to right and wrap them in an <svg>."""
    elems: list[str] = []
    x = 0
    max_h = 0
    for label, body, cells in panels:
        if label:
            elems.append(f'<text class="label" x="{x + PAD}" y="{LABEL_H - 8}" font-size="14">{label}</text>')
        part: list[str] = []
        w, h = _panel(part, body, cells, x, LABEL_H)
        elems.append(f'<g class="atom">' if label.startswith(("+", "-")) else "<g>")
        elems.extend(part)
        elems.append("</g>")
        x += w + GAP
        max_h = max(max_h, h)
    width = max(x - GAP, 1)
    height = LABEL_H + max_h
    head = f'<text class="header" x="4" y="14" font-size="14">{header}</text>' if header else ""
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height + LABEL_H}" '
        f'width="{width}" height="{height + LABEL_H}">\n'
        + (head + "\n" if head else "")
        + "\n".join(elems)
        + "\n</svg>\n"
    )


def render_report(report) -> str:
    """Input body with triangulation overlay, then the signed atom row."""
    from .partition import unimodular_triangulation

    cells: Sequence[Sequence[LatticePoint]] = []
    if report.body.kind == "polygon":
        cells = unimodular_triangulation(report.body).cells
    panels: list[tuple[str, LatticeBody, Sequence]] = [("", report.body, cells)]
    for atom, k in report.normal_form.atoms():
        panels.append((f"{k:+d}", atom_body(atom), []))
    t = report.normal_form.t
    return render_bodies(panels, header=f"t = ({t.x}, {t.y})")


def render_partition(part) -> str:
    """A partition drawn over its hull."""
    return render_bodies([("", part.hull, part.cells)])
