"""SVG 1.1 drawings of points, the MST and a tour."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .geometry import PointSet

VIEW = 1000.0
MARGIN = 0.05


def _project(points: PointSet) -> np.ndarray:
    xy = np.zeros((points.n, 2))
    k = min(2, points.dim)
    xy[:, :k] = points.coords[:, :k]
    lo = xy.min(axis=0)
    span = float((xy.max(axis=0) - lo).max())
    inner = VIEW * (1 - 2 * MARGIN)
    scale = inner / span if span > 0 else 0.0
    extent = (xy.max(axis=0) - lo) * scale
    offset = VIEW * MARGIN + (inner - extent) / 2
    out = (xy - lo) * scale + offset
    out[:, 1] = VIEW - out[:, 1]  # y axis points up
    return out


def render_svg(
    points: PointSet,
    order: Sequence[int],
    mst_edges: Iterable[tuple[int, int]] = (),
    revisited: Sequence[bool] | None = None,
    title: str = "",
) -> str:
    xy = _project(points)
    hot = set()
    if revisited is not None:
        hot = {v for v, r in zip(order, revisited) if r}
    parts = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg version="1.1" xmlns="http://www.w3.org/2000/svg" width="{VIEW:.0f}" height="{VIEW:.0f}" '
        f'viewBox="0 0 {VIEW:.0f} {VIEW:.0f}">',
    ]
    if title:
        esc = title.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        parts.append(f"<title>{esc}</title>")
    parts.append('<rect x="0" y="0" width="1000" height="1000" fill="white"/>')
    parts.append('<g id="mst" stroke="#9bb7d4" stroke-width="1.5">')
    for u, v in mst_edges:
        parts.append(_line(xy, u, v, "mst"))
    parts.append("</g>")
    parts.append('<g id="tour" stroke="#b03a2e" stroke-width="3" fill="none">')
    if len(order) >= 2:
        for i in range(len(order)):
            parts.append(_line(xy, order[i], order[(i + 1) % len(order)], "tour"))
    parts.append("</g>")
    parts.append('<g id="cities" stroke="black" stroke-width="1">')
    for v in range(points.n):
        cls, fill = ("city revisited", "#f1c40f") if v in hot else ("city", "black")
        parts.append(f'<circle class="{cls}" cx="{xy[v, 0]:.3f}" cy="{xy[v, 1]:.3f}" r="4" fill="{fill}"/>')
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _line(xy: np.ndarray, u: int, v: int, cls: str) -> str:
    return (
        f'<line class="{cls}" x1="{xy[u, 0]:.3f}" y1="{xy[u, 1]:.3f}" '
        f'x2="{xy[v, 0]:.3f}" y2="{xy[v, 1]:.3f}"/>'
    )
