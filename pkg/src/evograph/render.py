"""SVG rendering, transition frames, and plot-data CSV emitters.

Everything here is deterministic: equal inputs give byte-identical output,
which makes snapshots diffable and pipelines reproducible.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape, quoteattr

from .errors import CoverageError, GraphModelError
from .model import Frame, GraphInstance, Position


@dataclass(frozen=True)
class RenderStyle:
    vertex_radius: float = 6.0
    vertex_fill: str = "#3b6ea5"
    highlight_fill: str = "#cc2222"
    edge_stroke: str = "#999999"
    edge_width: float = 1.0
    scale_edge_width_by_weight: bool = False
    show_labels: bool = False
    highlight: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.vertex_radius <= 0:
            raise GraphModelError("vertex_radius must be positive")


def _f(x: float) -> str:
    return repr(float(x))


def render_instance_svg(inst: GraphInstance, positions: dict[str, Position],
                        style: RenderStyle | None = None,
                        frame: Frame | None = None) -> bytes:
    """One instance as an SVG image: edges under vertices, circles per vertex,
    highlighted ids in the highlight fill."""
    style = style or RenderStyle()
    frame = frame or Frame()
    missing = [vid for vid in inst.vertices if vid not in positions]
    if missing:
        raise CoverageError(f"no position for vertex {missing[0]!r} in instance {inst.index}")
    lines = ['<?xml version="1.0" encoding="UTF-8"?>',
             f'<svg xmlns="http://www.w3.org/2000/svg" '
             f'viewBox="0 0 {_f(frame.width)} {_f(frame.height)}">']
    for key in inst.edge_keys():
        a, b = positions[key[0]], positions[key[1]]
        width = style.edge_width
        if style.scale_edge_width_by_weight:
            width = style.edge_width * inst.edges[key].weight
        lines.append(
            f'  <line x1={quoteattr(_f(a.x))} y1={quoteattr(_f(a.y))} '
            f'x2={quoteattr(_f(b.x))} y2={quoteattr(_f(b.y))} '
            f'stroke={quoteattr(style.edge_stroke)} stroke-width={quoteattr(_f(width))}/>')
    for vid in inst.vertex_ids():
        p = positions[vid]
        fill = style.highlight_fill if vid in style.highlight else style.vertex_fill
        lines.append(
            f'  <circle cx={quoteattr(_f(p.x))} cy={quoteattr(_f(p.y))} '
            f'r={quoteattr(_f(style.vertex_radius))} fill={quoteattr(fill)}/>')
        if style.show_labels:
            lines.append(
                f'  <text x={quoteattr(_f(p.x))} '
                f'y={quoteattr(_f(p.y - style.vertex_radius - 2.0))} '
                f'text-anchor="middle" font-size="10">{escape(vid)}</text>')
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def interpolate_frames(pos_a: dict[str, Position], pos_b: dict[str, Position],
                       steps: int) -> list[dict[str, Position]]:
    """Linear blend frames 1..steps between two position maps.

    Shared vertices move along the straight line and land exactly on pos_b
    in the last frame.  Vertices only in pos_a stay put and drop out after
    the midpoint (never reaching the final frame); vertices only in pos_b
    appear from the midpoint on.
    """
    if steps < 1:
        raise GraphModelError(f"steps must be >= 1, got {steps}")
    shared = sorted(set(pos_a) & set(pos_b))
    only_a = sorted(set(pos_a) - set(pos_b))
    only_b = sorted(set(pos_b) - set(pos_a))
    fade_out_last = min(math.ceil(steps / 2), steps - 1)
    fade_in_first = fade_out_last + 1
    frames = []
    for t in range(1, steps + 1):
        blend = t / steps
        frame: dict[str, Position] = {}
        for vid in shared:
            a, b = pos_a[vid], pos_b[vid]
            if t == steps:
                frame[vid] = b
            else:
                frame[vid] = Position(a.x + blend * (b.x - a.x), a.y + blend * (b.y - a.y))
        if t <= fade_out_last:
            for vid in only_a:
                frame[vid] = pos_a[vid]
        if t >= fade_in_first:
            for vid in only_b:
                frame[vid] = pos_b[vid]
        frames.append(frame)
    return frames


def export_distance_csv(series: dict[str, list[tuple[float, float]]]) -> bytes:
    """Plot series as label,x,y rows sorted by (label, x)."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["label", "x", "y"])
    for label in sorted(series):
        for x, y in sorted(series[label]):
            writer.writerow([label, x, repr(float(y))])
    return buf.getvalue().encode("utf-8")


def product_series(a: dict[str, list[tuple[float, float]]],
                   b: dict[str, list[tuple[float, float]]]
                   ) -> dict[str, list[tuple[float, float]]]:
    """Pointwise product of two series maps on their common (label, x) grid."""
    out: dict[str, list[tuple[float, float]]] = {}
    for label in sorted(set(a) & set(b)):
        bx = dict(b[label])
        rows = [(x, ya * bx[x]) for x, ya in sorted(a[label]) if x in bx]
        out[label] = rows
    return out
