"""Render k-graph skeletons to image files with matplotlib.

Vertices sit on a circle; edges are drawn as arrows colored by their
color index, with parallel edges fanned out by curvature.  Output is a
static file (Agg backend), suitable for the CLI report path.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import FancyArrowPatch

from .core import KGraph

EDGE_COLORS = plt.cm.tab10.colors


def _vertex_positions(vertices) -> dict[str, tuple[float, float]]:
    n = len(vertices)
    if n == 1:
        return {vertices[0]: (0.0, 0.0)}
    return {
        v: (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n))
        for i, v in enumerate(vertices)
    }


def draw_skeleton(g: KGraph, outfile: str, title: str | None = None) -> None:
    positions = _vertex_positions(g.vertices)
    fig, ax = plt.subplots(figsize=(6, 6))

    groups: dict[tuple[str, str], list] = {}
    for eid in sorted(g.edges):
        e = g.edges[eid]
        groups.setdefault((e.source, e.range), []).append(e)

    for (src, dst), bundle in sorted(groups.items()):
        x0, y0 = positions[src]
        x1, y1 = positions[dst]
        for idx, e in enumerate(bundle):
            color = EDGE_COLORS[(e.color - 1) % len(EDGE_COLORS)]
            if src == dst:
                # self loop: a small circle offset outward from the vertex
                angle = 2 * math.pi * idx / max(len(bundle), 1)
                r = 0.16 + 0.05 * (idx % 3)
                cx = x0 + (0.28 + 0.1 * idx) * math.cos(angle)
                cy = y0 + (0.28 + 0.1 * idx) * math.sin(angle)
                loop = plt.Circle((cx, cy), r, fill=False, color=color, lw=1.4)
                ax.add_patch(loop)
                ax.annotate(
                    e.id, (cx, cy + r), ha="center", va="bottom", fontsize=7
                )
            else:
                rad = 0.12 * (idx - (len(bundle) - 1) / 2) + 0.08
                arrow = FancyArrowPatch(
                    (x0, y0),
                    (x1, y1),
                    connectionstyle=f"arc3,rad={rad}",
                    arrowstyle="-|>",
                    mutation_scale=14,
                    color=color,
                    lw=1.4,
                    shrinkA=12,
                    shrinkB=12,
                )
                ax.add_patch(arrow)
                mx, my = (x0 + x1) / 2, (y0 + y1) / 2
                ax.annotate(
                    e.id,
                    (mx + rad * (y0 - y1), my + rad * (x1 - x0)),
                    ha="center",
                    fontsize=7,
                )

    for v, (x, y) in positions.items():
        ax.plot([x], [y], "o", color="black", markersize=9, zorder=3)
        ax.annotate(
            v, (x, y - 0.12), ha="center", va="top", fontsize=10, fontweight="bold"
        )

    handles = [
        plt.Line2D(
            [0], [0],
            color=EDGE_COLORS[(c - 1) % len(EDGE_COLORS)],
            lw=2,
            label=f"color {c}",
        )
        for c in range(1, g.rank + 1)
    ]
    ax.legend(handles=handles, loc="upper right", fontsize=8)
    if title:
        ax.set_title(title)
    ax.set_aspect("equal")
    ax.set_xlim(-1.7, 1.7)
    ax.set_ylim(-1.7, 1.7)
    ax.axis("off")
    fig.savefig(outfile, dpi=150, bbox_inches="tight")
    plt.close(fig)
