"""Figures for audit reports."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.patches import Circle, FancyArrowPatch  # noqa: E402

from .graph import RED, BicoloredMultigraph  # noqa: E402

FACTOR_COLORS = ("#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d")


def _layout(n: int) -> np.ndarray:
    if n == 1:
        return np.zeros((1, 2))
    ang = np.pi / 2 + 2 * np.pi * np.arange(n) / n
    return np.column_stack([np.cos(ang), np.sin(ang)])


def draw_graph(
    g: BicoloredMultigraph,
    out: str | Path,
    title: str = "",
    highlight: Iterable[str] = (),
    groups: Sequence[Iterable[str]] = (),
) -> Path:
    """Vertices on a circle, parallel edges as separated arcs.

    Edges in ``groups`` are coloured per group; edges in ``highlight`` are
    drawn thick.  Red edges are dashed so colour stays free for groups.
    """
    pos = _layout(g.n)
    hl = set(highlight)
    group_of = {}
    for i, grp in enumerate(groups):
        for x in grp:
            group_of[x] = i
    fig, ax = plt.subplots(figsize=(4.2, 4.2))
    seen: dict[tuple[int, int], int] = {}
    loop_seen: dict[int, int] = {}
    for e in g.edges:
        color = FACTOR_COLORS[group_of[e.id] % len(FACTOR_COLORS)] if e.id in group_of else "0.25"
        width = 3.0 if e.id in hl else 1.3
        style = "--" if e.color == RED else "-"
        if e.is_loop:
            c = loop_seen.get(e.u, 0)
            loop_seen[e.u] = c + 1
            p = pos[e.u]
            direction = p / (np.linalg.norm(p) or 1.0) if g.n > 1 else np.array([0.0, 1.0])
            r = 0.09 + 0.035 * c
            centre = p + direction * r
            ax.add_patch(Circle(centre, r, fill=False, lw=width, ls=style, ec=color))
            ax.annotate(e.id, centre + direction * r, fontsize=7, ha="center", va="center")
            continue
        key = (e.u, e.v)
        c = seen.get(key, 0)
        seen[key] = c + 1
        rad = (0.18 * ((c + 1) // 2)) * (1 if c % 2 else -1)
        arrow = FancyArrowPatch(
            pos[e.u], pos[e.v], connectionstyle=f"arc3,rad={rad}", arrowstyle="-", lw=width, ls=style, color=color
        )
        ax.add_patch(arrow)
        mid = (pos[e.u] + pos[e.v]) / 2
        normal = np.array([pos[e.v][1] - pos[e.u][1], pos[e.u][0] - pos[e.v][0]])
        normal = normal / (np.linalg.norm(normal) or 1.0)
        ax.annotate(e.id, mid - normal * rad * 0.5 * np.linalg.norm(pos[e.v] - pos[e.u]), fontsize=7, ha="center")
    ax.scatter(pos[:, 0], pos[:, 1], s=160, c="white", edgecolors="black", zorder=3)
    for v, (x, y) in enumerate(pos):
        ax.annotate(str(v + 1), (x, y), ha="center", va="center", fontsize=8, zorder=4)
    ax.set_aspect("equal")
    ax.set_xlim(-1.6, 1.6)
    ax.set_ylim(-1.6, 1.6)
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=10)
    out = Path(out)
    fig.savefig(out, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return out


def draw_factor_values(values: Mapping[str, float], out: str | Path, title: str = "") -> Path:
    """Bar chart of log10 |factor value|; vanishing factors are marked at the floor."""
    names = list(values)
    logs = [math.log10(abs(v)) if v else None for v in values.values()]
    finite = [x for x in logs if x is not None]
    floor = (min(finite) if finite else 0.0) - 2.0
    heights = [floor if x is None else x for x in logs]
    colors = ["#d62728" if x is None else "#4c72b0" for x in logs]
    fig, ax = plt.subplots(figsize=(max(3.0, 0.8 * len(names) + 1.5), 3.0))
    ax.bar(range(len(names)), [h - floor for h in heights], bottom=floor, color=colors)
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, fontsize=8)
    ax.set_ylabel("log10 |value|")
    for i, x in enumerate(logs):
        if x is None:
            ax.annotate("0", (i, floor), ha="center", va="bottom", color="#d62728", fontsize=9)
    if title:
        ax.set_title(title, fontsize=10)
    out = Path(out)
    fig.savefig(out, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return out
