"""Report figures, rendered to files with the non-interactive backend."""

from __future__ import annotations

from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .core import Geometry  # noqa: E402

_VERDICT_COLORS = {
    "below-girth5-bound": "#bbbbbb",
    "moore-case-possible": "#1b9e77",
    "moore-case-unknown": "#66a61e",
    "moore-case-excluded": "#d95f02",
    "bound+1-excluded": "#e7298a",
    "bound+1-possible": "#7570b3",
    "inadmissible": "#666666",
    "possible": "#1f78b4",
}


def deficiency_figure(g: Geometry, path: Path, highlight: int = 0, max_edges: int = 20000) -> Path:
    """Circular drawing of the deficiency graph; ``highlight`` and its
    neighbourhood (the opposite point set) are coloured."""
    from .pent import _analyze

    a = _analyze(g)
    v = g.v
    theta = 2 * np.pi * np.arange(v) / max(v, 1)
    xy = np.column_stack([np.cos(theta), np.sin(theta)])
    fig, ax = plt.subplots(figsize=(6, 6))
    if a.ok:
        edges = a.graph.edges()
        if len(edges) <= max_edges:
            for x, y in edges:
                hot = highlight in (x, y)
                ax.plot(*xy[[x, y]].T, lw=1.2 if hot else 0.3, color="#d95f02" if hot else "#999999",
                        alpha=1.0 if hot else 0.5, zorder=2 if hot else 1)
        nb = set(a.adj[highlight]) if v else set()
        colors = ["#d95f02" if x == highlight else "#1b9e77" if x in nb else "#333333" for x in range(v)]
        ax.scatter(xy[:, 0], xy[:, 1], s=max(4, 400 / max(v, 1)), c=colors, zorder=3)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(f"deficiency graph, v = {v}; point {highlight} and W_{highlight} highlighted", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def intersection_figure(g: Geometry, path: Path) -> Path:
    """Distribution of |W_x & W_y| over unordered point pairs, split by
    whether the pair is adjacent in the deficiency graph."""
    from .pent import _analyze

    a = _analyze(g)
    fig, ax = plt.subplots(figsize=(6, 4))
    if a.ok and g.v > 1:
        C = a.common()
        iu = np.triu_indices(g.v, 1)
        adj = a.D[iu]
        vals = C[iu]
        top = int(vals.max())
        bins = np.arange(top + 2) - 0.5
        ax.hist([vals[adj], vals[~adj]], bins=bins, stacked=True, label=["adjacent", "non-adjacent"],
                color=["#d95f02", "#1f78b4"])
        ax.set_xticks(range(top + 1))
        ax.legend()
    ax.set_xlabel("|W_x & W_y|")
    ax.set_ylabel("point pairs")
    ax.set_yscale("symlog")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def verdict_figure(rows: list[dict], path: Path) -> Path:
    """One coloured cell per r, from ``girth5_verdict`` rows."""
    fig, ax = plt.subplots(figsize=(max(4, 0.25 * len(rows) + 2), 2.2))
    counts = Counter()
    for row in rows:
        color = _VERDICT_COLORS.get(row["verdict"], "#000000")
        label = row["verdict"] if counts[row["verdict"]] == 0 else None
        counts[row["verdict"]] += 1
        ax.bar(row["r"], 1, width=0.9, color=color, label=label, hatch="//" if row.get("known") else None)
    ax.set_yticks([])
    ax.set_xlabel("r")
    if rows:
        k, w = rows[0]["k"], rows[0]["w"]
        ax.set_title(f"girth-5 verdicts for PENT({k}, r, {w}); hatched = constructed", fontsize=9)
    ax.legend(fontsize=7, loc="upper center", bbox_to_anchor=(0.5, -0.45), ncol=3, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path
