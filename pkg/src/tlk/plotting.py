"""Figures for reports: layered frame drawings, bit strips and suite timings."""
from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import FancyBboxPatch  # noqa: E402

from .frames import hasse_edges, metrics  # noqa: E402


def layout(F):
    """Point positions: roots at the bottom, cluster-mates side by side."""
    if not F.is_closed:
        n = len(F)
        return {
            p: (math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n))
            for k, p in enumerate(F.points)
        }
    per = metrics(F).per_point
    top = max(v["dep"] for v in per.values())
    rows = {}
    for p in F.points:
        rows.setdefault(top - per[p]["dep"], []).append(p)
    pos = {}
    for y, pts in rows.items():
        w = len(pts)
        for k, p in enumerate(pts):
            pos[p] = (k - (w - 1) / 2, float(y))
    return pos


def draw_frame(F, ax=None, title=None, highlight=()):
    pos = layout(F)
    if ax is None:
        widest = max(sum(1 for q in pos.values() if q[1] == y) for _, y in pos.values())
        _, ax = plt.subplots(figsize=(max(4, 0.5 * widest), 3.5))
    if F.is_closed:
        seen = set()
        for c in F.cluster_masks:
            if c in seen or c & (c - 1) == 0:
                continue
            seen.add(c)
            xs = [pos[p][0] for p in F.names(c)]
            ys = [pos[p][1] for p in F.names(c)]
            ax.add_patch(
                FancyBboxPatch(
                    (min(xs) - 0.25, min(ys) - 0.2),
                    max(xs) - min(xs) + 0.5,
                    max(ys) - min(ys) + 0.4,
                    boxstyle="round,pad=0.05",
                    fc="none",
                    ec="tab:gray",
                    ls="--",
                )
            )
    for a, b in hasse_edges(F):
        if F.is_closed and F.related(b, a):
            continue
        ax.annotate(
            "",
            xy=pos[b],
            xytext=pos[a],
            arrowprops=dict(arrowstyle="-|>", color="black", shrinkA=9, shrinkB=9, lw=1),
        )
    for p, (x, y) in pos.items():
        colour = "tab:orange" if p in highlight else "white"
        ax.scatter([x], [y], s=260, c=colour, edgecolors="black", zorder=3)
        ax.text(x, y, p, ha="center", va="center", fontsize=7, zorder=4)
    xs = [x for x, _ in pos.values()]
    ys = [y for _, y in pos.values()]
    ax.set_xlim(min(xs) - 0.8, max(xs) + 0.8)
    ax.set_ylim(min(ys) - 0.6, max(ys) + 0.6)
    ax.set_axis_off()
    if title:
        ax.set_title(title, fontsize=9)
    return ax


def draw_bits(rows, ax=None, title=None):
    """``rows`` maps labels to BitSeq values; bits are drawn on a shared integer axis."""
    if ax is None:
        _, ax = plt.subplots(figsize=(8, 0.5 + 0.4 * len(rows)))
    lo = min(s.anchor for s in rows.values())
    hi = max(s.end for s in rows.values())
    for r, (label, seq) in enumerate(rows.items()):
        y = len(rows) - 1 - r
        for i, b in seq.items():
            ax.add_patch(plt.Rectangle((i - 0.5, y - 0.4), 1, 0.8, fc="black" if b else "white", ec="gray", lw=0.4))
        ax.text(lo - 1, y, label, ha="right", va="center", fontsize=7)
    ax.set_xlim(lo - 6, hi + 1)
    ax.set_ylim(-0.6, len(rows) - 0.4)
    ax.set_yticks([])
    ax.axvline(-0.5, color="tab:red", lw=0.6)
    if title:
        ax.set_title(title, fontsize=9)
    return ax


def draw_timings(report, ax=None):
    if ax is None:
        _, ax = plt.subplots(figsize=(7, 3))
    cases = report["cases"]
    labels = [str(c["id"]) for c in cases]
    colours = ["tab:green" if c["status"] == "pass" else "tab:red" for c in cases]
    ax.bar(labels, [c["seconds"] for c in cases], color=colours)
    ax.set_xlabel("case")
    ax.set_ylabel("seconds")
    ax.set_title(f"suite {report['suite']}: {report['totals']['passed']}/{report['totals']['cases']} pass", fontsize=9)
    return ax


def save(ax, path):
    fig = ax.figure
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
