"""Figure rendering for the report path.

Arrangements in ambient dimension 1 and 2 are drawn directly (hyperplane
points or lines plus the enumerated vertices); every report can also carry
a Betti bar chart.  Files are written next to the delimited output with
deterministic names; higher-dimensional arrangements get no figure.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .arrangement import Arrangement, Datum, arrangement_from_datum, vertices_detailed


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _bounds(values, pad=2.0):
    if not values:
        return -3.0, 3.0
    lo, hi = min(values), max(values)
    return float(lo) - pad, float(hi) + pad


def arrangement_figure(arr: Arrangement, path: str) -> None:
    plt = _pyplot()
    verts = vertices_detailed(arr)
    fig, ax = plt.subplots(figsize=(5.0, 5.0 if arr.dim == 2 else 2.2))
    if arr.dim == 1:
        xs = [float(h.constant) / h.normal[0] for h in arr.hyperplanes]
        lo, hi = _bounds(xs)
        ax.axhline(0.0, color="0.7", linewidth=0.8)
        for i, (h, x) in enumerate(zip(arr.hyperplanes, xs)):
            ax.plot([x, x], [-0.4, 0.4], color="C0")
            ax.annotate(f"H{i + 1}", (x, 0.45), ha="center", fontsize=8)
        ax.plot(xs, [0.0] * len(xs), "o", color="C3", markersize=4)
        ax.set_xlim(lo, hi)
        ax.set_ylim(-1, 1)
        ax.set_yticks([])
    elif arr.dim == 2:
        pts = [v.point for v in verts]
        lo0, hi0 = _bounds([p[0] for p in pts])
        lo1, hi1 = _bounds([p[1] for p in pts])
        for i, h in enumerate(arr.hyperplanes):
            a, b = h.normal
            c = h.constant
            base = (0.0, float(Fraction(c, b))) if b else (float(Fraction(c, a)), 0.0)
            through = (base[0] - float(b), base[1] + float(a))
            ax.axline(base, through, color="C0", linewidth=1.0)
            ax.annotate(f"H{i + 1}", base, fontsize=8, color="C0")
        if pts:
            ax.plot(
                [float(p[0]) for p in pts],
                [float(p[1]) for p in pts],
                "o",
                color="C3",
                markersize=4,
            )
        ax.set_xlim(lo0, hi0)
        ax.set_ylim(lo1, hi1)
        ax.set_aspect("equal")
    else:
        raise ValueError("arrangement figures need ambient dimension 1 or 2")
    ax.set_title(f"{len(arr.hyperplanes)} hyperplanes, {len(verts)} vertices")
    fig.savefig(path, dpi=150, metadata={"Software": "hkring"})
    plt.close(fig)


def betti_figure(betti: list[int], path: str) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(4.5, 2.8))
    ax.bar(range(len(betti)), betti, color="C0")
    ax.set_xlabel("degree")
    ax.set_ylabel("rank")
    ax.set_xticks(range(len(betti)))
    ax.set_title("Betti numbers")
    fig.savefig(path, dpi=150, metadata={"Software": "hkring"})
    plt.close(fig)


def render_report_figures(outdir: str, stem: str, d: Datum, betti: list[int] | None) -> list[str]:
    """Write the figures for one report; returns the paths written."""
    os.makedirs(outdir, exist_ok=True)
    written = []
    if d.n <= 2:
        path = os.path.join(outdir, f"{stem}-arrangement.png")
        arrangement_figure(arrangement_from_datum(d), path)
        written.append(path)
    if betti is not None:
        path = os.path.join(outdir, f"{stem}-betti.png")
        betti_figure(betti, path)
        written.append(path)
    return written
