"""Scatter output: a dependency-free deterministic SVG writer and matplotlib report figures."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939",
)

_W, _H = 520, 400
_LEFT, _RIGHT, _TOP, _BOTTOM = 50, 130, 20, 40


def color_for(label: int) -> str:
    return PALETTE[(int(label) - 1) % len(PALETTE)]


def _labels(assignment) -> np.ndarray:
    if hasattr(assignment, "labels"):
        return np.asarray(assignment.labels, dtype=int)
    return np.asarray(assignment, dtype=int)


def render_svg_scatter(points, assignment, path, title: Optional[str] = None) -> None:
    """Write an SVG scatter, one circle per point, colored by cluster, with a size legend."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"points must be n x 2, got {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    labels = _labels(assignment)
    lo = pts.min(axis=0)
    span = pts.max(axis=0) - lo
    span[span == 0] = 1.0
    pw = _W - _LEFT - _RIGHT
    ph = _H - _TOP - _BOTTOM
    sx = _LEFT + (pts[:, 0] - lo[0]) / span[0] * pw
    sy = _TOP + ph - (pts[:, 1] - lo[1]) / span[1] * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" viewBox="0 0 {_W} {_H}">',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
        f'<rect x="{_LEFT}" y="{_TOP}" width="{pw}" height="{ph}" fill="none" stroke="black" stroke-width="1"/>',
    ]
    if title:
        out.append(f'<text x="{_LEFT}" y="14" font-family="sans-serif" font-size="12">{_escape(title)}</text>')
    for tick, (axis_lo, axis_span) in (("x", (lo[0], span[0])), ("y", (lo[1], span[1]))):
        for frac in (0.0, 0.5, 1.0):
            value = axis_lo + frac * axis_span
            if tick == "x":
                x, y, anchor = _LEFT + frac * pw, _TOP + ph + 15, "middle"
            else:
                x, y, anchor = _LEFT - 5, _TOP + ph - frac * ph + 4, "end"
            out.append(
                f'<text x="{x:.2f}" y="{y:.2f}" font-family="sans-serif" font-size="10" '
                f'text-anchor="{anchor}">{value:.4g}</text>'
            )
    for x, y, lab in zip(sx, sy, labels):
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{color_for(lab)}" fill-opacity="0.85"/>')
    uniq, counts = np.unique(labels, return_counts=True)
    lx = _W - _RIGHT + 15
    for k, (lab, cnt) in enumerate(zip(uniq, counts)):
        ly = _TOP + 10 + 16 * k
        out.append(f'<rect x="{lx}" y="{ly - 8}" width="10" height="10" fill="{color_for(lab)}"/>')
        out.append(
            f'<text x="{lx + 15}" y="{ly + 1}" font-family="sans-serif" font-size="11">C{lab} (n={cnt})</text>'
        )
    out.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(out) + "\n")


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


# matplotlib figures -------------------------------------------------------


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def figure_scatter(points, assignment, path, title: Optional[str] = None, xlabel: str = "x", ylabel: str = "y"):
    plt = _pyplot()
    pts = np.asarray(points, dtype=float)
    labels = _labels(assignment)
    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    for lab in np.unique(labels):
        sel = labels == lab
        ax.scatter(pts[sel, 0], pts[sel, 1], s=14, color=color_for(lab), label=f"C{lab} ({sel.sum()})")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.legend(fontsize=8, frameon=False, loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def figure_knn_profile(profile: Sequence[float], path, k: int, eps: Optional[float] = None):
    """Sorted kNN-distance curve; an optional horizontal line marks a chosen eps."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.5, 4))
    ax.plot(np.arange(1, len(profile) + 1), profile, color="black", lw=1)
    if eps is not None:
        ax.axhline(eps, color="red", lw=1, ls="--")
    ax.set_xlabel("points sorted by distance")
    ax.set_ylabel(f"{k}-NN distance")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def figure_scan(rows, path):
    """ASW against h, one line per n_prime."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.5, 4))
    for n_prime in sorted({r.n_prime for r in rows}):
        sel = sorted((r for r in rows if r.n_prime == n_prime), key=lambda r: r.h)
        hs = [r.h for r in sel]
        vals = [np.nan if r.asw is None else r.asw for r in sel]
        ax.plot(hs, vals, marker="o", label=f"n'={n_prime}")
    ax.set_xlabel("h")
    ax.set_ylabel("ASW")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
