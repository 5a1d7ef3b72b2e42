"""Figure output for reports (headless, PNG/SVG/PDF by file suffix)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .semantic import ClockFeatures, ideal_digit_position  # noqa: E402


def _draw_gesture(ax, g, **kw):
    for s in g.strokes:
        ax.plot(s.xy[:, 0], s.xy[:, 1], **kw)


def plot_gesture(g, path, title: str | None = None) -> None:
    fig, ax = plt.subplots(figsize=(4, 4))
    _draw_gesture(ax, g, color="k", lw=1.2, marker=".", ms=3)
    ax.set_aspect("equal")
    ax.invert_yaxis()
    if title:
        ax.set_title(title)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def plot_clock(doc, features: ClockFeatures, path, score: int | None = None) -> None:
    """Clock drawing overlaid with the fitted face, centre points and ideal digit slots."""
    fig, ax = plt.subplots(figsize=(5, 5))
    for dg in doc.gestures:
        _draw_gesture(ax, dg.gesture, color="0.2", lw=1.0)
    cx, cy = features.face_center
    r = features.radius
    t = np.linspace(0, 2 * np.pi, 200)
    ax.plot(cx + r * np.cos(t), cy + r * np.sin(t), ls="--", color="tab:blue", lw=0.8, label="fitted face")
    ax.plot([cx], [cy], "+", color="tab:blue", ms=10)
    ax.plot([features.c[0]], [features.c[1]], "x", color="tab:red", ms=8, label="centroid c")
    slots = np.array([ideal_digit_position((cx, cy), r, d) for d in range(1, 13)])
    ax.plot(slots[:, 0], slots[:, 1], "o", mfc="none", color="tab:green", ms=6, label="ideal digit slots")
    ax.set_aspect("equal")
    ax.invert_yaxis()
    title = f"alpha = {features.alpha:.1f} deg, hand ratio = {features.hand_ratio:.2f}"
    if score is not None:
        title = f"score {score}/6: " + title
    ax.set_title(title, fontsize=9)
    ax.legend(loc="lower right", fontsize=7, frameon=False)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
