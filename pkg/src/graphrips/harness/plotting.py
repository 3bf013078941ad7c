"""Figures written next to the CSV/JSON outputs."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402
from matplotlib.patches import Patch  # noqa: E402

VERDICT_CODES = {"recovered": 0, "not-recovered": 1, "window-infeasible": 2, "budget-exceeded": 2, "error": 3}
VERDICT_COLORS = ["#4c9f70", "#d1603d", "#bdbdbd", "#222222"]
VERDICT_LABELS = ["recovered", "not recovered", "skipped", "error"]

STYLE = {
    "font.size": 10,
    "axes.labelsize": 11,
    "axes.titlesize": 11,
    "legend.fontsize": 9,
    "legend.frameon": False,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "svg.hashsalt": "graphrips",
    "svg.fonttype": "none",
}


def _save(fig, path) -> None:
    fig.savefig(path, bbox_inches="tight", metadata={"Date": None})
    plt.close(fig)


def verdict_heatmap(rows: list[dict], path, window=None, title: str | None = None) -> None:
    """Verdicts over the (eps, beta) grid, with the scale window drawn on top.

    ``window`` maps eps to a ScaleWindow (or None for the abstract setting,
    where it is a single ScaleWindow and eps is absent).
    """
    with plt.rc_context(STYLE):
        betas = sorted({r["beta"] for r in rows})
        epss = sorted({r["eps"] for r in rows if r["eps"] is not None})
        cmap = ListedColormap(VERDICT_COLORS)
        if not epss:
            fig, ax = plt.subplots(figsize=(6.0, 1.8))
            codes = np.array([[VERDICT_CODES.get(_code(r), 3) for r in sorted(rows, key=lambda r: r["beta"])]])
            edges = _cell_edges(betas)
            ax.pcolormesh(edges, [0, 1], codes, cmap=cmap, vmin=-0.5, vmax=3.5)
            if window is not None:
                ax.axvspan(window.lower, window.upper, ymin=0.0, ymax=1.0, fill=False, hatch="//", edgecolor="k", lw=1.0)
            ax.set_yticks([])
            ax.set_xlabel(r"$\beta$")
        else:
            fig, ax = plt.subplots(figsize=(6.0, 4.5))
            grid = np.full((len(betas), len(epss)), 3)
            for r in rows:
                grid[betas.index(r["beta"]), epss.index(r["eps"])] = VERDICT_CODES.get(_code(r), 3)
            ax.pcolormesh(_cell_edges(epss), _cell_edges(betas), grid, cmap=cmap, vmin=-0.5, vmax=3.5)
            if window is not None:
                xs = np.linspace(_cell_edges(epss)[0], _cell_edges(epss)[-1], 200)
                xs = xs[xs > 0]
                lows = [window(x).lower for x in xs]
                highs = [window(x).upper for x in xs]
                ax.plot(xs, lows, "k--", lw=1.0, label="window lower")
                ax.plot(xs, highs, "k:", lw=1.0, label="window upper")
                ax.set_ylim(_cell_edges(betas)[0], _cell_edges(betas)[-1])
            ax.set_xlabel(r"$\varepsilon$")
            ax.set_ylabel(r"$\beta$")
        handles = [Patch(color=c, label=l) for c, l in zip(VERDICT_COLORS, VERDICT_LABELS)]
        ax.legend(handles=handles, loc="upper left", bbox_to_anchor=(1.01, 1.0))
        if title:
            ax.set_title(title)
        _save(fig, path)


def _code(row: dict) -> str:
    v = row["verdict"]
    return "error" if v.startswith("error") else v


def _cell_edges(values: list[float]) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    if len(v) == 1:
        w = abs(v[0]) * 0.1 or 1.0
        return np.array([v[0] - w, v[0] + w])
    mids = (v[1:] + v[:-1]) / 2
    return np.concatenate([[v[0] - (mids[0] - v[0])], mids, [v[-1] + (v[-1] - mids[-1])]])


def window_figure(window, beta: float | None, path, label: str = r"$\beta$") -> None:
    """The admissible interval on a number line with the chosen scale marked."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(6.0, 1.4))
        lo, hi = window.lower, window.upper
        span = max(hi - lo, abs(hi), 1e-12)
        ax.hlines(0, min(lo, hi) - 0.1 * span, max(lo, hi) + 0.1 * span, color="0.6", lw=1)
        color = "#4c9f70" if window.feasible else "#d1603d"
        ax.hlines(0, lo, hi, color=color, lw=6)
        ax.plot([lo], [0], marker="o", mfc=color if window.lower_inclusive else "w", mec=color, ms=8)
        ax.plot([hi], [0], marker="o", mfc=color if window.upper_inclusive else "w", mec=color, ms=8)
        if beta is not None:
            ax.axvline(beta, color="k", lw=1)
            ax.annotate(f"{label} = {beta:.4g}", (beta, 0.3), ha="center")
        ax.set_yticks([])
        ax.set_ylim(-0.6, 0.8)
        ax.spines["left"].set_visible(False)
        _save(fig, path)


def sample_figure(EG, points: np.ndarray, path) -> None:
    """Embedded graph polylines with the sample overlaid (first two coordinates)."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 4.5))
        for line in EG.polylines:
            ax.plot(line[:, 0], line[:, 1], color="0.4", lw=1.0)
        ax.scatter(points[:, 0], points[:, 1], s=4, color="#3b6fb6", zorder=3)
        ax.set_aspect("equal")
        _save(fig, path)
