"""Bar charts of game-length distributions, written as reproducible SVG."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .enumeration import LengthDistribution  # noqa: E402
from .markov import SimulationReport  # noqa: E402

WIDTH_PT, HEIGHT_PT = 960, 540

STYLE = {
    "svg.hashsalt": "burnoff",
    "svg.fonttype": "none",
    "font.family": "DejaVu Sans",
    "font.size": 13,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "axes.grid": True,
    "axes.grid.axis": "y",
    "grid.linestyle": "--",
    "grid.linewidth": 0.5,
    "legend.frameon": False,
}

SIM_COLOR = "#4c72b0"
EXACT_COLOR = "#dd8452"


def _save(fig, path: str | Path):
    fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)


def _figure():
    # SVG units are points, so this gives a 960x540 canvas
    return plt.subplots(figsize=(WIDTH_PT / 72, HEIGHT_PT / 72))


def plot_comparison(report: SimulationReport, path: str | Path, title: str | None = None) -> None:
    """Grouped bars per game length: simulated frequency left, exact probability right."""
    lengths = list(range(len(report.length_histogram)))
    with plt.rc_context(STYLE):
        fig, ax = _figure()
        w = 0.38
        ax.bar([k - w / 2 for k in lengths], report.frequencies(), width=w, color=SIM_COLOR,
               label=f"simulated ({report.games_played} games)")
        if report.analytic is not None:
            ax.bar([k + w / 2 for k in lengths], [float(p) for p in report.analytic], width=w,
                   color=EXACT_COLOR, label="exact")
        ax.set_xticks(lengths)
        ax.set_xlabel("game length")
        ax.set_ylabel("probability")
        if report.chi_square is not None:
            chi = report.chi_square
            verdict = "reject" if chi.reject else "do not reject"
            ax.text(0.98, 0.95, f"$\\chi^2$ = {chi.statistic:.3f}, df = {chi.df}, "
                    f"$\\alpha$ = {chi.alpha:g}: {verdict}",
                    transform=ax.transAxes, ha="right", va="top")
        ax.set_title(title or "Game lengths: simulation vs exact")
        ax.legend(loc="upper center")
        fig.tight_layout()
        _save(fig, path)


def plot_distribution(dist: LengthDistribution, path: str | Path, title: str | None = None) -> None:
    lengths = list(range(len(dist.counts)))
    with plt.rc_context(STYLE):
        fig, ax = _figure()
        probs = [float(p) for p in dist.probabilities]
        bars = ax.bar(lengths, probs, width=0.6, color=EXACT_COLOR)
        for bar, c in zip(bars, dist.counts):
            ax.annotate(f"{c}/{dist.total}", (bar.get_x() + bar.get_width() / 2, bar.get_height()),
                        ha="center", va="bottom", fontsize=11)
        ax.set_xticks(lengths)
        ax.set_xlabel("game length")
        ax.set_ylabel("probability")
        ax.set_title(title or "Exact game-length distribution")
        fig.tight_layout()
        _save(fig, path)
