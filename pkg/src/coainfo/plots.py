"""Render per-level measure figures to image files.

One two-panel figure: mutual information on the left, symmetric uncertainty
on the right, both against the aggregation level, one line per period.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .analysis import LevelReport

FIGURE_FILENAME = "level_measures.png"


def render_level_measures(reports: list[LevelReport], directory: str | Path) -> Path:
    """Write the level-sweep figure into ``directory`` and return its path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / FIGURE_FILENAME

    fig, (ax_i, ax_u) = plt.subplots(1, 2, figsize=(9, 3.6))
    for report in reports:
        levels = [row.level for row in report.rows]
        ax_i.plot(levels, [row.i_xy for row in report.rows], marker="o",
                  label=report.period_tag)
        ax_u.plot(levels, [row.u_xy for row in report.rows], marker="s",
                  label=report.period_tag)
    for ax, ylabel in ((ax_i, "I(X,Y) [bits]"), (ax_u, "U(X,Y)")):
        ax.set_xlabel("chart-of-accounts level")
        ax.set_ylabel(ylabel)
        ax.invert_xaxis()  # finest level on the left, aggregation increases rightward
        ax.xaxis.get_major_locator().set_params(integer=True)
        ax.grid(True, alpha=0.3)
        ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
