"""Matplotlib rendering of sampled curve tables to image files."""

from __future__ import annotations

from .cheats import CurveTable


def render_curves(table: CurveTable, path: str, title: str | None = None) -> None:
    """Render every non-theta column of a curve table against theta."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    theta = [row[0] for row in table.rows]
    for j, name in enumerate(table.header[1:], start=1):
        ax.plot(theta, [row[j] for row in table.rows], label=name, linewidth=1.5)
    ax.set_xlabel("theta [rad]")
    ax.set_ylabel("value")
    ax.grid(alpha=0.3)
    ax.legend(loc="best", fontsize=9)
    if title:
        ax.set_title(title)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
