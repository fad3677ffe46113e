"""Tabular reports and their figure renderings.

Cluster tables and label histograms are written as tab-delimited text and,
on request, rendered to bar-chart files via matplotlib (Agg backend, no
display needed).
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

Rows = list[tuple[str, int]]


def format_table(rows: Rows, header: tuple[str, str] = ("value", "count"),
                 delimiter: str = "\t") -> str:
    lines = [delimiter.join(header)]
    lines += [f"{value}{delimiter}{count}" for value, count in rows]
    return "\n".join(lines) + "\n"


def plot_rows(rows: Rows, path: str, *, title: str | None = None,
              top: int | None = None) -> None:
    """Horizontal bar chart of (value, count) rows, largest on top."""
    shown = rows[:top] if top else rows
    labels = [value for value, _ in shown]
    counts = [count for _, count in shown]
    height = max(2.0, 0.4 * len(shown) + 1.2)
    fig, ax = plt.subplots(figsize=(7, height))
    positions = range(len(shown))
    ax.barh(positions, counts, color="#4878a8")
    ax.set_yticks(list(positions))
    ax.set_yticklabels(labels)
    ax.invert_yaxis()
    ax.set_xlabel("occurrences")
    if title:
        ax.set_title(title)
    for pos, count in zip(positions, counts):
        ax.text(count, pos, f" {count}", va="center", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
