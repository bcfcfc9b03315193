"""Rendering of reduction reports: delimited per-step table plus figures."""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .proxy import ReductionReport


def write_report(report: ReductionReport, out_dir: str) -> list[str]:
    """Write report.csv and states.png into out_dir; returns the paths."""
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, "report.csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["step", "name", "states_before", "states_after", "millis"])
        for i, step in enumerate(report.steps):
            writer.writerow(
                [i, step.name, step.before, step.after, f"{step.millis:.3f}"]
            )
    png_path = os.path.join(out_dir, "states.png")
    _plot_states(report, png_path)
    return [csv_path, png_path]


def _plot_states(report: ReductionReport, path: str) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    counts = [report.states_in] + [s.after for s in report.steps]
    labels = ["input"] + [s.name for s in report.steps]
    xs = range(len(counts))
    ax.bar(xs, counts, color="#4878cf")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=30, ha="right")
    ax.set_ylabel("states")
    ax.set_title("state count per reduction step")
    for x, c in zip(xs, counts):
        ax.text(x, c, str(c), ha="center", va="bottom", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
