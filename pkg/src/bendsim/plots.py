"""Matplotlib figures rendered next to the CSV reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .table import SweepTable  # noqa: E402

__all__ = ["plot_bend", "plot_force", "plot_adapt"]

_FIGSIZE = (6.0, 4.0)
_DPI = 150


def _new_axes(xlabel: str, ylabel: str):
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.4)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    return fig, ax


def _save(fig, path: str) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def plot_bend(table: SweepTable, path: str, label: str = "") -> None:
    fig, ax = _new_axes("pressure (kPa)", "tip deflection (deg)")
    ax.plot(table.column("pressure_kPa"), table.column("tip_angle_deg"),
            marker="o", ms=3.5, color="#2b6ca3", label=label or None)
    if label:
        ax.legend(frameon=False)
    _save(fig, path)


def plot_force(table: SweepTable, path: str, label: str = "") -> None:
    fig, ax = _new_axes("pressure (kPa)", "blocked tip force (N)")
    ax.plot(table.column("pressure_kPa"), table.column("force_N"),
            marker="o", ms=3.5, color="#a3402b", label=label or None)
    if label:
        ax.legend(frameon=False)
    _save(fig, path)


def plot_adapt(table: SweepTable, path: str, label: str = "") -> None:
    fig, ax = _new_axes("pressure (kPa)", "gap to surface (mm)")
    p = table.column("pressure_kPa")
    ax.plot(p, table.column("mean_gap_mm"), marker="o", ms=3.5,
            color="#2b6ca3", label="mean gap")
    ax.plot(p, table.column("max_gap_mm"), marker="s", ms=3.5,
            color="#7a9cc4", label="max gap")
    ax2 = ax.twinx()
    ax2.plot(p, table.column("contact_fraction"), marker="^", ms=3.5,
             color="#3f8f4f", label="contact fraction")
    ax2.set_ylabel("contact fraction")
    ax2.set_ylim(-0.02, 1.02)
    ax2.spines["top"].set_visible(False)
    lines, labels = ax.get_legend_handles_labels()
    lines2, labels2 = ax2.get_legend_handles_labels()
    ax.legend(lines + lines2, labels + labels2, frameon=False,
              title=label or None, loc="upper left")
    _save(fig, path)
