"""Figure rendering for simulation reports.

The run command drops two PNGs next to its CSV: block error rate and
average query counts, both against Eb/N0.  Rendering uses the Agg backend
so it works headless.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .channel_sim import SimReport


def _style(ax, ylabel: str, title: str):
    ax.set_xlabel("Eb/N0 [dB]")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.4)


def plot_bler(report: SimReport, path: str) -> None:
    snrs = [pt.snr_db for pt in report.points]
    blers = [pt.bler for pt in report.points]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.plot(snrs, blers, marker="o", color="tab:blue",
            label=f"{report.code_name}, p={report.config.p}")
    if any(b > 0 for b in blers):
        ax.set_yscale("log")
    _style(ax, "BLER", f"{report.code_name} ({report.n},{report.k}), "
                       f"b={report.config.b}, b'={report.config.b_prime}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_queries(report: SimReport, path: str) -> None:
    snrs = [pt.snr_db for pt in report.points]
    checked = [pt.avg_queries_checked for pt in report.points]
    generated = [pt.avg_candidates_generated for pt in report.points]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.plot(snrs, checked, marker="o", color="tab:red", label="checked (codebook queries)")
    ax.plot(snrs, generated, marker="s", color="tab:gray", linestyle="--",
            label="considered (incl. discarded)")
    ax.set_yscale("log")
    _style(ax, "average queries per frame",
           f"{report.code_name} ({report.n},{report.k}), p={report.config.p}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_plots(report: SimReport, csv_path: str) -> list[str]:
    """Render the standard figure pair next to a CSV; returns written paths."""
    stem = os.path.splitext(csv_path)[0]
    bler_path = stem + "_bler.png"
    queries_path = stem + "_queries.png"
    plot_bler(report, bler_path)
    plot_queries(report, queries_path)
    return [bler_path, queries_path]
