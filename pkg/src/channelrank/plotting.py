"""Figure rendering for experiment reports.

One accuracy-versus-prefix-size curve per (setting, method, classifier)
combination, plus a summary bar chart of the efficiency ratios.  Files are
written next to the CSV output; nothing is shown interactively.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .evaluation import ExperimentReport

__all__ = ["save_curve_figure", "save_rho_summary", "render_report_figures"]


def save_curve_figure(report: ExperimentReport, path) -> Path:
    """Plot the sweep curve(s) of one report row and save as PNG.

    Horizontal rows draw one faint line per trial plus the trial mean;
    vertical rows draw the single sweep.  The all-channels baseline is a
    dashed horizontal line.
    """
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    curves = [(d.trial_index, d.sweep) for d in report.detail]
    if len(curves) == 1:
        _, sw = curves[0]
        ns = [n for n, _ in sw.per_n]
        ax.plot(ns, [a for _, a in sw.per_n], marker="o", ms=3, lw=1.2, color="tab:blue")
    else:
        max_len = max(len(sw.per_n) for _, sw in curves)
        mean = [0.0] * max_len
        for _, sw in curves:
            ns = [n for n, _ in sw.per_n]
            accs = [a for _, a in sw.per_n]
            ax.plot(ns, accs, lw=0.6, alpha=0.25, color="tab:blue")
            for i, a in enumerate(accs):
                mean[i] += a / len(curves)
        ax.plot(range(1, max_len + 1), mean, lw=1.8, color="tab:blue", label="trial mean")
        ax.legend(loc="lower right", fontsize=8)
    ax.axhline(report.baseline_ca, ls="--", lw=1.0, color="tab:gray")
    ax.annotate(
        f"baseline {report.baseline_ca:.2f}%",
        xy=(0.02, 0.02),
        xycoords="axes fraction",
        fontsize=8,
        color="tab:gray",
    )
    ax.set_xlabel("top-n channels")
    ax.set_ylabel("accuracy (%)")
    ax.set_title(
        f"{report.dataset}: {report.method} + {report.classifier} ({report.setting})",
        fontsize=10,
    )
    ax.grid(alpha=0.3)
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def save_rho_summary(reports: list[ExperimentReport], path) -> Path:
    """Bar chart of the efficiency ratio for every report row."""
    path = Path(path)
    labels = [f"{r.setting[:4]}/{r.method}/{r.classifier}" for r in reports]
    values = [r.rho for r in reports]
    fig, ax = plt.subplots(figsize=(max(6.0, 0.45 * len(reports) + 2.0), 4.0))
    bars = ax.bar(range(len(reports)), values, color="tab:blue")
    for bar, r in zip(bars, reports):
        if r.single_feature:
            bar.set_color("tab:orange")
    ax.set_xticks(range(len(reports)))
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=7)
    ax.set_ylabel("accuracy / selected channels")
    ax.set_title("efficiency ratio by combination (orange: single channel)", fontsize=10)
    ax.grid(axis="y", alpha=0.3)
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_report_figures(reports: list[ExperimentReport], out_dir) -> list[Path]:
    """Write one curve figure per report plus the ratio summary."""
    out_dir = Path(out_dir)
    paths = []
    for r in reports:
        name = f"curve_{r.setting}_{r.method}_{r.classifier}.png"
        paths.append(save_curve_figure(r, out_dir / name))
    if reports:
        paths.append(save_rho_summary(reports, out_dir / "rho_summary.png"))
    return paths
