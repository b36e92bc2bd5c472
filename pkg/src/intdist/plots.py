"""SVG rendering for the CLI report paths.

matplotlib is imported lazily with the Agg backend so that library use never
requires a display, and the SVG metadata date is stripped so repeated runs
stay byte-comparable.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "render_compare",
    "render_curves",
    "render_fit",
    "render_histogram",
    "render_horwitz",
    "render_oracle",
]


def _plt():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def _save(fig, path: str) -> None:
    fig.savefig(path, format="svg", metadata={"Date": None})
    _plt().close(fig)


def render_fit(path, hist, overlay_x, overlay_pdf, series) -> None:
    """Histogram bars with the fitted density, plus the PP scatter."""
    plt = _plt()
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.2))
    widths = np.diff(hist.edges)
    ax1.bar(
        hist.edges[:-1],
        hist.densities,
        width=widths,
        align="edge",
        color="#9ecae1",
        edgecolor="#3182bd",
        linewidth=0.4,
        label="data",
    )
    ax1.plot(overlay_x, overlay_pdf, color="#d7301f", linewidth=1.6, label="fit")
    ax1.set_xlabel("value")
    ax1.set_ylabel("density")
    ax1.legend(frameon=False)
    ax2.plot([0, 1], [0, 1], color="#888888", linewidth=0.8)
    ax2.plot(
        series.p_exp, series.p_theo, ".", color="#3182bd", markersize=3.5
    )
    ax2.set_xlabel("empirical probability")
    ax2.set_ylabel("model probability")
    ax2.set_aspect("equal")
    fig.tight_layout()
    _save(fig, path)


def render_curves(path, x, pdf_vals, cdf_vals) -> None:
    plt = _plt()
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.2))
    ax1.plot(x, pdf_vals, color="#d7301f", linewidth=1.6)
    ax1.set_xlabel("value")
    ax1.set_ylabel("density")
    ax2.plot(x, cdf_vals, color="#3182bd", linewidth=1.6)
    ax2.set_xlabel("value")
    ax2.set_ylabel("cumulative probability")
    fig.tight_layout()
    _save(fig, path)


def render_histogram(path, values) -> None:
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6, 4.2))
    if len(values):
        ax.hist(values, bins=min(60, max(5, len(values) // 20 + 5)), density=True,
                color="#9ecae1", edgecolor="#3182bd", linewidth=0.4)
    ax.set_xlabel("value")
    ax.set_ylabel("density")
    fig.tight_layout()
    _save(fig, path)


def render_horwitz(path, p, cv_theory, cv_trend) -> None:
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6, 4.2))
    ax.loglog(p, cv_theory, color="#3182bd", linewidth=1.6, label="theoretical")
    ax.loglog(p, cv_trend, color="#d7301f", linewidth=1.2, linestyle="--",
              label="empirical trend")
    ax.set_xlabel("mass fraction")
    ax.set_ylabel("coefficient of variation")
    ax.legend(frameon=False)
    fig.tight_layout()
    _save(fig, path)


def render_compare(path, report) -> None:
    plt = _plt()
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.2))
    ax1.plot(report.r, report.lhs, color="#3182bd", linewidth=1.6, label="(r-1)/sqrt(r)")
    ax1.plot(report.r, report.rhs, color="#d7301f", linewidth=1.2, linestyle="--",
             label="ln r")
    ax1.set_xlabel("r")
    ax1.legend(frameon=False)
    ax2.plot(report.r, report.pdf_skew, color="#3182bd", linewidth=1.6, label="skewed law")
    ax2.plot(report.r, report.pdf_lognormal, color="#d7301f", linewidth=1.2,
             linestyle="--", label="log-normal")
    ax2.set_xlabel("value")
    ax2.set_ylabel("density")
    ax2.legend(frameon=False)
    fig.tight_layout()
    _save(fig, path)


def render_oracle(path, m, exact, approx) -> None:
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6, 4.2))
    ax.plot(m, exact, color="#3182bd", linewidth=1.6, label="exact")
    ax.plot(m, approx, color="#d7301f", linewidth=1.2, linestyle="--", label="approx")
    ax.set_xlabel("m")
    ax.set_ylabel("probability")
    ax.legend(frameon=False)
    fig.tight_layout()
    _save(fig, path)
