"""SVG figures for sweep results and degree tables.

Figures are written as SVG with text kept as text and a fixed hash salt, so
the same inputs give byte-identical files. Each plotted series is wrapped in
an SVG group whose id is ``series-<index>``, which makes the files easy to
inspect (or test) by hand.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .analysis import CcdfTable, ExponentFit  # noqa: E402

KINDS = ("line", "loglog", "scatter")
COLORS = ("#3969b1", "#cc2529", "#3e9651", "#000000", "#da7c30", "#6b4c9a", "#922428")

STYLE = {
    "svg.fonttype": "none",
    "svg.hashsalt": "twotype",
    "axes.spines.right": False,
    "axes.spines.top": False,
    "axes.labelsize": 11,
    "legend.fontsize": 8,
    "legend.framealpha": 0.5,
    "xtick.labelsize": 9,
    "ytick.labelsize": 9,
    "figure.figsize": (5.5, 4.0),
    "path.simplify": False,
}


def _save(fig, path, description=None) -> Path:
    path = Path(path)
    metadata = {"Date": None, "Creator": "twotype"}
    if description:
        metadata["Description"] = description
    try:
        fig.savefig(path, format="svg", metadata=metadata)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    finally:
        plt.close(fig)
    return path


def plot_lines(x, ys: dict, path, xlabel="", ylabel="", logx=False, logy=False,
               xticklabels=None, markers=False, description=None) -> Path:
    """One line per entry of ``ys`` (label -> y values); NaN points leave gaps."""
    if not ys or all(len(y) == 0 for y in ys.values()):
        raise ValueError("nothing to plot: empty result")
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for idx, (label, y) in enumerate(ys.items()):
            ax.plot(x, y, color=COLORS[idx % len(COLORS)], label=label or None, gid=f"series-{idx}",
                    marker="o" if markers else None, markersize=3)
        if xticklabels is not None:
            ax.set_xticks(x)
            ax.set_xticklabels(xticklabels)
        if logx:
            ax.set_xscale("log")
        if logy:
            ax.set_yscale("log")
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if any(ys):
            ax.legend(loc="best")
        fig.tight_layout()
        return _save(fig, path, description)


def plot_ccdf(tables: dict, path, fits: dict | None = None, description=None) -> Path:
    """Log-log CCDFs (label -> :class:`CcdfTable`) with fitted slopes annotated.

    A fit draws a dashed reference line over its window and the label
    ``-gamma_hat`` with two decimals, e.g. ``-2.00`` for a ``k^-2`` tail.
    """
    tables = {k: v for k, v in tables.items() if len(v.k)}
    if not tables:
        raise ValueError("nothing to plot: empty result")
    fits = fits or {}
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for idx, (label, table) in enumerate(tables.items()):
            color = COLORS[idx % len(COLORS)]
            ax.plot(table.k, table.value, color=color, label=str(label), gid=f"series-{idx}",
                    drawstyle="steps-post")
            fit: ExponentFit | None = fits.get(label)
            if fit is None:
                continue
            lo, hi = fit.k_min, fit.k_max
            anchor = float(np.interp(lo, table.k, table.value))
            ks = np.array([lo, hi], dtype=float)
            ax.plot(ks, anchor * (ks / lo) ** (-fit.gamma_hat), color=color, linestyle="--", linewidth=0.8)
            ax.annotate(f"{-fit.gamma_hat:.2f}", xy=(np.sqrt(lo * hi), anchor * np.sqrt(hi / lo) ** (-fit.gamma_hat)),
                        xytext=(4, 4), textcoords="offset points", color=color, fontsize=9)
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("degree k")
        ax.set_ylabel("P(D >= k)")
        ax.legend(loc="lower left")
        fig.tight_layout()
        return _save(fig, path, description)


def plot_scatter(points: dict, path, xlabel="degree to type 1", ylabel="degree to type 2",
                 description=None) -> Path:
    """Scatter of 2-column arrays (label -> points) on log1p-scaled axes."""
    points = {k: np.asarray(v).reshape(-1, 2) for k, v in points.items()}
    if not points or all(v.shape[0] == 0 for v in points.values()):
        raise ValueError("nothing to plot: empty result")
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for idx, (label, pts) in enumerate(points.items()):
            ax.scatter(pts[:, 0], pts[:, 1], s=4, color=COLORS[idx % len(COLORS)], label=str(label),
                       gid=f"series-{idx}", alpha=0.6, linewidths=0)
        # Degrees to one type are often zero, so a symmetric log keeps them visible.
        ax.set_xscale("symlog", linthresh=1)
        ax.set_yscale("symlog", linthresh=1)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.legend(loc="best", markerscale=3)
        fig.tight_layout()
        return _save(fig, path, description)


def _metric_column(result, metric: str) -> str:
    if metric in result.columns:
        return metric
    if f"{metric}_mean" in result.columns:
        return f"{metric}_mean"
    raise ValueError(f"unknown metric {metric!r}; columns are {result.columns}")


def emit_plot(result, kind: str, path, metric: str | None = None, description=None) -> Path:
    """Render a :class:`~twotype.experiments.SweepResult` to an SVG file.

    ``line`` draws ``metric`` (default: the first metric) against the swept
    parameter, one line per series; without a swept parameter the series
    themselves are the x positions. ``loglog`` draws the kept per-type degree
    CCDFs with fitted slopes (or, without kept detail, the ``line`` plot on
    log-log axes). ``scatter`` draws the kept per-vertex (degree to type 1,
    degree to type 2) pairs.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if not result.rows:
        raise ValueError("nothing to plot: empty result")
    spec = result.spec
    if kind == "scatter":
        pts = {}
        for label, det in result.detail.items():
            for i in (1, 2):
                pts[f"{label} type {i}".strip()] = det["pairs"][i]
        if not pts:
            raise ValueError("scatter needs per-vertex detail (a PA preset with keep_detail)")
        return plot_scatter(pts, path, description=description)
    if kind == "loglog" and result.detail:
        tables, fits = {}, {}
        for label, det in result.detail.items():
            for i in (1, 2):
                name = f"{label} type {i}".strip()
                tables[name] = det["ccdf"][i]
                fits[name] = det["fits"].get(i)
        return plot_ccdf(tables, path, fits, description=description)

    metric = metric or spec.active_metrics[0]
    col = _metric_column(result, metric)
    labels = result.series_labels()
    if spec.sweep_param is not None:
        x = np.asarray(spec.grid, dtype=float)
        ys = {lbl: result.column(col, lbl) for lbl in labels}
        return plot_lines(x, ys, path, xlabel=spec.sweep_param, ylabel=metric,
                          logx=kind == "loglog", logy=kind == "loglog", description=description)
    x = np.arange(len(labels), dtype=float)
    y = np.array([result.column(col, lbl)[0] for lbl in labels])
    return plot_lines(x, {"": y}, path, ylabel=metric, xticklabels=labels, markers=True,
                      logy=kind == "loglog", description=description)


def ccdf_from_power_law(gamma: float, k_max: int) -> CcdfTable:
    """Exact CCDF ``k^-gamma`` on ``1..k_max`` (reference curves and tests)."""
    k = np.arange(1, k_max + 1, dtype=float)
    return CcdfTable(k, k ** (-gamma))
