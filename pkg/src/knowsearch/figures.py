"""Render report figures to files next to the delimited outputs.

Five views of an experiment: cost distributions per rule (violins),
per-patent search progress, cost against network size and density with
fitted lines, and cost dispersion by patent value category.  All figures
are derived from the same records the CSV outputs carry; skipping them
never changes the data outputs.
"""
from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .errors import ConstantX, DegenerateInput
from .stats import descriptive, linear_fit

_RULE_COLORS = {
    "bfs": "#0072b2",
    "dfs": "#d55e00",
    "familiarity": "#009e73",
    "degree": "#e69f00",
    "recency": "#cc79a7",
}
_VALUE_ORDER = ("zero_cited", "medium_cited", "highly_cited")
_VALUE_LABELS = {"zero_cited": "zero", "medium_cited": "medium", "highly_cited": "high"}


def _color(rule: str) -> str:
    return _RULE_COLORS.get(rule, "#555555")


def _by_rule(records, metric: str) -> dict[str, list[float]]:
    out: dict[str, list[float]] = defaultdict(list)
    for r in records:
        out[r.rule].append(float(getattr(r, metric)))
    return out


def _save(fig, path: Path) -> Path:
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_cost_violins(records, path: Path) -> Path | None:
    """Distributions of TSC and NSN per rule, ordered by mean."""
    panels = [("tsc", "total search cost"), ("nsn", "searched nodes")]
    fig, axes = plt.subplots(1, 2, figsize=(11, 4.2))
    drew = False
    for ax, (metric, label) in zip(axes, panels):
        data = _by_rule(records, metric)
        rules = sorted(data, key=lambda r: descriptive(data[r]).mean)
        series = [data[r] for r in rules]
        if not series:
            continue
        drew = True
        parts = ax.violinplot(series, showmeans=True, showextrema=False)
        for body, rule in zip(parts["bodies"], rules):
            body.set_facecolor(_color(rule))
            body.set_alpha(0.6)
        ax.set_xticks(range(1, len(rules) + 1))
        ax.set_xticklabels(rules, rotation=20)
        ax.set_ylabel(label)
    if not drew:
        plt.close(fig)
        return None
    fig.suptitle("Search cost by rule")
    fig.tight_layout()
    return _save(fig, path)


def plot_progress(outcomes, path: Path, max_patents: int = 6) -> Path | None:
    """Solution elements found per step for the first few patents."""
    with_traces = [o for o in outcomes if o.traces][:max_patents]
    if not with_traces:
        return None
    n = len(with_traces)
    cols = min(3, n)
    rows = (n + cols - 1) // cols
    fig, axes = plt.subplots(rows, cols, figsize=(4.0 * cols, 3.2 * rows), squeeze=False)
    for idx, outcome in enumerate(with_traces):
        ax = axes[idx // cols][idx % cols]
        for rule in sorted(outcome.traces):
            steps = outcome.traces[rule]
            xs = [s.index for s in steps]
            ys = [s.skes_found for s in steps]
            ax.step(xs, ys, where="post", label=rule, color=_color(rule), lw=1.2)
        ax.set_title(outcome.focal_id, fontsize=9)
        ax.set_xlabel("step")
        ax.set_ylabel("SKEs found")
    for idx in range(n, rows * cols):
        axes[idx // cols][idx % cols].axis("off")
    handles, labels = axes[0][0].get_legend_handles_labels()
    fig.legend(handles, labels, loc="lower center", ncol=len(labels), frameon=False)
    fig.tight_layout(rect=(0, 0.06, 1, 1))
    return _save(fig, path)


def _scatter_with_fit(records, x_attr: str, x_label: str, path: Path) -> Path | None:
    by_rule: dict[str, list] = defaultdict(list)
    for r in records:
        by_rule[r.rule].append(r)
    rules = sorted(by_rule)
    if not rules:
        return None
    fig, axes = plt.subplots(1, len(rules), figsize=(3.2 * len(rules), 3.4), squeeze=False)
    for ax, rule in zip(axes[0], rules):
        recs = by_rule[rule]
        xs = [float(getattr(r, x_attr)) for r in recs]
        ys = [r.tsc for r in recs]
        ax.scatter(xs, ys, s=12, alpha=0.7, color=_color(rule))
        try:
            fit = linear_fit(xs, ys)
            lo, hi = min(xs), max(xs)
            ax.plot(
                [lo, hi],
                [fit.slope * lo + fit.intercept, fit.slope * hi + fit.intercept],
                color="black",
                lw=1,
            )
            ax.set_title(f"{rule}  (R²={fit.r_squared:.2f})", fontsize=9)
        except (ConstantX, DegenerateInput):
            ax.set_title(rule, fontsize=9)
        ax.set_xlabel(x_label)
        ax.set_ylabel("TSC")
    fig.tight_layout()
    return _save(fig, path)


def plot_tsc_vs_size(records, path: Path) -> Path | None:
    return _scatter_with_fit(records, "lcc_nodes", "LCC nodes", path)


def plot_tsc_vs_density(records, path: Path) -> Path | None:
    return _scatter_with_fit(records, "lcc_density", "LCC density", path)


def plot_value_dispersion(records, path: Path) -> Path | None:
    """Std deviation of TSC per rule and value category."""
    cells: dict[str, dict[str, list[float]]] = defaultdict(lambda: defaultdict(list))
    for r in records:
        if r.value_category:
            cells[r.rule][r.value_category].append(r.tsc)
    rules = sorted(cells)
    if not rules:
        return None
    fig, ax = plt.subplots(figsize=(7.5, 4))
    width = 0.8 / len(_VALUE_ORDER)
    drew = False
    for ci, cat in enumerate(_VALUE_ORDER):
        xs, hs = [], []
        for ri, rule in enumerate(rules):
            vals = cells[rule].get(cat)
            if not vals or len(vals) < 2:
                continue
            xs.append(ri + ci * width)
            hs.append(descriptive(vals).std)
        if xs:
            drew = True
            ax.bar(xs, hs, width=width, label=_VALUE_LABELS[cat])
    if not drew:
        plt.close(fig)
        return None
    ax.set_xticks([i + width for i in range(len(rules))])
    ax.set_xticklabels(rules, rotation=20)
    ax.set_ylabel("std dev of TSC")
    ax.legend(title="citations", frameon=False)
    fig.tight_layout()
    return _save(fig, path)


def render_report_figures(report, outdir: str | Path) -> list[Path]:
    """Render the full figure set for an experiment report."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for result in (
        plot_cost_violins(report.records, out / "cost_violins.png"),
        plot_progress(report.outcomes, out / "search_progress.png"),
        plot_tsc_vs_size(report.records, out / "tsc_vs_size.png"),
        plot_tsc_vs_density(report.records, out / "tsc_vs_density.png"),
        plot_value_dispersion(report.records, out / "tsc_std_by_value.png"),
    ):
        if result is not None:
            written.append(result)
    return written
