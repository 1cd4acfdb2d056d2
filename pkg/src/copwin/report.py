"""Report persistence: JSON / JSON-lines plus rendered figures.

Every saved report gets a PNG chart next to it (same stem), so a campaign
directory reads at a glance without reprocessing the delimited output.
"""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .campaign import ClassReport
from .merge import MergeReport


def save_class_report(report: ClassReport, path: str | Path, figure: bool = True) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
    if figure:
        render_class_figure(report, path.with_suffix(".png"))
    return path


def render_class_figure(report: ClassReport, path: str | Path) -> Path:
    path = Path(path)
    buckets = [str(k) for k in range(1, report.k_max + 1)] + [f">{report.k_max}"]
    counts = [report.totals.get(b, 0) for b in buckets]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar(buckets, counts, color="#33658a")
    ax.set_xlabel("cop number")
    ax.set_ylabel("graphs")
    if max(counts, default=0) > 0:
        ax.set_yscale("symlog")
    spec = report.spec
    title = ", ".join(f"{k}={v}" for k, v in spec.items()) if spec else "classification"
    ax.set_title(f"{title} (total {report.total})", fontsize=9)
    for i, c in enumerate(counts):
        ax.text(i, c, str(c), ha="center", va="bottom", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_merge_report(report: MergeReport, path: str | Path, figure: bool = True) -> Path:
    """One JSON line per table row, then a totals line."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = []
    for r in report.rows:
        lines.append(
            json.dumps(
                {
                    "delta": report.delta,
                    "n": report.n,
                    "delta1": r.delta1,
                    "g1_count": r.g1_count,
                    "d1": r.d1,
                    "bases": r.base_count,
                    "finals": r.final_count,
                    "cop_tallies": dict(sorted(r.cop_tallies.items())),
                },
                sort_keys=True,
            )
        )
    lines.append(
        json.dumps(
            {"total_bases": report.base_count, "total_finals": report.final_count},
            sort_keys=True,
        )
    )
    path.write_text("\n".join(lines) + "\n")
    if figure:
        render_merge_figure(report, path.with_suffix(".png"))
    return path


def render_merge_figure(report: MergeReport, path: str | Path) -> Path:
    path = Path(path)
    labels = [f"Δ1={r.delta1},d1={r.d1}" for r in report.rows] or ["(no rows)"]
    bases = [r.base_count for r in report.rows] or [0]
    finals = [r.final_count for r in report.rows] or [0]
    x = range(len(labels))
    fig, ax = plt.subplots(figsize=(max(4, 1.3 * len(labels)), 3.2))
    ax.bar([i - 0.2 for i in x], bases, width=0.4, label="bases", color="#33658a")
    ax.bar([i + 0.2 for i in x], finals, width=0.4, label="finals", color="#f26419")
    ax.set_xticks(list(x))
    ax.set_xticklabels(labels, fontsize=8)
    if max(bases + finals) > 0:
        ax.set_yscale("symlog")
    ax.set_title(f"merge n={report.n}, Δ={report.delta}", fontsize=9)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
