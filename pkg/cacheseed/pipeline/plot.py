"""有効 LLC サイズの時間変化のステップ図（ワークロードごとに 1 枚）。"""
from __future__ import annotations

import logging
from pathlib import Path

from cacheseed.common.errors import DataFormatError
from .experiment import Report

logger = logging.getLogger(__name__)


def plot_enabled_fraction(
    report: Report,
    workload_label: str,
    out_path: str | Path,
    *,
    figsize: tuple[float, float] = (8.0, 4.0),
    dpi: int = 120,
) -> Path:
    from matplotlib.figure import Figure

    rows = [r for r in report.rows if r.workload.label == workload_label and r.timeseries]
    if not rows:
        raise DataFormatError(f"時系列データのある行がありません: {workload_label}")

    fig = Figure(figsize=figsize, dpi=dpi, constrained_layout=True)
    ax = fig.add_subplot(111)
    for r in rows:
        cycles = [c for c, _ in r.timeseries]
        fractions = [f * 100 for _, f in r.timeseries]
        ax.step(cycles, fractions, where="post", label=r.selector)
    ax.set_xlabel("cycle")
    ax.set_ylabel("enabled LLC (%)")
    ax.set_ylim(0, 105)
    ax.set_title(workload_label)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="lower right")

    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path)
    logger.info("図を出力しました: %s", out_path)
    return out_path


def plot_report(report: Report, out_dir: str | Path) -> list[Path]:
    """時系列を持つ全ワークロードについて PNG を書き出す。"""
    out_dir = Path(out_dir)
    labels = list(dict.fromkeys(r.workload.label for r in report.rows if r.timeseries))
    return [
        plot_enabled_fraction(report, label, out_dir / f"{label.replace('/', '_')}.png")
        for label in labels
    ]
