"""
Report の表形式出力（CSV / Excel）。

- サマリ: ワークロード × セレクタごとに 1 行
- 時系列: (workload, selector, cycle, enabled_fraction) の縦持ち
- セット別ダンプ: (workload, selector, set_index, read/write × hit/miss)
"""
from __future__ import annotations

import logging
from pathlib import Path

import pandas as pd

from cacheseed.cache_sim.set_dump import set_counts_frame
from cacheseed.common.errors import DataFormatError
from .experiment import Report

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = [
    "workload",
    "selector",
    "cycles",
    "instructions",
    "llc_accesses",
    "llc_misses",
    "miss_rate",
    "mean_enabled_fraction",
    "reconfig_count",
    "dirty_writebacks",
]
# 列名と RunMetrics のフィールド名が異なるもの
METRIC_FIELDS = {"miss_rate": "llc_miss_rate"}


def summary_frame(report: Report) -> pd.DataFrame:
    rows = []
    for r in report.rows:
        metrics = r.metrics.to_dict()
        row = {"workload": r.workload.label, "selector": r.selector}
        row.update({key: metrics[METRIC_FIELDS.get(key, key)] for key in SUMMARY_COLUMNS[2:]})
        rows.append(row)
    return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)


def timeseries_frame(report: Report) -> pd.DataFrame:
    frames = [
        pd.DataFrame(
            {
                "workload": r.workload.label,
                "selector": r.selector,
                "cycle": [c for c, _ in r.timeseries],
                "enabled_fraction": [f for _, f in r.timeseries],
            }
        )
        for r in report.rows
        if r.timeseries
    ]
    if not frames:
        return pd.DataFrame(columns=["workload", "selector", "cycle", "enabled_fraction"])
    return pd.concat(frames, ignore_index=True)


def set_dump_frame(report: Report) -> pd.DataFrame:
    frames = []
    for r in report.rows:
        if r.set_counts is None:
            continue
        df = set_counts_frame([list(c) for c in r.set_counts])
        df.insert(0, "selector", r.selector)
        df.insert(0, "workload", r.workload.label)
        frames.append(df)
    if not frames:
        raise DataFormatError("レポートにセット別カウントが含まれていません（output.set_dump を有効にして実行してください）。")
    return pd.concat(frames, ignore_index=True)


def write_csv(df: pd.DataFrame, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False, encoding="utf-8")
    logger.info("CSV 出力: %s (%d 行)", path, len(df))
    return path


def write_excel(sheets: dict[str, pd.DataFrame], path: str | Path) -> Path:
    """シートごとに DataFrame を書き出し、列幅を内容に合わせる。"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    logger.info("Excel ファイル出力開始: %s", path)
    with pd.ExcelWriter(path, engine="xlsxwriter") as writer:
        for sheet_name, df in sheets.items():
            df.to_excel(writer, sheet_name=sheet_name, index=False)
            worksheet = writer.sheets[sheet_name]
            for idx, col in enumerate(df.columns):
                values = df[col].astype(str).map(len)
                max_len = max(values.max() if len(values) else 0, len(str(col))) + 2
                worksheet.set_column(idx, idx, max_len)
    logger.info("Excel ファイル出力完了")
    return path
