"""LLC のセット別アクセス数ダンプ（セットごとの read/write ヒット・ミス）。"""
from __future__ import annotations

from pathlib import Path

import pandas as pd

from cacheseed.common.errors import ParameterError
from .hierarchy import HierarchyState

SET_DUMP_COLUMNS = ["set_index", "read_hits", "read_misses", "write_hits", "write_misses"]


def set_counts_frame(set_counts: list[list[int]]) -> pd.DataFrame:
    df = pd.DataFrame(set_counts, columns=SET_DUMP_COLUMNS[1:])
    df.insert(0, "set_index", range(len(set_counts)))
    return df


def state_set_frame(state: HierarchyState) -> pd.DataFrame:
    if state.set_counts is None:
        raise ParameterError("セット別カウントが有効になっていません（track_sets=True で初期化してください）。")
    return set_counts_frame(state.set_counts)


def write_set_dump(df: pd.DataFrame, out_path: Path) -> Path:
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(out_path, index=False, encoding="utf-8")
    return out_path
