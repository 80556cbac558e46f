"""
コーパスのプロファイリング（全サイズレベル × 全ワークロードの固定サイズ実行）。

各ワークロードを全レベルで 1 回ずつ実行してサイクル数を記録し、
profiling_level（既定 100%）の実行中に観測した MAS を集合として保持する。
"""
from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import pandas as pd

from cacheseed.cache_sim.geometry import MachineModel
from cacheseed.cache_sim.hierarchy import HierarchyState
from cacheseed.cache_sim.runner import RunMetrics, run_trace
from cacheseed.common.errors import CacheSeedError, DataFormatError, DatasetError
from cacheseed.models.levels import LevelSet, LlcSizeLevel
from cacheseed.selectors.base import FixedSelector
from cacheseed.signatures.mas import mas_from_hex, mas_to_hex
from cacheseed.workloads.corpus import gen_corpus
from cacheseed.workloads.spec import WorkloadSpec
from .cost import COST_FUNCTIONS, optimal_size

logger = logging.getLogger(__name__)

DATASET_VERSION = 1


class MasRecorder(FixedSelector):
    """固定サイズで実行しながら、LLC アクセスごとの MAS を集める。"""

    observes_llc_accesses = True

    def __init__(self, levels: LevelSet, level: LlcSizeLevel):
        super().__init__(levels, level)
        self.mas_set: set[int] = set()

    def on_llc_access(self, mas: int) -> None:
        self.mas_set.add(mas)
        return None


@dataclass(frozen=True)
class ProfileRun:
    workload: WorkloadSpec
    cycles_by_level: tuple[int, ...]
    metrics_by_level: tuple[RunMetrics, ...]
    mas_set: frozenset[int]

    @property
    def app(self) -> str:
        return self.workload.name

    @property
    def label(self) -> str:
        return self.workload.label

    def to_dict(self) -> dict:
        return {
            "workload": self.workload.to_dict(),
            "cycles": list(self.cycles_by_level),
            "metrics": [m.to_dict() for m in self.metrics_by_level],
            "mas": [mas_to_hex(v) for v in sorted(self.mas_set)],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ProfileRun":
        w = data["workload"]
        return cls(
            workload=WorkloadSpec(w["name"], int(w["data_size"]), int(w["seed"]), int(w["iterations"])),
            cycles_by_level=tuple(int(c) for c in data["cycles"]),
            metrics_by_level=tuple(RunMetrics.from_dict(m) for m in data["metrics"]),
            mas_set=frozenset(mas_from_hex(v) for v in data["mas"]),
        )


@dataclass(frozen=True)
class ProfileDataset:
    machine: MachineModel
    levels: LevelSet
    profiling_level: float
    runs: tuple[ProfileRun, ...]

    def __post_init__(self):
        for run in self.runs:
            if len(run.cycles_by_level) != len(self.levels):
                raise DatasetError(f"{run.label}: サイズレベル数分のサイクル数がありません。")

    def optimal_level(self, run: ProfileRun, mode: str) -> LlcSizeLevel:
        return optimal_size(run.cycles_by_level, mode, self.levels)

    def to_dict(self) -> dict:
        return {
            "version": DATASET_VERSION,
            "geometry": self.machine.to_dict(),
            "levels": list(self.levels.fractions),
            "profiling_level": self.profiling_level,
            "runs": [run.to_dict() for run in self.runs],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ProfileDataset":
        if data.get("version") != DATASET_VERSION:
            raise DataFormatError(f"未対応のデータセットのバージョンです: {data.get('version')}")
        try:
            return cls(
                machine=MachineModel.from_dict(data["geometry"]),
                levels=LevelSet(data["levels"]),
                profiling_level=float(data["profiling_level"]),
                runs=tuple(ProfileRun.from_dict(r) for r in data["runs"]),
            )
        except DatasetError:
            raise
        except (KeyError, TypeError, ValueError, CacheSeedError) as e:
            raise DataFormatError(f"データセットの内容が不正です: {e}") from e

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n", encoding="utf-8")
        logger.info("データセットを書き出しました: %s (%d 実行)", path, len(self.runs))
        return path

    @classmethod
    def read(cls, path: str | Path) -> "ProfileDataset":
        path = Path(path)
        if not path.is_file():
            raise FileNotFoundError(f"データセットが見つかりません: {path}")
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise DataFormatError(f"データセットが JSON として読めません: {path}", offset=e.pos) from e
        return cls.from_dict(data)

    def table(self) -> pd.DataFrame:
        """(app, data_size, level) ごとのサイクル数と最適サイズの印。"""
        rows = []
        for run in self.runs:
            marks = {mode: self.optimal_level(run, mode).index for mode in sorted(COST_FUNCTIONS)}
            for level in self.levels:
                row = {
                    "app": run.app,
                    "data_size": run.workload.data_size,
                    "level": level.label,
                    "cycles": run.cycles_by_level[level.index],
                }
                for mode, index in marks.items():
                    row[f"optimal_{mode}"] = "X" if index == level.index else ""
                rows.append(row)
        return pd.DataFrame(rows)


def profile_run(
    machine: MachineModel,
    workload: WorkloadSpec,
    levels: LevelSet,
    level_index: int,
    collect_mas: bool,
) -> tuple[RunMetrics, frozenset[int]]:
    """1 ワークロードを 1 レベルに固定して実行する（プロセスプールからも呼ばれる）。"""
    recorder = MasRecorder(levels, levels[level_index])
    if not collect_mas:
        recorder.observes_llc_accesses = False
    state = HierarchyState(machine)
    metrics = run_trace(state, gen_corpus(workload), recorder)
    logger.debug("プロファイル実行: %s @%s cycles=%d", workload.label, levels[level_index].label, metrics.cycles)
    return metrics, frozenset(recorder.mas_set)


def profile_corpus(
    machine: MachineModel,
    corpus: Sequence[WorkloadSpec],
    levels: LevelSet,
    *,
    profiling_level: float = 1.0,
    workers: int = 1,
) -> ProfileDataset:
    mas_level = levels.by_fraction(profiling_level).index
    tasks = [(w, level.index) for w in corpus for level in levels]
    logger.info("プロファイリング開始: %d ワークロード × %d レベル", len(corpus), len(levels))

    results: dict[tuple[int, int], tuple[RunMetrics, frozenset[int]]] = {}
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {
                (i, index): pool.submit(profile_run, machine, w, levels, index, index == mas_level)
                for i, w in enumerate(corpus)
                for index in range(len(levels))
            }
            for key, future in futures.items():
                results[key] = future.result()
    else:
        for i, w in enumerate(corpus):
            for index in range(len(levels)):
                results[(i, index)] = profile_run(machine, w, levels, index, index == mas_level)

    runs = []
    for i, w in enumerate(corpus):
        per_level = [results[(i, index)] for index in range(len(levels))]
        runs.append(
            ProfileRun(
                workload=w,
                cycles_by_level=tuple(m.cycles for m, _ in per_level),
                metrics_by_level=tuple(m for m, _ in per_level),
                mas_set=per_level[mas_level][1],
            )
        )
    logger.info("プロファイリング完了: %d 実行", len(tasks))
    return ProfileDataset(machine, levels, profiling_level, tuple(runs))
