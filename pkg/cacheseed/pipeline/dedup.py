"""
MAS の重複除去とラベル付け。

複数のワークロードの集合に現れた MAS は、どのサイズが最適かを
予測する手掛かりにならないため全ての集合から取り除く。
残った集合には、そのワークロードの最適サイズをラベルとして付ける。
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from cacheseed.models.levels import LevelSet, LlcSizeLevel
from cacheseed.workloads.spec import WorkloadSpec
from .cost import DEFAULT_COST_MODE
from .profiler import ProfileDataset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LabeledSet:
    workload: WorkloadSpec
    level: LlcSizeLevel
    mas: frozenset[int]


@dataclass(frozen=True)
class LabeledMasSets:
    levels: LevelSet
    sets: tuple[LabeledSet, ...]
    removed: int = 0

    @property
    def total_inserts(self) -> int:
        return sum(len(s.mas) for s in self.sets)

    def counts_by_level(self) -> list[int]:
        counts = [0] * len(self.levels)
        for s in self.sets:
            counts[s.level.index] += len(s.mas)
        return counts


def remove_shared(sets: Iterable[frozenset[int]]) -> list[frozenset[int]]:
    """2 つ以上の集合に現れる値を全集合から除いたものを返す。"""
    sets = list(sets)
    occurrences = Counter(value for s in sets for value in s)
    shared = {value for value, n in occurrences.items() if n >= 2}
    return [frozenset(s - shared) for s in sets]


def dedup_mas(
    dataset: ProfileDataset,
    mode: str = DEFAULT_COST_MODE,
    *,
    apps: Iterable[str] | None = None,
) -> LabeledMasSets:
    """apps を指定した場合は、そのアプリケーションの実行だけで重複除去する。"""
    selected = set(apps) if apps is not None else None
    runs = [r for r in dataset.runs if selected is None or r.app in selected]
    kept = remove_shared(r.mas_set for r in runs)
    sets = tuple(
        LabeledSet(run.workload, dataset.optimal_level(run, mode), mas) for run, mas in zip(runs, kept)
    )
    before = sum(len(r.mas_set) for r in runs)
    after = sum(len(s) for s in kept)
    logger.info("MAS 重複除去: %d -> %d（%d 集合）", before, after, len(sets))
    for s in sets:
        logger.debug("  %s: %d MAS -> %s", s.workload.label, len(s.mas), s.level.label)
    return LabeledMasSets(dataset.levels, sets, removed=before - after)
