"""
LLC のブロック単位の再構成。

縮小時は最大 3 パスでブロックを無効化する（way が外側、set が内側のループ）。
  1 パス目: accessed でも dirty でもないブロック
  2 パス目: dirty でないブロック
  3 パス目: 残り全て（dirty は書き戻す）
どのパスでも、有効ブロックが 1 つしか残っていないセットには手を付けない。
拡大時はセットを巡回しながら、各セットで番号の最も小さい無効 way を
invalid / clean の状態で有効化する（コスト 0）。
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

from cacheseed.common.errors import LevelRangeError
from .hierarchy import HierarchyState
from .level import CacheLevel

logger = logging.getLogger(__name__)

MAX_PASSES = 3


@dataclass(frozen=True)
class ReconfigReport:
    blocks_disabled: int = 0
    blocks_enabled: int = 0
    dirty_writebacks: int = 0
    cycles_added: int = 0
    passes_used: int = 0


def shrink_level(level: CacheLevel, count: int) -> tuple[int, int, int]:
    """
    count 個のブロックを無効化する。

    Returns:
        (無効化したブロック数, 書き戻した dirty ブロック数, 使ったパス数)
    """
    geometry = level.geometry
    remaining = count
    disabled = 0
    write_backs = 0
    passes = 0
    while remaining > 0 and passes < MAX_PASSES:
        passes += 1
        for way in range(geometry.associativity):
            if remaining == 0:
                break
            for set_index in range(geometry.num_sets):
                if remaining == 0:
                    break
                if not level.enabled[set_index][way]:
                    continue
                if level.enabled_per_set[set_index] == 1:
                    continue
                if level.accessed[set_index][way] and passes < 2:
                    continue
                if level.dirty[set_index][way] and passes < 3:
                    continue
                if level.disable(set_index, way):
                    write_backs += 1
                disabled += 1
                remaining -= 1
    return disabled, write_backs, passes


def grow_level(level: CacheLevel, count: int) -> int:
    geometry = level.geometry
    enabled = 0
    while enabled < count:
        progressed = False
        for set_index in range(geometry.num_sets):
            if enabled == count:
                break
            flags = level.enabled[set_index]
            for way in range(geometry.associativity):
                if not flags[way]:
                    level.enable(set_index, way)
                    enabled += 1
                    progressed = True
                    break
        if not progressed:
            break
    return enabled


def reconfigure_llc(state: HierarchyState, target_enabled: int) -> ReconfigReport:
    geometry = state.machine.llc
    if not geometry.num_sets <= target_enabled <= geometry.total_blocks:
        raise LevelRangeError(
            f"有効ブロック数は [{geometry.num_sets}, {geometry.total_blocks}] の範囲で指定してください: "
            f"{target_enabled}"
        )
    current = state.llc.enabled_total
    if target_enabled == current:
        return ReconfigReport()

    if target_enabled > current:
        enabled = grow_level(state.llc, target_enabled - current)
        report = ReconfigReport(blocks_enabled=enabled)
    else:
        disabled, write_backs, passes = shrink_level(state.llc, current - target_enabled)
        cycles = write_backs * state.machine.memory_latency_cycles
        report = ReconfigReport(
            blocks_disabled=disabled,
            dirty_writebacks=write_backs,
            cycles_added=cycles,
            passes_used=passes,
        )
        if write_backs:
            state.counters.dirty_writebacks += write_backs
            # 3 パス目の書き戻しはパイプラインを止めるため、縮小後のサイズで加算する
            state.add_cycles(cycles)

    state.counters.reconfig_count += 1
    state.mark_timeline()
    logger.debug(
        "LLC 再構成: %d -> %d blocks (%s)", current, state.llc.enabled_total, report
    )
    return report
