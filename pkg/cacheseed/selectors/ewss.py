"""
EWSS: 命令ワーキングセットシグネチャによる位相検出とサイズ探索。

ウィンドウ（既定 100,000 命令）ごとに、直前ウィンドウの WSS との
相対距離を求める。
- 距離 > 閾値 が unstable_limit 回を超えたら最大サイズへ戻し、探索状態を初期化
- 距離 <= 閾値 が stable_limit 回を超えたら、未試行のサイズを小さい順に
  1 ウィンドウずつ試し、全て試し終えたらミス数最小のサイズに固定する
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from cacheseed.models.levels import LevelSet, LlcSizeLevel
from cacheseed.signatures.wss import Wss, wss_distance, wss_index
from .base import ReconfigCommand, Selector

logger = logging.getLogger(__name__)

DEFAULT_WINDOW_INSTRUCTIONS = 100_000
DEFAULT_DISTANCE_THRESHOLD = 0.5
DEFAULT_STABLE_LIMIT = 4
DEFAULT_UNSTABLE_LIMIT = 10


@dataclass(frozen=True)
class EwssParams:
    window_instructions: int = DEFAULT_WINDOW_INSTRUCTIONS
    distance_threshold: float = DEFAULT_DISTANCE_THRESHOLD
    stable_limit: int = DEFAULT_STABLE_LIMIT
    unstable_limit: int = DEFAULT_UNSTABLE_LIMIT


@dataclass
class EwssState:
    levels: LevelSet
    current_level: LlcSizeLevel
    params: EwssParams = field(default_factory=EwssParams)
    prev_wss: int = 0
    wss: int = 0
    stable_windows: int = 0
    unstable_windows: int = 0
    phase_tested: set[int] = field(default_factory=set)
    phase_misses: dict[int, int] = field(default_factory=dict)
    # 直前に試行を命じたレベル。次のウィンドウ終了時にミス数を記録する
    pending_level: int | None = None
    window_instruction_count: int = 0
    windows_evaluated: int = 0
    sweeps_started: int = 0
    history: list[tuple[int, int]] = field(default_factory=list)

    @classmethod
    def fresh(cls, levels: LevelSet, params: EwssParams | None = None) -> "EwssState":
        return cls(levels=levels, current_level=levels.max_level, params=params or EwssParams())

    @property
    def current_wss(self) -> Wss:
        return Wss(self.wss)

    @property
    def previous_wss(self) -> Wss:
        return Wss(self.prev_wss)


def ewss_observe_instruction(state: EwssState, pc: int) -> bool:
    """WSS に pc を登録し、ウィンドウが満了したら True を返す。"""
    state.wss |= 1 << wss_index(pc)
    state.window_instruction_count += 1
    if state.window_instruction_count >= state.params.window_instructions:
        state.window_instruction_count = 0
        return True
    return False


def _command(state: EwssState, level_index: int) -> ReconfigCommand | None:
    level = state.levels[level_index]
    if level == state.current_level:
        return None
    state.history.append((state.windows_evaluated, level_index))
    state.current_level = level
    return ReconfigCommand(level)


def ewss_window_end(state: EwssState, llc_misses: int) -> ReconfigCommand | None:
    params = state.params
    state.windows_evaluated += 1
    if state.pending_level is not None:
        state.phase_misses[state.pending_level] = llc_misses
        state.phase_tested.add(state.pending_level)
        state.pending_level = None

    distance = wss_distance(Wss(state.prev_wss), Wss(state.wss))
    state.prev_wss = state.wss
    state.wss = 0

    if distance > params.distance_threshold:
        state.unstable_windows += 1
        if state.unstable_windows > params.unstable_limit:
            state.stable_windows = 0
            state.phase_tested.clear()
            state.phase_misses.clear()
            return _command(state, state.levels.max_level.index)
        return None

    state.stable_windows += 1
    if state.stable_windows <= params.stable_limit:
        return None
    state.unstable_windows = 0
    untested = [lv.index for lv in state.levels if lv.index not in state.phase_tested]
    if untested:
        if len(untested) == len(state.levels):
            state.sweeps_started += 1
            logger.debug("EWSS: サイズ探索開始 (window=%d)", state.windows_evaluated)
        state.pending_level = untested[0]
        return _command(state, untested[0])
    best = min(state.phase_misses, key=lambda i: (state.phase_misses[i], i))
    return _command(state, best)


class EwssSelector(Selector):
    name = "ewss"
    observes_instructions = True

    def __init__(self, levels: LevelSet, params: EwssParams | None = None):
        super().__init__(levels)
        self.state = EwssState.fresh(levels, params)

    def on_instruction(self, pc: int) -> bool:
        return ewss_observe_instruction(self.state, pc)

    def on_window_end(self, llc_misses: int) -> ReconfigCommand | None:
        return ewss_window_end(self.state, llc_misses)

    def telemetry(self) -> dict:
        s = self.state
        return {
            "sweeps_started": s.sweeps_started,
            "windows_evaluated": s.windows_evaluated,
            "commands": [[w, i] for w, i in s.history],
        }

