"""
セレクタ（LLC サイズ選択アルゴリズム）の共通インターフェース。

run_trace は次のフックを呼ぶ。
- start(): 実行開始時
- on_instruction(pc): observes_instructions が真のとき毎命令。ウィンドウが満了したら True
- on_llc_access(mas): observes_llc_accesses が真のとき LLC アクセスごと
- on_window_end(misses): on_instruction が True を返した直後
on_instruction 以外は ReconfigCommand か None を返す。
"""
from __future__ import annotations

from dataclasses import dataclass

from cacheseed.models.levels import LevelSet, LlcSizeLevel


@dataclass(frozen=True)
class ReconfigCommand:
    target_level: LlcSizeLevel


class Selector:
    name = "selector"
    observes_instructions = False
    observes_llc_accesses = False

    def __init__(self, levels: LevelSet):
        self.levels = levels

    def start(self) -> ReconfigCommand | None:
        return None

    def on_instruction(self, pc: int) -> bool:
        return False

    def on_llc_access(self, mas: int) -> ReconfigCommand | None:
        return None

    def on_window_end(self, llc_misses: int) -> ReconfigCommand | None:
        return None

    def telemetry(self) -> dict:
        return {}


class NoneSelector(Selector):
    """再構成しない（常に最大サイズ）。"""

    name = "none"


class FixedSelector(Selector):
    """開始時に一度だけ指定サイズへ再構成し、以後は何もしない。"""

    def __init__(self, levels: LevelSet, level: LlcSizeLevel):
        super().__init__(levels)
        self.level = level
        self.name = f"fixed:{level.fraction:g}"

    def start(self) -> ReconfigCommand | None:
        return ReconfigCommand(self.level)


class AccessDrivenSelector(Selector):
    """
    LLC アクセスごとに MAS からサイズを決める BLOOM / ANN の共通部分。

    MAS ごとの判定結果はメモ化する（判定はモデルに対して純粋関数）。
    min_interval_accesses > 0 のとき、前回のコマンドからその回数の
    LLC アクセスが経過するまで新しいコマンドを出さない。
    """

    observes_llc_accesses = True

    def __init__(self, levels: LevelSet, *, min_interval_accesses: int = 0):
        super().__init__(levels)
        self.min_interval_accesses = min_interval_accesses
        self._decisions: dict[int, ReconfigCommand | None] = {}
        self._accesses_since_command = 0
        self.commands_issued = 0
        self.undecided = 0

    def decide(self, mas: int) -> ReconfigCommand | None:
        raise NotImplementedError

    def on_llc_access(self, mas: int) -> ReconfigCommand | None:
        self._accesses_since_command += 1
        try:
            command = self._decisions[mas]
        except KeyError:
            command = self._decisions[mas] = self.decide(mas)
        if command is None:
            self.undecided += 1
            return None
        if self.commands_issued and self._accesses_since_command < self.min_interval_accesses:
            return None
        self._accesses_since_command = 0
        self.commands_issued += 1
        return command

    def telemetry(self) -> dict:
        return {
            "commands_issued": self.commands_issued,
            "undecided_accesses": self.undecided,
            "distinct_mas": len(self._decisions),
        }
