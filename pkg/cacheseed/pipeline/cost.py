"""
コスト関数: サイズレベルごとのサイクル数から「最適な」レベルを決める。

- min-cycles: サイクル数最小のレベル（同値なら小さいサイズ）
- smallest-no-increase: 最大サイズのサイクル数を超えない最小のレベル
新しい基準は register_cost_function で追加できる。
"""
from __future__ import annotations

from typing import Callable, Mapping, Sequence

from cacheseed.common.errors import DatasetError, ParameterError
from cacheseed.models.levels import LevelSet, LlcSizeLevel

# 引数はレベル番号順に並んだサイクル数、戻り値はレベル番号
CostFunction = Callable[[Sequence[int]], int]

COST_FUNCTIONS: dict[str, CostFunction] = {}
DEFAULT_COST_MODE = "min-cycles"


def register_cost_function(name: str) -> Callable[[CostFunction], CostFunction]:
    def decorator(fn: CostFunction) -> CostFunction:
        COST_FUNCTIONS[name] = fn
        return fn

    return decorator


@register_cost_function("min-cycles")
def min_cycles(cycles: Sequence[int]) -> int:
    return min(range(len(cycles)), key=lambda i: (cycles[i], i))


@register_cost_function("smallest-no-increase")
def smallest_no_increase(cycles: Sequence[int]) -> int:
    full = cycles[-1]
    return next(i for i, c in enumerate(cycles) if c <= full)


def cycles_in_level_order(
    cycles_by_level: Mapping[int, int] | Mapping[LlcSizeLevel, int] | Sequence[int],
    levels: LevelSet,
) -> list[int]:
    """レベル番号（または LlcSizeLevel）をキーにした表を、レベル順の列に揃える。"""
    if isinstance(cycles_by_level, Mapping):
        table = {
            (key.index if isinstance(key, LlcSizeLevel) else int(key)): value
            for key, value in cycles_by_level.items()
        }
    else:
        table = dict(enumerate(cycles_by_level))
    missing = [level.label for level in levels if level.index not in table]
    if missing:
        raise DatasetError(f"サイクル数が欠けているサイズレベルがあります: {', '.join(missing)}")
    return [int(table[level.index]) for level in levels]


def optimal_size(
    cycles_by_level: Mapping[int, int] | Mapping[LlcSizeLevel, int] | Sequence[int],
    mode: str = DEFAULT_COST_MODE,
    levels: LevelSet | None = None,
) -> LlcSizeLevel:
    levels = levels or LevelSet()
    try:
        cost = COST_FUNCTIONS[mode]
    except KeyError:
        raise ParameterError(
            f"未知のコスト関数です: {mode}（{', '.join(sorted(COST_FUNCTIONS))}）"
        ) from None
    return levels[cost(cycles_in_level_order(cycles_by_level, levels))]
