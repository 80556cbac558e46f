"""LLC サイズレベル（有効ブロック数の割合）。"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from cacheseed.cache_sim.geometry import CacheGeometry
from cacheseed.common.errors import ParameterError

DEFAULT_LEVEL_FRACTIONS: tuple[float, ...] = (0.2, 0.4, 0.6, 0.8, 1.0)


@dataclass(frozen=True, order=True)
class LlcSizeLevel:
    index: int
    fraction: float

    def target_blocks(self, geometry: CacheGeometry) -> int:
        """round(fraction × total_blocks)。セット数未満にはならないよう切り上げる。"""
        blocks = math.floor(self.fraction * geometry.total_blocks + 0.5)
        return max(geometry.num_sets, min(geometry.total_blocks, blocks))

    @property
    def label(self) -> str:
        return f"{round(self.fraction * 100)}%"


class LevelSet:
    """昇順に並んだサイズレベルの集合。最後の要素が最大サイズ(100%)。"""

    def __init__(self, fractions: tuple[float, ...] | list[float] = DEFAULT_LEVEL_FRACTIONS):
        values = tuple(float(f) for f in fractions)
        if not values:
            raise ParameterError("サイズレベルが空です。")
        if any(not 0.0 < f <= 1.0 for f in values):
            raise ParameterError(f"サイズレベルは (0, 1] の範囲で指定してください: {values}")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ParameterError(f"サイズレベルは昇順で指定してください: {values}")
        if values[-1] != 1.0:
            raise ParameterError("最後のサイズレベルは 1.0（最大サイズ）である必要があります。")
        self.fractions = values
        self._levels = tuple(LlcSizeLevel(i, f) for i, f in enumerate(values))

    def __len__(self) -> int:
        return len(self._levels)

    def __iter__(self) -> Iterator[LlcSizeLevel]:
        return iter(self._levels)

    def __getitem__(self, index: int) -> LlcSizeLevel:
        if not 0 <= index < len(self._levels):
            raise ParameterError(f"サイズレベル番号が範囲外です: {index}")
        return self._levels[index]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LevelSet) and other.fractions == self.fractions

    def __hash__(self) -> int:
        return hash(self.fractions)

    def __repr__(self) -> str:
        return f"LevelSet({list(self.fractions)})"

    @property
    def max_level(self) -> LlcSizeLevel:
        return self._levels[-1]

    def by_fraction(self, fraction: float) -> LlcSizeLevel:
        for level in self._levels:
            if math.isclose(level.fraction, fraction, abs_tol=1e-9):
                return level
        raise ParameterError(f"定義されていないサイズレベルです: {fraction}")
