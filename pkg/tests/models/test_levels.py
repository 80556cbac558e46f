"""LLC サイズレベルの検証と目標ブロック数の計算。"""

from __future__ import annotations

import pytest

from cacheseed.cache_sim.geometry import DEFAULT_LLC, CacheGeometry
from cacheseed.common.errors import ParameterError
from cacheseed.models.levels import LevelSet


def test_default_levels() -> None:
    levels = LevelSet()
    assert [lv.label for lv in levels] == ["20%", "40%", "60%", "80%", "100%"]
    assert levels.max_level.index == 4
    assert levels.by_fraction(0.6).index == 2


def test_target_blocks_for_default_llc() -> None:
    levels = LevelSet()
    assert [lv.target_blocks(DEFAULT_LLC) for lv in levels] == [3277, 6554, 9830, 13107, 16384]


def test_target_blocks_never_below_one_per_set() -> None:
    geometry = CacheGeometry(num_sets=4, associativity=2, block_size_bytes=64, hit_latency_cycles=10)
    assert LevelSet()[0].target_blocks(geometry) == 4


@pytest.mark.parametrize(
    "fractions",
    [(), (0.5, 0.2, 1.0), (0.2, 0.2, 1.0), (0.0, 1.0), (0.5, 0.8), (0.5, 1.5)],
)
def test_invalid_levels_rejected(fractions) -> None:
    with pytest.raises(ParameterError):
        LevelSet(fractions)


def test_index_out_of_range() -> None:
    with pytest.raises(ParameterError):
        LevelSet()[5]
    with pytest.raises(ParameterError):
        LevelSet().by_fraction(0.3)
