"""BLOOM / ANN セレクタの照会・メモ化・最小間隔を検証する。"""

from __future__ import annotations

import numpy as np
import pytest

from cacheseed.common.errors import ParameterError
from cacheseed.models.ann import AnnModel
from cacheseed.models.bloom import BloomBank, BloomParams
from cacheseed.models.levels import LevelSet
from cacheseed.selectors.ann_selector import AnnSelector, ann_select
from cacheseed.selectors.bloom_selector import BloomSelector, bloom_select


def _bank() -> BloomBank:
    bank = BloomBank.create(LevelSet(), expected_n=100, params=BloomParams(), seed=1)
    bank.add(1, 0xAAAA)
    bank.add(3, 0xAAAA)
    bank.add(4, 0xBBBB)
    return bank


def _ann_always(level_index: int) -> AnnModel:
    """隠れ層を使わず、バイアスだけで 1 つの出力を立てるモデル。"""
    model = AnnModel.zeros(5)
    model.b2 = np.full(5, -5.0)
    model.b2[level_index] = 5.0
    return model


def test_bloom_select_returns_smallest_match() -> None:
    bank = _bank()
    assert bloom_select(bank, 0xAAAA).target_level.index == 1
    assert bloom_select(bank, 0xBBBB).target_level.index == 4


def test_bloom_select_none_when_no_filter_matches() -> None:
    bank = BloomBank.create(LevelSet(), expected_n=100, params=BloomParams(), seed=1)
    assert bloom_select(bank, 0x1234) is None


def test_bloom_selector_memoizes_and_counts() -> None:
    selector = BloomSelector(_bank())
    assert selector.observes_llc_accesses
    for _ in range(3):
        assert selector.on_llc_access(0xAAAA).target_level.index == 1
    assert selector.on_llc_access(0x9999_0000_0000) is None
    telemetry = selector.telemetry()
    assert telemetry["commands_issued"] == 3
    assert telemetry["undecided_accesses"] == 1
    assert telemetry["distinct_mas"] == 2


def test_min_interval_suppresses_commands() -> None:
    selector = BloomSelector(_bank(), min_interval_accesses=3)
    issued = [selector.on_llc_access(0xAAAA) is not None for _ in range(7)]
    assert issued == [True, False, False, True, False, False, True]


def test_ann_select_one_hot() -> None:
    levels = LevelSet()
    assert ann_select(_ann_always(2), 0xFFFF, levels).target_level.index == 2


def test_ann_select_undecided_when_zero_or_many_fire() -> None:
    levels = LevelSet()
    quiet = AnnModel.zeros(5)
    quiet.b2 = np.full(5, -5.0)
    assert ann_select(quiet, 1, levels) is None
    # すべての出力が 0.5 で閾値以上になる
    assert ann_select(AnnModel.zeros(5), 1, levels) is None


def test_ann_selector_rejects_size_mismatch() -> None:
    with pytest.raises(ParameterError):
        AnnSelector(AnnModel.zeros(3), LevelSet())


def test_ann_selector_issues_commands() -> None:
    selector = AnnSelector(_ann_always(0), LevelSet())
    assert selector.on_llc_access(5).target_level.index == 0
    assert selector.telemetry()["commands_issued"] == 1
