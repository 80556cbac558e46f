"""run_trace の集計値とセレクタのフック呼び出しを検証する。"""

from __future__ import annotations

import pytest

from cacheseed.cache_sim.hierarchy import HierarchyState
from cacheseed.cache_sim.runner import RunMetrics, run_trace
from cacheseed.cache_sim.set_dump import SET_DUMP_COLUMNS, state_set_frame, write_set_dump
from cacheseed.common.errors import DataFormatError
from cacheseed.models.levels import LevelSet
from cacheseed.selectors.base import FixedSelector, ReconfigCommand, Selector
from cacheseed.workloads.corpus import gen_corpus
from cacheseed.workloads.records import compute, read
from cacheseed.workloads.spec import WorkloadSpec


def test_empty_trace_gives_zero_metrics() -> None:
    metrics = run_trace(HierarchyState(), [])
    assert metrics == RunMetrics()
    assert metrics.mean_enabled_fraction == 1.0


def test_no_selector_keeps_full_cache() -> None:
    trace = [read(0x400000, i * 64) for i in range(100)] + [compute(0x400004)] * 10
    metrics = run_trace(HierarchyState(), trace)
    assert metrics.reconfig_count == 0
    assert metrics.mean_enabled_fraction == 1.0
    assert metrics.instructions == 110
    assert metrics.llc_misses == 100
    assert metrics.llc_miss_rate == 1.0


def test_fixed_selector_holds_fraction() -> None:
    levels = LevelSet()
    state = HierarchyState()
    trace = [read(0x400000, i * 64) for i in range(50)]
    metrics = run_trace(state, trace, FixedSelector(levels, levels[0]))
    assert metrics.reconfig_count == 1
    total = state.machine.llc.total_blocks
    assert metrics.mean_enabled_fraction == pytest.approx(0.2, abs=1 / total)


def test_bad_record_reports_index() -> None:
    with pytest.raises(DataFormatError, match="record=1"):
        run_trace(HierarchyState(), [compute(0x400000), (0x400004, 1, 0)])


class _CountingSelector(Selector):
    observes_instructions = True
    observes_llc_accesses = True

    def __init__(self, levels: LevelSet, window: int):
        super().__init__(levels)
        self.window = window
        self.instructions = 0
        self.accesses: list[int] = []
        self.windows: list[int] = []

    def on_instruction(self, pc: int) -> bool:
        self.instructions += 1
        return self.instructions % self.window == 0

    def on_llc_access(self, mas: int) -> ReconfigCommand | None:
        self.accesses.append(mas)
        return None

    def on_window_end(self, llc_misses: int) -> ReconfigCommand | None:
        self.windows.append(llc_misses)
        return ReconfigCommand(self.levels[len(self.windows) % len(self.levels)])


def test_hooks_called_per_instruction_access_and_window() -> None:
    levels = LevelSet()
    selector = _CountingSelector(levels, window=10)
    trace = [read(0x400000, i * 64) if i % 2 == 0 else compute(0x400004) for i in range(35)]
    metrics = run_trace(HierarchyState(), trace, selector)
    assert selector.instructions == 35
    assert len(selector.accesses) == 18
    # 10 命令のウィンドウごとに 5 回ずつのミス
    assert selector.windows == [5, 5, 5]
    assert metrics.reconfig_count == 3


@pytest.mark.parametrize(("size", "iterations"), [(9, 4), (1024, 2)])
def test_list_misses_more_at_smallest_size(size, iterations) -> None:
    levels = LevelSet()
    spec = WorkloadSpec("list", size, seed=3, iterations=iterations)
    small = run_trace(HierarchyState(), gen_corpus(spec), FixedSelector(levels, levels[0]))
    full = run_trace(HierarchyState(), gen_corpus(spec), FixedSelector(levels, levels.max_level))
    assert small.llc_misses > full.llc_misses


def test_metrics_are_deterministic() -> None:
    spec = WorkloadSpec("sort", 100, seed=5, iterations=2)
    first = run_trace(HierarchyState(), gen_corpus(spec))
    second = run_trace(HierarchyState(), gen_corpus(spec))
    assert first == second
    assert RunMetrics.from_dict(first.to_dict()) == first


def test_set_dump_frame(tmp_path) -> None:
    state = HierarchyState(track_sets=True)
    run_trace(state, [read(0x400000, 0), read(0x400000, 0x40)])
    df = state_set_frame(state)
    assert list(df.columns) == SET_DUMP_COLUMNS
    assert len(df) == state.machine.llc.num_sets
    assert df.loc[0, "read_misses"] == 1
    out = write_set_dump(df, tmp_path / "sets.csv")
    assert out.read_text(encoding="utf-8").splitlines()[0] == ",".join(SET_DUMP_COLUMNS)
