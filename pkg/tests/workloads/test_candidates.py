"""評価用ワークロードとワークロード指定の解釈を検証する。"""

from __future__ import annotations

from itertools import islice

import pytest

from cacheseed.cache_sim.hierarchy import HierarchyState
from cacheseed.cache_sim.runner import run_trace
from cacheseed.common.errors import ParameterError
from cacheseed.models.levels import LevelSet
from cacheseed.selectors.base import FixedSelector
from cacheseed.selectors.ewss import EwssParams, EwssSelector
from cacheseed.workloads.candidates import PHASE_MIN_WINDOWS, TRANSITION_WINDOWS, gen_candidate, gen_workload
from cacheseed.workloads.records import MemKind
from cacheseed.workloads.spec import CANDIDATE_NAMES, WorkloadSpec, default_candidates


@pytest.mark.parametrize("name", CANDIDATE_NAMES)
def test_zero_iterations_gives_empty_trace(name) -> None:
    spec = WorkloadSpec.parse(name, iterations=0)
    assert list(gen_candidate(spec)) == []


def test_stream_footprint() -> None:
    trace = list(gen_candidate(WorkloadSpec("candidate-stream", 1024, iterations=1)))
    reads = [rec.addr for rec in trace if rec.kind == MemKind.READ]
    assert len(reads) == 1024
    assert len({a >> 6 for a in reads}) == 1024 * 8 // 64
    # 64 要素ごとに 32 命令の計算バースト
    assert len(trace) == 1024 * 2 + 16 * 32


def test_chase_visits_every_node_once_per_iteration() -> None:
    trace = list(gen_candidate(WorkloadSpec("candidate-chase", 256, seed=7, iterations=2)))
    reads = [rec.addr for rec in trace if rec.kind == MemKind.READ]
    assert len(reads) == 512
    assert len(set(reads)) == 256
    assert reads[:256] == reads[256:]
    assert reads[:256] != sorted(reads[:256])


def test_blocked_length_and_phases() -> None:
    window = 1000
    trace = list(gen_candidate(WorkloadSpec("candidate-blocked", 64, iterations=2), window_instructions=window))
    assert len(trace) == 2 * PHASE_MIN_WINDOWS * window + TRANSITION_WINDOWS * window
    first = {rec.pc for rec in trace[: PHASE_MIN_WINDOWS * window]}
    last = {rec.pc for rec in trace[-PHASE_MIN_WINDOWS * window :]}
    assert first.isdisjoint(last)


def test_blocked_triggers_repeated_ewss_sweeps() -> None:
    window = 1000
    spec = WorkloadSpec("candidate-blocked", 64, iterations=2)
    selector = EwssSelector(LevelSet(), EwssParams(window_instructions=window))
    run_trace(HierarchyState(), gen_candidate(spec, window_instructions=window), selector)
    assert selector.telemetry()["sweeps_started"] >= 2


def test_gen_workload_dispatches_corpus_and_candidates() -> None:
    corpus = list(gen_workload(WorkloadSpec("list", 9, iterations=1)))
    assert len(corpus) == 9 * 4 + 1 + 9 * 3
    stream = list(islice(gen_workload(WorkloadSpec("candidate-stream", 64, iterations=1)), 10))
    assert len(stream) == 10


def test_candidate_generation_is_deterministic() -> None:
    spec = WorkloadSpec("candidate-chase", 128, seed=3, iterations=1)
    assert list(gen_candidate(spec)) == list(gen_candidate(spec))


def test_invalid_window_rejected() -> None:
    with pytest.raises(ParameterError):
        gen_candidate(WorkloadSpec("candidate-blocked", 64), window_instructions=0)


def test_parse_workload_names() -> None:
    assert WorkloadSpec.parse("list/1024").label == "list/1024"
    assert WorkloadSpec.parse("candidate-chase").data_size == 8192
    assert WorkloadSpec.parse("sort/9", seed=4, iterations=2).to_dict() == {
        "name": "sort",
        "data_size": 9,
        "seed": 4,
        "iterations": 2,
    }
    for text in ("list", "list/abc", "unknown/3", "sort/0"):
        with pytest.raises(ParameterError):
            WorkloadSpec.parse(text)


def test_default_candidates() -> None:
    names = [spec.name for spec in default_candidates()]
    assert names == list(CANDIDATE_NAMES)


def test_stream_fits_in_smallest_level() -> None:
    levels = LevelSet()
    spec = WorkloadSpec("candidate-stream", 16384, iterations=2)
    small = run_trace(HierarchyState(), gen_candidate(spec), FixedSelector(levels, levels[0]))
    full = run_trace(HierarchyState(), gen_candidate(spec), FixedSelector(levels, levels.max_level))
    assert abs(small.llc_miss_rate - full.llc_miss_rate) <= 0.005
