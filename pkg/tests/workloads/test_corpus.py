"""学習用プログラム（list / sort / transp / mul）のトレース生成を検証する。"""

from __future__ import annotations

from collections import Counter

import pytest

from cacheseed.common.errors import ParameterError
from cacheseed.workloads.corpus import gen_corpus
from cacheseed.workloads.layout import PAGE_BYTES, SMALL_ALLOC_ALIGN, Heap
from cacheseed.workloads.records import MemKind
from cacheseed.workloads.spec import CORPUS_SIZES, WorkloadSpec, default_corpus


def _kinds(trace) -> Counter:
    return Counter(rec.kind for rec in trace)


def _blocks(trace) -> set[int]:
    return {rec.addr >> 6 for rec in trace if rec.kind != MemKind.NONE}


def test_list_memory_operations() -> None:
    counts = _kinds(gen_corpus(WorkloadSpec("list", 9, iterations=1)))
    assert counts[MemKind.WRITE] == 27
    assert counts[MemKind.READ] == 9


def test_list_nodes_start_on_separate_pages() -> None:
    trace = list(gen_corpus(WorkloadSpec("list", 9, iterations=1)))
    reads = [rec.addr for rec in trace if rec.kind == MemKind.READ]
    assert [b - a for a, b in zip(reads, reads[1:])] == [PAGE_BYTES] * 8
    # 既定 LLC でも 64 セットの構成でも、全ノードが同じセットに落ちる
    assert len({(addr >> 6) % 1024 for addr in reads}) == 1
    assert len({(addr >> 6) % 64 for addr in reads}) == 1


@pytest.mark.parametrize("size", [100, 1024])
def test_list_tail_moves_to_next_set(size) -> None:
    trace = gen_corpus(WorkloadSpec("list", size, iterations=1))
    reads = [rec.addr for rec in trace if rec.kind == MemKind.READ]
    per_set = Counter((addr >> 6) % 1024 for addr in reads)
    assert per_set == {0: 12, 1: size - 12}
    assert len({addr // PAGE_BYTES for addr in reads}) == size


def test_transp_memory_operations() -> None:
    trace = list(gen_corpus(WorkloadSpec("transp", 9, iterations=1)))
    counts = _kinds(trace)
    assert counts[MemKind.READ] == 9
    assert counts[MemKind.WRITE] == 9
    writes = [rec.addr for rec in trace if rec.kind == MemKind.WRITE]
    # b[j][i] への書き込みは列方向に進む（小さい行は小領域に詰めて置く）
    assert writes[1] - writes[0] == SMALL_ALLOC_ALIGN


def test_mul_memory_operations() -> None:
    counts = _kinds(gen_corpus(WorkloadSpec("mul", 18, iterations=1)))
    assert counts[MemKind.READ] == 54
    assert counts[MemKind.WRITE] == 9


def test_sort_stays_inside_array() -> None:
    spec = WorkloadSpec("sort", 100, iterations=2)
    addrs = [rec.addr for rec in gen_corpus(spec) if rec.kind != MemKind.NONE]
    assert addrs
    base = min(addrs)
    assert max(addrs) - base < 100 * 4
    assert all(a % 4 == 0 for a in addrs)


@pytest.mark.parametrize("name", list(CORPUS_SIZES))
def test_generation_is_deterministic(name) -> None:
    spec = WorkloadSpec(name, CORPUS_SIZES[name][1], seed=5, iterations=1)
    assert list(gen_corpus(spec)) == list(gen_corpus(spec))


def test_sort_depends_on_seed() -> None:
    a = list(gen_corpus(WorkloadSpec("sort", 100, seed=1, iterations=1)))
    b = list(gen_corpus(WorkloadSpec("sort", 100, seed=2, iterations=1)))
    assert a != b


@pytest.mark.parametrize("name", list(CORPUS_SIZES))
def test_footprint_grows_with_size(name) -> None:
    small, medium, large = (
        len(_blocks(gen_corpus(WorkloadSpec(name, size, iterations=1)))) for size in CORPUS_SIZES[name]
    )
    assert small < medium < large


@pytest.mark.parametrize("name", list(CORPUS_SIZES))
def test_zero_iterations_gives_empty_trace(name) -> None:
    assert list(gen_corpus(WorkloadSpec(name, CORPUS_SIZES[name][0], iterations=0))) == []


@pytest.mark.parametrize(("name", "size"), [("list", 50), ("mul", 100), ("sort", 10)])
def test_unsupported_size_rejected(name, size) -> None:
    with pytest.raises(ParameterError):
        gen_corpus(WorkloadSpec(name, size))


def test_default_corpus_has_twelve_workloads() -> None:
    corpus = default_corpus(seed=3)
    assert len(corpus) == 12
    assert {spec.label for spec in corpus} >= {"list/9", "mul/2048", "transp/1024"}
    assert corpus == default_corpus(seed=3)


def test_transp_rows_collide_from_100() -> None:
    trace = list(gen_corpus(WorkloadSpec("transp", 100, iterations=1)))
    blocks = {rec.addr >> 6 for rec in trace if rec.kind != MemKind.NONE}
    assert len(blocks) == 20
    assert {block % 1024 for block in blocks} == {0}


def test_small_matrices_stay_compact() -> None:
    for name, size in (("transp", 9), ("mul", 18), ("mul", 200)):
        trace = list(gen_corpus(WorkloadSpec(name, size, iterations=1)))
        addrs = [rec.addr for rec in trace if rec.kind != MemKind.NONE]
        assert max(addrs) - min(addrs) < PAGE_BYTES


def test_heap_places_large_allocations_on_new_pages() -> None:
    heap = Heap(seed=3)
    small_a = heap.alloc(12)
    small_b = heap.alloc(12)
    big = heap.alloc(40)
    bigger = heap.alloc(PAGE_BYTES + 1)
    after = heap.alloc(64)
    assert small_a == heap.base
    assert small_b - small_a == SMALL_ALLOC_ALIGN
    assert big - heap.base == PAGE_BYTES
    assert bigger - big == PAGE_BYTES
    assert after - bigger == 2 * PAGE_BYTES
    assert heap.pages_used == 5
    with pytest.raises(ParameterError):
        heap.alloc(0)
