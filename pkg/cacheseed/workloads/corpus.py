"""
学習用プログラム（list / sort / transp / mul）のアクセスパターンを
再現するトレース生成器。

どれも (name, data_size, seed, iterations) の純粋関数で、レコードを
1 命令ずつ yield する。PC はソース上の文ごとに 1 つ割り当てる。
iterations=0 のときは空のトレースになる。

データは layout.Heap で確保する。list のノードと transp の行は要素ごとに
確保するので少数のセットに集まり、データサイズによって LLC の
セット内競合の強さが変わる。sort と mul の配列は 1 回で確保する。
"""
from __future__ import annotations

import logging
import math
from typing import Iterator

import numpy as np

from cacheseed.common.errors import ParameterError
from .layout import CodeBlock, Heap
from .records import TraceRecord, compute, read, write
from .spec import CORPUS_SIZES, WorkloadSpec

logger = logging.getLogger(__name__)

# prev / next / payload で 1 ブロック分
LIST_NODE_BYTES = 64
LIST_PREV_OFFSET = 0
LIST_NEXT_OFFSET = 8
LIST_PAYLOAD_OFFSET = 16
# 先頭 LIST_NODES_PER_COLOR 個のノードはページ先頭、残りはページ内で 1 ブロック後ろに置く
LIST_NODES_PER_COLOR = 12
LIST_COLORS = 2
INT_BYTES = 4

_LIST_CODE = CodeBlock(0)
_SORT_CODE = CodeBlock(1)
_TRANSP_CODE = CodeBlock(2)
_MUL_CODE = CodeBlock(3)


def _list_color(k: int) -> int:
    return min(k // LIST_NODES_PER_COLOR, LIST_COLORS - 1)


def _gen_list(n: int, seed: int, iterations: int) -> Iterator[TraceRecord]:
    """
    双方向リストを作り、先頭から末尾まで iterations 回たどる。

    ノードは 1 つずつ別ページに確保する。先頭の LIST_NODES_PER_COLOR 個が 1 つのセットに、
    残りが隣のセットに落ちる。
    """
    pc = _LIST_CODE
    heap = Heap(seed)
    nodes = [heap.alloc(LIST_NODE_BYTES) + _list_color(k) * LIST_NODE_BYTES for k in range(n)]
    # 構築（ノードごとに prev / next / payload の 3 書き込み）
    for node in nodes:
        yield compute(pc[0])
        yield write(pc[1], node + LIST_PREV_OFFSET)
        yield write(pc[2], node + LIST_NEXT_OFFSET)
        yield write(pc[3], node + LIST_PAYLOAD_OFFSET)
    for _ in range(iterations):
        yield compute(pc[4])
        for node in nodes:
            yield read(pc[5], node + LIST_NEXT_OFFSET)
            yield compute(pc[6])
            yield compute(pc[7])


def _quicksort(values: list[int], base: int) -> Iterator[TraceRecord]:
    """Lomuto 分割のクイックソート（明示的スタック）。"""
    pc = _SORT_CODE

    def addr(i: int) -> int:
        return base + i * INT_BYTES

    def swap(i: int, j: int) -> Iterator[TraceRecord]:
        yield read(pc[6], addr(i))
        yield write(pc[7], addr(i))
        yield write(pc[8], addr(j))
        values[i], values[j] = values[j], values[i]

    stack = [(0, len(values) - 1)]
    while stack:
        lo, hi = stack.pop()
        yield compute(pc[0])
        if lo >= hi:
            continue
        pivot = values[hi]
        yield read(pc[1], addr(hi))
        store = lo
        for j in range(lo, hi):
            yield read(pc[2], addr(j))
            yield compute(pc[3])
            if values[j] < pivot:
                if store != j:
                    yield from swap(store, j)
                store += 1
            yield compute(pc[4])
        if store != hi:
            yield from swap(store, hi)
        yield compute(pc[5])
        stack.append((lo, store - 1))
        stack.append((store + 1, hi))


def _gen_sort(n: int, seed: int, iterations: int) -> Iterator[TraceRecord]:
    base = Heap(seed).alloc(n * INT_BYTES)
    rng = np.random.default_rng(seed)
    for _ in range(iterations):
        values = rng.integers(0, 2**31 - 1, size=n).tolist()
        yield from _quicksort(values, base)


def _square_side(count: int, name: str) -> int:
    side = math.isqrt(count)
    if side * side != count:
        raise ParameterError(f"{name} のデータサイズは平方数である必要があります: {count}")
    return side


def _gen_transp(count: int, seed: int, iterations: int) -> Iterator[TraceRecord]:
    """a と b は行ごとに確保する。"""
    pc = _TRANSP_CODE
    side = _square_side(count, "transp")
    heap = Heap(seed)
    a = [heap.alloc(side * INT_BYTES) for _ in range(side)]
    b = [heap.alloc(side * INT_BYTES) for _ in range(side)]
    for _ in range(iterations):
        for i in range(side):
            yield compute(pc[0])
            for j in range(side):
                yield read(pc[1], a[i] + j * INT_BYTES)
                yield write(pc[2], b[j] + i * INT_BYTES)
                yield compute(pc[3])


def _gen_mul(count: int, seed: int, iterations: int) -> Iterator[TraceRecord]:
    """c = a × b。データサイズは 2 つのオペランドの整数の合計。3 行列を 1 回で確保する。"""
    pc = _MUL_CODE
    if count % 2:
        raise ParameterError(f"mul のデータサイズは偶数である必要があります: {count}")
    side = _square_side(count // 2, "mul")
    matrix_bytes = side * side * INT_BYTES
    a = Heap(seed).alloc(3 * matrix_bytes)
    b = a + matrix_bytes
    c = b + matrix_bytes
    for _ in range(iterations):
        for i in range(side):
            for j in range(side):
                yield compute(pc[0])
                for k in range(side):
                    yield read(pc[1], a + (i * side + k) * INT_BYTES)
                    yield read(pc[2], b + (k * side + j) * INT_BYTES)
                    yield compute(pc[3])
                    yield compute(pc[4])
                yield write(pc[5], c + (i * side + j) * INT_BYTES)


_GENERATORS = {
    "list": _gen_list,
    "sort": _gen_sort,
    "transp": _gen_transp,
    "mul": _gen_mul,
}


def gen_corpus(spec: WorkloadSpec) -> Iterator[TraceRecord]:
    if spec.name not in CORPUS_SIZES:
        raise ParameterError(f"学習用プログラムではありません: {spec.name}")
    if spec.data_size not in CORPUS_SIZES[spec.name]:
        raise ParameterError(
            f"{spec.name} のデータサイズは {CORPUS_SIZES[spec.name]} のいずれかです: {spec.data_size}"
        )
    iterations = spec.resolved_iterations
    if spec.name in ("transp", "mul"):
        # 平方数チェックを生成開始前に済ませる
        _square_side(spec.data_size // (2 if spec.name == "mul" else 1), spec.name)
    logger.debug("トレース生成: %s seed=%d iterations=%d", spec.label, spec.seed, iterations)
    if iterations == 0:
        return iter(())
    return _GENERATORS[spec.name](spec.data_size, spec.seed, iterations)
