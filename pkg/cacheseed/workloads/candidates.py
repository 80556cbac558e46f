"""
学習用コーパスに含まれない評価用ワークロード。

- candidate-stream : 大きな配列の逐次読み出しと、計算だけの命令バースト
- candidate-chase  : ランダムな順序で連結されたノードのポインタ追跡
- candidate-blocked: タイルサイズの異なる 2 種類のタイル走査を位相として交互に実行

candidate-blocked の位相の間には、ウィンドウごとに PC の異なる命令列を
12 ウィンドウ分挟み、位相の切り替わりを WSS 上で明確にする。
"""
from __future__ import annotations

import logging
from itertools import islice
from typing import Iterator

import numpy as np

from cacheseed.common.errors import ParameterError
from .corpus import gen_corpus
from .layout import CodeBlock, data_base
from .records import TraceRecord, compute, read, write
from .spec import CANDIDATE_NAMES, WorkloadSpec

logger = logging.getLogger(__name__)

PHASE_WINDOW_INSTRUCTIONS = 100_000
PHASE_MIN_WINDOWS = 16
TRANSITION_WINDOWS = 12
TRANSITION_LOOP_PCS = 64

STREAM_ELEMENT_BYTES = 8
STREAM_BURST_PERIOD = 64
STREAM_BURST_LENGTH = 32

CHASE_NODE_STRIDE = 64
CHASE_NEXT_OFFSET = 8

BLOCKED_ELEMENT_BYTES = 4
# (タイルの一辺, コード領域)
BLOCKED_VARIANTS = ((8, 12), (32, 13))

_STREAM_CODE = CodeBlock(10)
_CHASE_CODE = CodeBlock(11)
_TRANSITION_REGION = 32


def _gen_stream(n: int, seed: int, iterations: int) -> Iterator[TraceRecord]:
    pc = _STREAM_CODE
    base = data_base(seed, 0)
    for _ in range(iterations):
        for i in range(n):
            yield read(pc[0], base + i * STREAM_ELEMENT_BYTES)
            yield compute(pc[1])
            if (i + 1) % STREAM_BURST_PERIOD == 0:
                for b in range(STREAM_BURST_LENGTH):
                    yield compute(pc[16 + b % 16])


def _gen_chase(n: int, seed: int, iterations: int) -> Iterator[TraceRecord]:
    pc = _CHASE_CODE
    base = data_base(seed, 0)
    order = np.random.default_rng(seed).permutation(n).tolist()
    for _ in range(iterations):
        yield compute(pc[0])
        for node in order:
            yield read(pc[1], base + node * CHASE_NODE_STRIDE + CHASE_NEXT_OFFSET)
            yield compute(pc[2])
            yield compute(pc[3])


def _tiled_pass(side: int, tile: int, variant: int, seed: int) -> Iterator[TraceRecord]:
    pc = CodeBlock(BLOCKED_VARIANTS[variant][1])
    src = data_base(seed, 0)
    dst = data_base(seed, 1)
    for ti in range(0, side, tile):
        for tj in range(0, side, tile):
            yield compute(pc[0])
            for i in range(ti, min(ti + tile, side)):
                for j in range(tj, min(tj + tile, side)):
                    yield read(pc[1], src + (i * side + j) * BLOCKED_ELEMENT_BYTES)
                    yield compute(pc[2])
                    if variant == 1:
                        yield write(pc[3], dst + (j * side + i) * BLOCKED_ELEMENT_BYTES)


def _repeat_passes(side: int, tile: int, variant: int, seed: int) -> Iterator[TraceRecord]:
    while True:
        yield from _tiled_pass(side, tile, variant, seed)


def _transition(phase: int, window: int) -> Iterator[TraceRecord]:
    """TRANSITION_WINDOWS 個のセグメント。セグメントごとに別の小さなループを回す。"""
    for segment in range(TRANSITION_WINDOWS):
        pc = CodeBlock(_TRANSITION_REGION + phase * TRANSITION_WINDOWS + segment)
        for i in range(window):
            yield compute(pc[i % TRANSITION_LOOP_PCS])


def _gen_blocked(side: int, seed: int, phases: int, window: int) -> Iterator[TraceRecord]:
    phase_length = PHASE_MIN_WINDOWS * window
    for phase in range(phases):
        if phase:
            yield from _transition(phase, window)
        variant = phase % len(BLOCKED_VARIANTS)
        tile = BLOCKED_VARIANTS[variant][0]
        yield from islice(_repeat_passes(side, tile, variant, seed), phase_length)


def gen_candidate(
    spec: WorkloadSpec,
    *,
    window_instructions: int = PHASE_WINDOW_INSTRUCTIONS,
) -> Iterator[TraceRecord]:
    """
    評価用ワークロードのトレースを返す。

    candidate-blocked では iterations が位相の数、window_instructions が
    位相の長さ（window_instructions × 16 命令）と切り替え区間の単位になる。
    """
    if spec.name not in CANDIDATE_NAMES:
        raise ParameterError(f"未知の評価用ワークロードです: {spec.name}")
    if window_instructions <= 0:
        raise ParameterError(f"window_instructions は正の値で指定してください: {window_instructions}")
    iterations = spec.resolved_iterations
    logger.debug("トレース生成: %s seed=%d iterations=%d", spec.label, spec.seed, iterations)
    if iterations == 0:
        return iter(())
    match spec.name:
        case "candidate-stream":
            return _gen_stream(spec.data_size, spec.seed, iterations)
        case "candidate-chase":
            return _gen_chase(spec.data_size, spec.seed, iterations)
        case _:
            return _gen_blocked(spec.data_size, spec.seed, iterations, window_instructions)


def gen_workload(spec: WorkloadSpec, *, window_instructions: int = PHASE_WINDOW_INSTRUCTIONS) -> Iterator[TraceRecord]:
    """名前に応じて gen_corpus / gen_candidate を呼び分ける。"""
    if spec.is_corpus:
        return gen_corpus(spec)
    return gen_candidate(spec, window_instructions=window_instructions)
