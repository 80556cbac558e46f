"""トレースを最後まで流し、セレクタのフックと再構成を適用する実行ループ。"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import TYPE_CHECKING

from cacheseed.common.errors import DataFormatError
from cacheseed.workloads.records import Trace, TraceRecord
from .hierarchy import HierarchyState, simulate_access
from .reconfig import reconfigure_llc

if TYPE_CHECKING:
    from cacheseed.selectors.base import ReconfigCommand, Selector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunMetrics:
    cycles: int = 0
    instructions: int = 0
    l1_accesses: int = 0
    l1_hits: int = 0
    l1_misses: int = 0
    llc_accesses: int = 0
    llc_hits: int = 0
    llc_misses: int = 0
    llc_miss_rate: float = 0.0
    mean_enabled_fraction: float = 1.0
    reconfig_count: int = 0
    dirty_writebacks: int = 0

    def to_dict(self) -> dict[str, int | float]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunMetrics":
        return cls(**{k: data[k] for k in cls.__dataclass_fields__})


def collect_metrics(state: HierarchyState) -> RunMetrics:
    c = state.counters
    return RunMetrics(
        cycles=c.cycles,
        instructions=c.instructions,
        l1_accesses=c.l1.accesses,
        l1_hits=c.l1.hits,
        l1_misses=c.l1.misses,
        llc_accesses=c.llc.accesses,
        llc_hits=c.llc.hits,
        llc_misses=c.llc.misses,
        llc_miss_rate=c.llc.misses / max(1, c.llc.accesses),
        mean_enabled_fraction=state.mean_enabled_fraction(),
        reconfig_count=c.reconfig_count,
        dirty_writebacks=c.dirty_writebacks,
    )


def apply_command(state: HierarchyState, command: "ReconfigCommand | None") -> None:
    if command is None:
        return
    target = command.target_level.target_blocks(state.machine.llc)
    reconfigure_llc(state, target)


def run_trace(
    state: HierarchyState,
    trace: Trace,
    selector: "Selector | None" = None,
) -> RunMetrics:
    """
    trace の全レコードを simulate_access で処理する。

    - LLC アクセスのたびに selector.on_llc_access（BLOOM / ANN）
    - selector.on_instruction がウィンドウ満了を返したら selector.on_window_end（EWSS）
    を呼び、返ってきた再構成コマンドを即座に適用する。
    """
    state.mark_timeline()
    if selector is not None:
        apply_command(state, selector.start())
    observe = selector is not None and selector.observes_instructions
    on_access = selector is not None and selector.observes_llc_accesses
    window_start_misses = state.counters.llc.misses

    index = -1
    for index, rec in enumerate(trace):
        if not isinstance(rec, TraceRecord):
            raise DataFormatError(f"トレースレコードとして解釈できません: {rec!r}", record_index=index)
        outcome = simulate_access(state, rec)
        if selector is None:
            continue
        window_done = observe and selector.on_instruction(rec.pc)
        if on_access and outcome.llc_accessed:
            apply_command(state, selector.on_llc_access(state.llc_mas))
        if window_done:
            misses = state.counters.llc.misses - window_start_misses
            window_start_misses = state.counters.llc.misses
            apply_command(state, selector.on_window_end(misses))

    state.mark_timeline()
    metrics = collect_metrics(state)
    logger.debug("トレース処理完了: records=%d metrics=%s", index + 1, metrics)
    return metrics
