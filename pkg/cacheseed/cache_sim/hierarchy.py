"""
2 階層（L1 + 再構成可能な LLC）のライトバック・ライトアロケートキャッシュ。

- L1 はデータアクセスのみを扱う（命令フェッチは理想的な I ストリーム扱い）。
- 非包含。L1 から追い出された dirty ブロックは LLC へ書き込む。
  この書き込みは需要アクセスではないため LLC アクセス数・MAS には数えない。
- LLC アクセス（L1 ミス）ごとに MAS を更新する。
"""
from __future__ import annotations

from dataclasses import dataclass, field

from cacheseed.signatures.mas import mas_update
from cacheseed.workloads.records import MemKind, TraceRecord
from .geometry import MachineModel
from .level import CacheLevel

# set_counts の列
READ_HIT, READ_MISS, WRITE_HIT, WRITE_MISS = range(4)


@dataclass
class LevelCounters:
    accesses: int = 0
    hits: int = 0
    misses: int = 0


@dataclass
class HierarchyCounters:
    l1: LevelCounters = field(default_factory=LevelCounters)
    llc: LevelCounters = field(default_factory=LevelCounters)
    cycles: int = 0
    instructions: int = 0
    reconfig_count: int = 0
    dirty_writebacks: int = 0
    # サイクル重み付きの有効 LLC ブロック数の総和
    enabled_block_cycles: int = 0


@dataclass(frozen=True)
class AccessOutcome:
    l1_hit: bool
    llc_hit: bool
    cycles_added: int
    llc_accessed: bool
    is_memory: bool = True


class HierarchyState:
    """1 回のシミュレーション分の可変状態。スレッド間で共有しないこと。"""

    def __init__(self, machine: MachineModel | None = None, *, track_sets: bool = False):
        self.machine = machine or MachineModel()
        self.l1 = CacheLevel(self.machine.l1)
        self.llc = CacheLevel(self.machine.llc)
        self.llc_mas = 0
        self.counters = HierarchyCounters()
        self.timeline: list[tuple[int, float]] = []
        self.set_counts: list[list[int]] | None = None
        if track_sets:
            self.set_counts = [[0, 0, 0, 0] for _ in range(self.machine.llc.num_sets)]

    @property
    def enabled_fraction(self) -> float:
        return self.llc.enabled_total / self.machine.llc.total_blocks

    def add_cycles(self, cycles: int) -> None:
        self.counters.cycles += cycles
        self.counters.enabled_block_cycles += cycles * self.llc.enabled_total

    def mark_timeline(self) -> None:
        sample = (self.counters.cycles, self.enabled_fraction)
        if self.timeline and self.timeline[-1][0] == sample[0]:
            self.timeline[-1] = sample
        else:
            self.timeline.append(sample)

    def mean_enabled_fraction(self) -> float:
        c = self.counters
        if c.cycles == 0:
            return 1.0
        return c.enabled_block_cycles / (c.cycles * self.machine.llc.total_blocks)


def _write_back_to_llc(state: HierarchyState, addr: int) -> int:
    llc = state.llc
    set_index, tag = state.machine.llc.split(addr)
    way = llc.lookup(set_index, tag)
    if way is not None:
        llc.touch(set_index, way, True)
        return 0
    if llc.fill(set_index, tag, dirty=True) is not None:
        state.counters.dirty_writebacks += 1
        return state.machine.memory_latency_cycles
    return 0


def simulate_access(state: HierarchyState, rec: TraceRecord) -> AccessOutcome:
    """
    1 命令分をシミュレートし、カウンタと各ビットを更新する。

    cycles_added = 命令 + (メモリ命令なら L1) + (L1 ミスなら LLC)
                   + (LLC ミスならメモリ) + dirty 書き戻し × メモリレイテンシ
    """
    machine = state.machine
    c = state.counters
    cycles = machine.instruction_cycles
    c.instructions += 1
    if rec.kind == MemKind.NONE:
        state.add_cycles(cycles)
        return AccessOutcome(False, False, cycles, False, is_memory=False)

    is_write = rec.kind == MemKind.WRITE
    addr = rec.addr
    cycles += machine.l1.hit_latency_cycles
    c.l1.accesses += 1
    l1 = state.l1
    s1, t1 = machine.l1.split(addr)
    way = l1.lookup(s1, t1)
    if way is not None:
        c.l1.hits += 1
        l1.touch(s1, way, is_write)
        state.add_cycles(cycles)
        return AccessOutcome(True, False, cycles, False)

    c.l1.misses += 1
    cycles += machine.llc.hit_latency_cycles
    c.llc.accesses += 1
    llc = state.llc
    s2, t2 = machine.llc.split(addr)
    way2 = llc.lookup(s2, t2)
    llc_hit = way2 is not None
    if way2 is not None:
        c.llc.hits += 1
        llc.touch(s2, way2, False)
    else:
        c.llc.misses += 1
        cycles += machine.memory_latency_cycles
        if llc.fill(s2, t2, dirty=False) is not None:
            c.dirty_writebacks += 1
            cycles += machine.memory_latency_cycles
    state.llc_mas = mas_update(state.llc_mas, llc_hit)
    if state.set_counts is not None:
        col = (WRITE_HIT if llc_hit else WRITE_MISS) if is_write else (READ_HIT if llc_hit else READ_MISS)
        state.set_counts[s2][col] += 1

    victim = l1.fill(s1, t1, dirty=is_write)
    if victim is not None:
        cycles += _write_back_to_llc(state, machine.l1.block_address(s1, victim))

    state.add_cycles(cycles)
    return AccessOutcome(False, llc_hit, cycles, True)
