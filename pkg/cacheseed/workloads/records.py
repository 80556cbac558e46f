"""トレースレコード（1 レコード = 1 命令）。"""
from __future__ import annotations

from enum import IntEnum
from typing import Iterable, NamedTuple


class MemKind(IntEnum):
    NONE = 0
    READ = 1
    WRITE = 2


KIND_LETTERS = {MemKind.NONE: "N", MemKind.READ: "R", MemKind.WRITE: "W"}


class TraceRecord(NamedTuple):
    pc: int
    kind: MemKind = MemKind.NONE
    addr: int = 0

    @property
    def is_memory(self) -> bool:
        return self.kind != MemKind.NONE


Trace = Iterable[TraceRecord]


def compute(pc: int) -> TraceRecord:
    return TraceRecord(pc, MemKind.NONE, 0)


def read(pc: int, addr: int) -> TraceRecord:
    return TraceRecord(pc, MemKind.READ, addr)


def write(pc: int, addr: int) -> TraceRecord:
    return TraceRecord(pc, MemKind.WRITE, addr)


def format_record_text(rec: TraceRecord) -> str:
    """--dump-text 用の 1 行表現（16進 PC、種別文字、16進アドレス）。"""
    return f"0x{rec.pc:016x} {KIND_LETTERS[MemKind(rec.kind)]} 0x{rec.addr:016x}"
