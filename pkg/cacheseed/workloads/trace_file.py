"""
バイナリトレースファイル（リトルエンディアン、パディングなし）。

    ヘッダ 16 バイト: magic "MTRC", u16 version=1, u16 flags=0, u64 レコード数
    レコード 17 バイト: u64 pc, u8 kind (0=none, 1=read, 2=write), u64 addr

kind=0 のレコードの addr は 0 でなければならない。
"""
from __future__ import annotations

import logging
import struct
from pathlib import Path
from typing import BinaryIO, Iterator, TextIO

from cacheseed.common.errors import DataFormatError
from .records import MemKind, Trace, TraceRecord, format_record_text

logger = logging.getLogger(__name__)

TRACE_MAGIC = b"MTRC"
TRACE_VERSION = 1
HEADER = struct.Struct("<4sHHQ")
RECORD = struct.Struct("<QBQ")
CHUNK_RECORDS = 65536

_KINDS = {int(k): k for k in MemKind}


def _encode(rec: TraceRecord, index: int) -> bytes:
    if not isinstance(rec, TraceRecord):
        raise DataFormatError(f"トレースレコードではありません: {rec!r}", record_index=index)
    addr = rec.addr if rec.kind != MemKind.NONE else 0
    return RECORD.pack(rec.pc, int(rec.kind), addr)


def trace_write(trace: Trace, path: str | Path) -> int:
    """trace を書き出し、書いたレコード数を返す。レコード数は最後にヘッダへ書き戻す。"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("wb") as f:
        f.write(HEADER.pack(TRACE_MAGIC, TRACE_VERSION, 0, 0))
        buffer: list[bytes] = []
        for count, rec in enumerate(trace, start=1):
            buffer.append(_encode(rec, count - 1))
            if len(buffer) >= CHUNK_RECORDS:
                f.write(b"".join(buffer))
                buffer.clear()
        f.write(b"".join(buffer))
        f.seek(0)
        f.write(HEADER.pack(TRACE_MAGIC, TRACE_VERSION, 0, count))
    logger.info("トレースを書き出しました: %s (%d レコード)", path, count)
    return count


def _read_header(f: BinaryIO) -> int:
    raw = f.read(HEADER.size)
    if len(raw) < HEADER.size:
        raise DataFormatError("ヘッダが途中で切れています。", offset=len(raw))
    magic, version, flags, count = HEADER.unpack(raw)
    if magic != TRACE_MAGIC:
        raise DataFormatError(f"トレースファイルのマジックが不正です: {magic!r}", offset=0)
    if version != TRACE_VERSION:
        raise DataFormatError(f"未対応のバージョンです: {version}", offset=4)
    if flags != 0:
        raise DataFormatError(f"未対応のフラグです: {flags}", offset=6)
    return count


def _decode(pc: int, kind: int, addr: int, index: int) -> TraceRecord:
    try:
        mem_kind = _KINDS[kind]
    except KeyError:
        raise DataFormatError(
            f"不正なレコード種別です: {kind}",
            record_index=index,
            offset=HEADER.size + index * RECORD.size + 8,
        ) from None
    if mem_kind == MemKind.NONE and addr != 0:
        raise DataFormatError(
            "種別 none のレコードのアドレスが 0 ではありません。",
            record_index=index,
            offset=HEADER.size + index * RECORD.size + 9,
        )
    return TraceRecord(pc, mem_kind, addr)


def iter_trace(path: str | Path) -> Iterator[TraceRecord]:
    """ファイルを先頭から順に読みながらレコードを返す。"""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"トレースファイルが見つかりません: {path}")
    with path.open("rb") as f:
        count = _read_header(f)
        index = 0
        while index < count:
            want = min(CHUNK_RECORDS, count - index)
            data = f.read(want * RECORD.size)
            full = len(data) // RECORD.size
            for pc, kind, addr in RECORD.iter_unpack(data[: full * RECORD.size]):
                yield _decode(pc, kind, addr, index)
                index += 1
            if full < want:
                raise DataFormatError(
                    f"レコードが途中で切れています（ヘッダのレコード数 {count}）。",
                    record_index=index,
                    offset=HEADER.size + index * RECORD.size,
                )
        if f.read(1):
            raise DataFormatError(
                "レコード数を超えるデータが残っています。",
                record_index=count,
                offset=HEADER.size + count * RECORD.size,
            )


def trace_read(path: str | Path) -> list[TraceRecord]:
    return list(iter_trace(path))


def trace_record_count(path: str | Path) -> int:
    with Path(path).open("rb") as f:
        return _read_header(f)


def dump_text(trace: Trace, out: TextIO) -> int:
    """1 行 1 レコードのテキストで書き出す（デバッグ用）。"""
    count = 0
    for count, rec in enumerate(trace, start=1):
        out.write(format_record_text(rec) + "\n")
    return count
