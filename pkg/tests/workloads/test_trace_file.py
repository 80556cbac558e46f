"""バイナリトレースファイルの書き出し・読み込みと破損ファイルの検出を検証する。"""

from __future__ import annotations

import io
import struct

import pytest

from cacheseed.common.errors import DataFormatError
from cacheseed.workloads.corpus import gen_corpus
from cacheseed.workloads.records import compute, read, write
from cacheseed.workloads.spec import WorkloadSpec
from cacheseed.workloads.trace_file import (
    HEADER,
    RECORD,
    dump_text,
    iter_trace,
    trace_read,
    trace_record_count,
    trace_write,
)


def _sample() -> list:
    return [compute(0x400000), read(0x400004, 0x1000_0040), write(0x400008, 0x1000_0080)] * 4


def test_round_trip(tmp_path) -> None:
    trace = list(gen_corpus(WorkloadSpec("transp", 9, iterations=2)))
    path = tmp_path / "transp.trace"
    assert trace_write(trace, path) == len(trace)
    assert trace_read(path) == trace
    assert trace_record_count(path) == len(trace)
    assert path.stat().st_size == HEADER.size + RECORD.size * len(trace)


def test_empty_trace_file(tmp_path) -> None:
    path = tmp_path / "empty.trace"
    assert trace_write([], path) == 0
    assert path.read_bytes() == b"MTRC" + struct.pack("<HHQ", 1, 0, 0)
    assert trace_read(path) == []


def test_truncated_file_names_record(tmp_path) -> None:
    path = tmp_path / "cut.trace"
    trace_write(_sample(), path)
    data = path.read_bytes()
    path.write_bytes(data[: HEADER.size + RECORD.size * 5 + 3])
    with pytest.raises(DataFormatError) as info:
        trace_read(path)
    assert info.value.record_index == 5
    assert info.value.offset == HEADER.size + RECORD.size * 5


def test_records_before_truncation_are_yielded(tmp_path) -> None:
    path = tmp_path / "cut.trace"
    trace_write(_sample(), path)
    path.write_bytes(path.read_bytes()[:-1])
    seen = []
    with pytest.raises(DataFormatError):
        for rec in iter_trace(path):
            seen.append(rec)
    assert seen == _sample()[:-1]


def test_trailing_data_rejected(tmp_path) -> None:
    path = tmp_path / "long.trace"
    trace_write(_sample(), path)
    path.write_bytes(path.read_bytes() + b"\x00")
    with pytest.raises(DataFormatError, match="record=12"):
        trace_read(path)


@pytest.mark.parametrize(
    ("offset", "value", "expected_offset"),
    [(0, b"XTRC", 0), (4, struct.pack("<H", 2), 4), (6, struct.pack("<H", 1), 6)],
)
def test_bad_header(tmp_path, offset, value, expected_offset) -> None:
    path = tmp_path / "bad.trace"
    trace_write(_sample(), path)
    data = bytearray(path.read_bytes())
    data[offset : offset + len(value)] = value
    path.write_bytes(bytes(data))
    with pytest.raises(DataFormatError) as info:
        trace_read(path)
    assert info.value.offset == expected_offset


def test_bad_kind_rejected(tmp_path) -> None:
    path = tmp_path / "kind.trace"
    trace_write(_sample(), path)
    data = bytearray(path.read_bytes())
    data[HEADER.size + RECORD.size * 2 + 8] = 3
    path.write_bytes(bytes(data))
    with pytest.raises(DataFormatError) as info:
        trace_read(path)
    assert info.value.record_index == 2


def test_none_record_with_address_rejected(tmp_path) -> None:
    path = tmp_path / "addr.trace"
    path.write_bytes(HEADER.pack(b"MTRC", 1, 0, 1) + RECORD.pack(0x400000, 0, 0x40))
    with pytest.raises(DataFormatError, match="record=0"):
        trace_read(path)


def test_short_header(tmp_path) -> None:
    path = tmp_path / "short.trace"
    path.write_bytes(b"MTRC")
    with pytest.raises(DataFormatError):
        trace_read(path)


def test_missing_file(tmp_path) -> None:
    with pytest.raises(FileNotFoundError):
        trace_read(tmp_path / "none.trace")


def test_dump_text() -> None:
    out = io.StringIO()
    assert dump_text(_sample()[:3], out) == 3
    lines = out.getvalue().splitlines()
    assert lines[0] == "0x0000000000400000 N 0x0000000000000000"
    assert lines[1] == "0x0000000000400004 R 0x0000000010000040"
    assert lines[2].split()[1] == "W"
