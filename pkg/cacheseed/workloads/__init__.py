"""
トレース生成器（学習用コーパス・評価用ワークロード）とバイナリトレース形式。

cache_sim から参照されるため、このパッケージの初期化では cache_sim を import しない。
"""
from __future__ import annotations

from .candidates import gen_candidate, gen_workload
from .corpus import gen_corpus
from .records import MemKind, Trace, TraceRecord, compute, format_record_text, read, write
from .spec import (
    CANDIDATE_NAMES,
    CORPUS_NAMES,
    CORPUS_SIZES,
    WorkloadSpec,
    default_candidates,
    default_corpus,
)
from .trace_file import dump_text, iter_trace, trace_read, trace_write

__all__ = [
    "CANDIDATE_NAMES",
    "CORPUS_NAMES",
    "CORPUS_SIZES",
    "MemKind",
    "Trace",
    "TraceRecord",
    "WorkloadSpec",
    "compute",
    "default_candidates",
    "default_corpus",
    "dump_text",
    "format_record_text",
    "gen_candidate",
    "gen_corpus",
    "gen_workload",
    "iter_trace",
    "read",
    "trace_read",
    "trace_write",
    "write",
]
