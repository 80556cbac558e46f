"""ブロック単位で再構成可能な LLC を持つトレース駆動キャッシュシミュレータ。"""
from __future__ import annotations

from .geometry import (
    DEFAULT_L1,
    DEFAULT_LLC,
    DEFAULT_MEMORY_LATENCY,
    CacheGeometry,
    MachineModel,
)
from .hierarchy import AccessOutcome, HierarchyState, simulate_access
from .level import BlockState, CacheLevel
from .reconfig import ReconfigReport, reconfigure_llc
from .runner import RunMetrics, collect_metrics, run_trace

__all__ = [
    "DEFAULT_L1",
    "DEFAULT_LLC",
    "DEFAULT_MEMORY_LATENCY",
    "AccessOutcome",
    "BlockState",
    "CacheGeometry",
    "CacheLevel",
    "HierarchyState",
    "MachineModel",
    "ReconfigReport",
    "RunMetrics",
    "collect_metrics",
    "reconfigure_llc",
    "run_trace",
    "simulate_access",
]
