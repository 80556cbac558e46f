"""リポジトリルートを import パスに追加し、共通の小さな fixture を提供する。"""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

ROOT_DIR = Path(__file__).resolve().parents[1]
if str(ROOT_DIR) not in sys.path:
    sys.path.insert(0, str(ROOT_DIR))

from cacheseed.cache_sim.geometry import CacheGeometry, MachineModel  # noqa: E402


@pytest.fixture
def tiny_machine() -> MachineModel:
    """L1 2 セット × 1 way、LLC 4 セット × 4 way の小さなマシン。"""
    return MachineModel(
        l1=CacheGeometry(num_sets=2, associativity=1, block_size_bytes=64, hit_latency_cycles=2),
        llc=CacheGeometry(num_sets=4, associativity=4, block_size_bytes=64, hit_latency_cycles=10),
        memory_latency_cycles=600,
        instruction_cycles=1,
    )
