"""メモリアクセスシグネチャ (MAS) とワーキングセットシグネチャ (WSS)。"""
from __future__ import annotations

from .mas import MAS_BITS, mas_from_hex, mas_to_bits, mas_to_hex, mas_update
from .wss import (
    WSS_BITS,
    Wss,
    popcount,
    wss_distance,
    wss_from_hex,
    wss_index,
    wss_insert,
    wss_to_hex,
)

__all__ = [
    "MAS_BITS",
    "WSS_BITS",
    "Wss",
    "mas_from_hex",
    "mas_to_bits",
    "mas_to_hex",
    "mas_update",
    "popcount",
    "wss_distance",
    "wss_from_hex",
    "wss_index",
    "wss_insert",
    "wss_to_hex",
]
