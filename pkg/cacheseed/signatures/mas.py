"""
メモリアクセスシグネチャ (MAS)。

LLC へのアクセスごとに左シフトし、最下位ビットにヒット(1)/ミス(0)を入れる
64bit のシフトレジスタ。値は Python の int（0 <= mas < 2**64）で扱う。
"""
from __future__ import annotations

import numpy as np

from cacheseed.common.errors import DataFormatError

MAS_BITS = 64
MAS_MASK = (1 << MAS_BITS) - 1

_BIT_SHIFTS = np.arange(MAS_BITS, dtype=np.uint64)


def mas_update(mas: int, hit: bool) -> int:
    return ((mas << 1) | (1 if hit else 0)) & MAS_MASK


def mas_to_bits(values) -> np.ndarray:
    """
    MAS（単体または列）をニューラルネット入力用の 0/1 行列に展開する。

    列 i がビット i（i=0 が最新のアクセス結果）に対応する。
    単体なら shape=(64,)、列なら shape=(n, 64) の float64 を返す。
    """
    if isinstance(values, (int, np.integer)):
        arr = np.array([int(values) & MAS_MASK], dtype=np.uint64)
        return ((arr[:, None] >> _BIT_SHIFTS) & np.uint64(1)).astype(np.float64)[0]
    arr = np.array([int(v) & MAS_MASK for v in values], dtype=np.uint64)
    if arr.size == 0:
        return np.zeros((0, MAS_BITS), dtype=np.float64)
    return ((arr[:, None] >> _BIT_SHIFTS) & np.uint64(1)).astype(np.float64)


def mas_to_hex(mas: int) -> str:
    return f"0x{mas & MAS_MASK:016x}"


def mas_from_hex(text: str) -> int:
    try:
        value = int(text, 16)
    except (TypeError, ValueError) as e:
        raise DataFormatError(f"MAS の16進表記が不正です: {text!r}") from e
    if not 0 <= value <= MAS_MASK:
        raise DataFormatError(f"MAS が 64bit に収まりません: {text!r}")
    return value
