"""64bit 整数ミックスハッシュ（splitmix64 の finalizer）。

WSS のインデックス計算とブルームフィルタのハッシュで共用する。
プラットフォームや実行ごとに結果が変わらないことが前提。
"""
from __future__ import annotations

MASK64 = 0xFFFF_FFFF_FFFF_FFFF
_GOLDEN_GAMMA = 0x9E37_79B9_7F4A_7C15


def mix64(value: int) -> int:
    x = value & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58_476D_1CE4_E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D0_49BB_1331_11EB) & MASK64
    return x ^ (x >> 31)


def hash_salt(seed: int, index: int) -> int:
    """seed と通し番号から独立したハッシュ系列用のソルトを作る。"""
    return mix64((seed & MASK64) + (index + 1) * _GOLDEN_GAMMA)


def seeded_hash(value: int, salt: int) -> int:
    return mix64((value & MASK64) ^ salt)


def derive_seed(seed: int, *labels: object) -> int:
    """上位 seed とラベル列から派生 seed を作る（ワークロード毎の seed など）。"""
    h = mix64(seed)
    for label in labels:
        for ch in str(label).encode("utf-8"):
            h = mix64(h ^ ch)
        h = mix64(h + _GOLDEN_GAMMA)
    return h & 0x7FFF_FFFF_FFFF_FFFF
