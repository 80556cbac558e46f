"""
ワーキングセットシグネチャ (WSS) と距離関数。

WSS は 1 実行ウィンドウ中に実行された命令アドレス (PC) をハッシュして
1024bit のビット列に落としたもの。ビット列は Python の int で保持する
（ビット i が 1 ならインデックス i が立っている）。
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from cacheseed.common.errors import DataFormatError, ParameterError
from cacheseed.common.hashing import mix64

WSS_BITS = 1024
WSS_MASK = (1 << WSS_BITS) - 1


@dataclass(frozen=True)
class Wss:
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits > WSS_MASK:
            raise ParameterError("WSS は 1024bit 幅に収まる必要があります。")

    @property
    def count(self) -> int:
        return self.bits.bit_count()

    def is_empty(self) -> bool:
        return self.bits == 0


def popcount(bits) -> int:
    """立っているビット数。int / Wss / 0-1 の iterable を受け付ける。"""
    if isinstance(bits, Wss):
        return bits.count
    if isinstance(bits, int):
        if bits < 0:
            raise ParameterError("負の値の popcount は定義しません。")
        return bits.bit_count()
    return sum(1 for b in bits if b)


@lru_cache(maxsize=1 << 16)
def wss_index(pc: int) -> int:
    """PC を [0, 1024) に写すハッシュ。ループ内の PC は少数なのでキャッシュする。"""
    return mix64(pc) % WSS_BITS


def wss_insert(wss: Wss, pc: int) -> Wss:
    return Wss(wss.bits | (1 << wss_index(pc)))


def wss_distance(a: Wss, b: Wss) -> float:
    """
    popcount(a XOR b) / popcount(a OR b)。

    両方とも空の場合は 0/0 となるため距離 0 と定義する。
    """
    union = (a.bits | b.bits).bit_count()
    if union == 0:
        return 0.0
    return (a.bits ^ b.bits).bit_count() / union


def wss_to_hex(wss: Wss) -> str:
    return f"{wss.bits:0{WSS_BITS // 4}x}"


def wss_from_hex(text: str) -> Wss:
    try:
        value = int(text, 16)
    except (TypeError, ValueError) as e:
        raise DataFormatError(f"WSS の16進表記が不正です: {text!r}") from e
    if not 0 <= value <= WSS_MASK:
        raise DataFormatError("WSS が 1024bit に収まりません。")
    return Wss(value)
