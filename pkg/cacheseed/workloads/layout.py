"""合成トレースのアドレス配置と PC 割り当て。"""
from __future__ import annotations

from cacheseed.common.errors import ParameterError

# 既定 LLC（1024 セット × 64 B）が一巡するアドレス幅。小さい構成のセット数でも割り切れる
SET_SPAN_BYTES = 1024 * 64
PAGE_BYTES = SET_SPAN_BYTES
DATA_BASE = 0x1000_0000
# 配列同士の間隔。SET_SPAN_BYTES の倍数なので各配列の先頭は同じセットに落ちる
ARRAY_SPACING = 1 << 20
SEED_OFFSET_SLOTS = 16

# これより小さい確保は共有の小領域に詰めて置く
SMALL_ALLOC_BYTES = 32
SMALL_ALLOC_ALIGN = 16

CODE_BASE = 0x0040_0000
CODE_SPACING = 0x1_0000
INSTRUCTION_BYTES = 4


def data_base(seed: int, slot: int) -> int:
    """slot 番目の配列の先頭アドレス（seed によって SET_SPAN_BYTES 単位でずらす）。"""
    return DATA_BASE + slot * ARRAY_SPACING + (seed % SEED_OFFSET_SLOTS) * SET_SPAN_BYTES


class Heap:
    """
    1 回の実行で使うデータ領域の割り当て。

    SMALL_ALLOC_BYTES 以上の確保はそれぞれ新しいページ（PAGE_BYTES 境界）の
    先頭から始まる。ページ先頭はどれも同じ LLC セット・L1 セットに落ちるので、
    リストのノードや行ごとに確保した行列は少数のセットに集中する。
    小さい確保は 1 ページ目の小領域に SMALL_ALLOC_ALIGN 境界で詰める。
    """

    def __init__(self, seed: int):
        self.base = data_base(seed, 0)
        self._small_used = 0
        self._pages_used = 1

    def alloc(self, size: int) -> int:
        if size <= 0:
            raise ParameterError(f"確保サイズは正の値で指定してください: {size}")
        if size < SMALL_ALLOC_BYTES:
            aligned = -(-size // SMALL_ALLOC_ALIGN) * SMALL_ALLOC_ALIGN
            if self._small_used + aligned > PAGE_BYTES:
                raise ParameterError("小領域を使い切りました。")
            addr = self.base + self._small_used
            self._small_used += aligned
            return addr
        addr = self.base + self._pages_used * PAGE_BYTES
        self._pages_used += -(-size // PAGE_BYTES)
        return addr

    @property
    def pages_used(self) -> int:
        return self._pages_used


class CodeBlock:
    """ループ本体の文ごとの合成 PC。"""

    def __init__(self, region: int):
        self.base = CODE_BASE + region * CODE_SPACING

    def __getitem__(self, statement: int) -> int:
        return self.base + statement * INSTRUCTION_BYTES
