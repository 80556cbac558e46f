"""BLOOM: サイズレベルごとのブルームフィルタで現在の MAS を照会する。"""
from __future__ import annotations

from cacheseed.models.bloom import BloomBank
from .base import AccessDrivenSelector, ReconfigCommand


def bloom_select(bank: BloomBank, mas: int) -> ReconfigCommand | None:
    """小さいサイズから順に照会し、最初に一致したサイズを返す。一致なしは None。"""
    index = bank.first_match(mas)
    if index is None:
        return None
    return ReconfigCommand(bank.levels[index])


class BloomSelector(AccessDrivenSelector):
    name = "bloom"

    def __init__(self, bank: BloomBank, *, min_interval_accesses: int = 0):
        super().__init__(bank.levels, min_interval_accesses=min_interval_accesses)
        self.bank = bank

    def decide(self, mas: int) -> ReconfigCommand | None:
        return bloom_select(self.bank, mas)
