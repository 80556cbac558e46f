"""
MAS 用のブルームフィルタと、サイズレベルごとのフィルタバンク。

ハッシュは 64bit ミックスハッシュに k 個のソルトを与えた独立インスタンス。
ビット列は numpy の bool 配列で持ち、モデルファイルには packbits した
16進文字列で保存する。
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from cacheseed.common.errors import DataFormatError, ParameterError
from cacheseed.common.hashing import hash_salt, seeded_hash
from .levels import LevelSet

DEFAULT_BITS_PER_ELEMENT = 4
DEFAULT_HASH_COUNT = 3


@dataclass(frozen=True)
class BloomParams:
    bits_per_element: int = DEFAULT_BITS_PER_ELEMENT
    k: int = DEFAULT_HASH_COUNT

    def __post_init__(self):
        if self.bits_per_element < 1:
            raise ParameterError("bits_per_element は 1 以上で指定してください。")
        if self.k < 1:
            raise ParameterError("k は 1 以上で指定してください。")


def make_salts(seed: int, k: int) -> tuple[int, ...]:
    return tuple(hash_salt(seed, i) for i in range(k))


def hash_indices(value: int, salts: tuple[int, ...], m: int) -> list[int]:
    return [seeded_hash(value, salt) % m for salt in salts]


class BloomFilter:
    def __init__(
        self,
        m: int,
        salts: tuple[int, ...],
        *,
        bits: np.ndarray | None = None,
        inserted: int = 0,
    ):
        if m < 1:
            raise ParameterError("ビット数 m は 1 以上である必要があります。")
        if not salts:
            raise ParameterError("ハッシュ関数が 1 つもありません。")
        self.m = m
        self.salts = tuple(salts)
        self.bits = np.zeros(m, dtype=bool) if bits is None else bits
        self.inserted = inserted

    @property
    def k(self) -> int:
        return len(self.salts)

    @property
    def size_bytes(self) -> float:
        return self.m / 8

    def add(self, value: int) -> None:
        self.add_indices(hash_indices(value, self.salts, self.m))

    def add_indices(self, indices: list[int]) -> None:
        self.bits[indices] = True
        self.inserted += 1

    def check(self, value: int) -> bool:
        return self.check_indices(hash_indices(value, self.salts, self.m))

    def check_indices(self, indices: list[int]) -> bool:
        bits = self.bits
        return all(bits[i] for i in indices)

    def __contains__(self, value: int) -> bool:
        return self.check(value)

    def popcount(self) -> int:
        return int(np.count_nonzero(self.bits))

    def theoretical_fp_rate(self, n: int | None = None) -> float:
        """(1 - e^{-kn/m})^k"""
        n = self.inserted if n is None else n
        return (1.0 - math.exp(-self.k * n / self.m)) ** self.k

    def bits_hex(self) -> str:
        return np.packbits(self.bits, bitorder="little").tobytes().hex()

    @classmethod
    def from_hex(cls, m: int, salts: tuple[int, ...], text: str, inserted: int) -> "BloomFilter":
        try:
            raw = np.frombuffer(bytes.fromhex(text), dtype=np.uint8)
        except ValueError as e:
            raise DataFormatError("ブルームフィルタのビット列が16進表記ではありません。") from e
        if raw.size != (m + 7) // 8:
            raise DataFormatError(f"ブルームフィルタのビット列長が m={m} と一致しません。")
        bits = np.unpackbits(raw, bitorder="little")[:m].astype(bool)
        return cls(m, salts, bits=bits, inserted=inserted)


def bloom_new(expected_n: int, bits_per_element: int, k: int, seed: int = 0) -> BloomFilter:
    """m = expected_n × bits_per_element のゼロ初期化フィルタを作る。"""
    if expected_n <= 0:
        raise ParameterError(f"expected_n は 1 以上で指定してください: {expected_n}")
    if bits_per_element < 1 or k < 1:
        raise ParameterError("bits_per_element と k は 1 以上で指定してください。")
    return BloomFilter(expected_n * bits_per_element, make_salts(seed, k))


def bloom_add(bloom: BloomFilter, mas: int) -> BloomFilter:
    bloom.add(mas)
    return bloom


def bloom_check(bloom: BloomFilter, mas: int) -> bool:
    return bloom.check(mas)


class BloomBank:
    """
    サイズレベルごとに 1 つのフィルタを持つバンク。

    全フィルタの m・ソルトは共通なので、照会時のハッシュ計算は 1 回で済む。
    """

    def __init__(self, levels: LevelSet, filters: list[BloomFilter], *, seed: int, params: BloomParams):
        if len(filters) != len(levels):
            raise ParameterError("フィルタ数とサイズレベル数が一致しません。")
        if len({(f.m, f.salts) for f in filters}) > 1:
            raise ParameterError("バンク内のフィルタは m と k を揃える必要があります。")
        self.levels = levels
        self.filters = filters
        self.seed = seed
        self.params = params

    @classmethod
    def create(cls, levels: LevelSet, expected_n: int, params: BloomParams, seed: int) -> "BloomBank":
        filters = [bloom_new(expected_n, params.bits_per_element, params.k, seed) for _ in levels]
        return cls(levels, filters, seed=seed, params=params)

    @property
    def m(self) -> int:
        return self.filters[0].m

    @property
    def total_bytes(self) -> float:
        return sum(f.size_bytes for f in self.filters)

    def add(self, level_index: int, mas: int) -> None:
        self.filters[level_index].add(mas)

    def matching_levels(self, mas: int) -> list[int]:
        first = self.filters[0]
        indices = hash_indices(mas, first.salts, first.m)
        return [i for i, f in enumerate(self.filters) if f.check_indices(indices)]

    def first_match(self, mas: int) -> int | None:
        """小さいサイズから順に照会し、最初に一致したレベル番号を返す。"""
        first = self.filters[0]
        indices = hash_indices(mas, first.salts, first.m)
        for i, f in enumerate(self.filters):
            if f.check_indices(indices):
                return i
        return None
