"""ワーキングセットシグネチャ (WSS) と距離関数を素朴な実装と突き合わせる。"""

from __future__ import annotations

import random

import pytest

from cacheseed.common.errors import DataFormatError, ParameterError
from cacheseed.signatures.wss import (
    WSS_BITS,
    Wss,
    popcount,
    wss_distance,
    wss_from_hex,
    wss_index,
    wss_insert,
    wss_to_hex,
)


def _naive_popcount(value: int) -> int:
    return sum((value >> i) & 1 for i in range(WSS_BITS))


def _naive_distance(a: int, b: int) -> float:
    xor = sum(((a >> i) & 1) != ((b >> i) & 1) for i in range(WSS_BITS))
    union = sum(((a >> i) & 1) or ((b >> i) & 1) for i in range(WSS_BITS))
    return 0.0 if union == 0 else xor / union


def test_insert_is_idempotent() -> None:
    once = wss_insert(Wss(), 0x400123)
    twice = wss_insert(once, 0x400123)
    assert once == twice
    assert popcount(once) == 1


def test_insert_never_clears_bits() -> None:
    rng = random.Random(7)
    wss = Wss()
    for _ in range(500):
        new = wss_insert(wss, rng.getrandbits(64))
        assert new.bits & wss.bits == wss.bits
        wss = new


def test_index_in_range_and_stable() -> None:
    for pc in (0, 1, 0x400000, (1 << 64) - 1):
        assert 0 <= wss_index(pc) < WSS_BITS
        assert wss_index(pc) == wss_index(pc)


def test_occupancy_matches_closed_form() -> None:
    expected = WSS_BITS * (1 - (1 - 1 / WSS_BITS) ** 10_000)
    counts = []
    for seed in range(100):
        rng = random.Random(seed)
        bits = 0
        for _ in range(10_000):
            bits |= 1 << wss_index(rng.getrandbits(64))
        counts.append(popcount(bits))
    assert all(abs(c - expected) <= 3 for c in counts)


def test_distance_examples() -> None:
    a = Wss(0b011)
    b = Wss(0b110)
    assert wss_distance(a, a) == 0.0
    assert wss_distance(Wss(0b1), Wss(0b10)) == 1.0
    assert wss_distance(a, b) == pytest.approx(2 / 3)
    assert wss_distance(Wss(), Wss()) == 0.0


def test_distance_matches_naive_oracle() -> None:
    rng = random.Random(99)
    for _ in range(2000):
        a = rng.getrandbits(WSS_BITS)
        b = rng.getrandbits(WSS_BITS) & rng.getrandbits(WSS_BITS)
        d = wss_distance(Wss(a), Wss(b))
        assert d == pytest.approx(_naive_distance(a, b))
        assert d == wss_distance(Wss(b), Wss(a))
        assert 0.0 <= d <= 1.0


def test_popcount_forms() -> None:
    assert popcount(0) == 0
    assert popcount(0xF0) == 4
    assert popcount([1, 0, 1, 1]) == 3
    rng = random.Random(3)
    for _ in range(200):
        v = rng.getrandbits(WSS_BITS)
        assert popcount(v) == _naive_popcount(v)


def test_hex_round_trip_and_errors() -> None:
    wss = Wss(1 << 1023 | 5)
    text = wss_to_hex(wss)
    assert len(text) == 256
    assert wss_from_hex(text) == wss
    with pytest.raises(DataFormatError):
        wss_from_hex("xyz")
    with pytest.raises(ParameterError):
        Wss(1 << WSS_BITS)
