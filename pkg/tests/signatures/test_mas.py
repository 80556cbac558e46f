"""メモリアクセスシグネチャ (MAS) の更新と展開を検証する。"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from cacheseed.common.errors import DataFormatError
from cacheseed.signatures.mas import MAS_MASK, mas_from_hex, mas_to_bits, mas_to_hex, mas_update


def test_hit_sets_lsb() -> None:
    assert mas_update(0x0, True) == 0x1


def test_miss_shifts_in_zero() -> None:
    assert mas_update(0x1, False) == 0x2


def test_saturates_after_64_hits() -> None:
    mas = 0
    for _ in range(64):
        mas = mas_update(mas, True)
    assert mas == 0xFFFF_FFFF_FFFF_FFFF
    assert mas_update(mas, True) == mas


def test_old_history_shifted_out() -> None:
    mas = mas_update(0, True)
    for _ in range(64):
        mas = mas_update(mas, False)
    assert mas == 0


def test_distinct_64_outcome_sequences_give_distinct_values() -> None:
    seen = {}
    for prefix in itertools.product((False, True), repeat=10):
        mas = 0
        for hit in prefix + (True,) * 54:
            mas = mas_update(mas, hit)
        assert mas not in seen
        seen[mas] = prefix
    assert all(0 <= v <= MAS_MASK for v in seen)


def test_to_bits_single_and_batch() -> None:
    bits = mas_to_bits(0b101)
    assert bits.shape == (64,)
    assert bits[:4].tolist() == [1.0, 0.0, 1.0, 0.0]
    assert bits.sum() == 2

    batch = mas_to_bits([0, MAS_MASK, 1 << 63])
    assert batch.shape == (3, 64)
    np.testing.assert_array_equal(batch[0], np.zeros(64))
    np.testing.assert_array_equal(batch[1], np.ones(64))
    assert batch[2, 63] == 1.0 and batch[2].sum() == 1


def test_hex_rendering() -> None:
    assert mas_to_hex(0xAB) == "0x00000000000000ab"
    assert mas_from_hex(mas_to_hex(0xDEADBEEF)) == 0xDEADBEEF


@pytest.mark.parametrize("text", ["zz", "0x1" + "0" * 16, ""])
def test_bad_hex_raises(text: str) -> None:
    with pytest.raises(DataFormatError):
        mas_from_hex(text)
