"""キャッシュ形状とサイクルモデルの定義。"""
from __future__ import annotations

from dataclasses import dataclass, asdict

from cacheseed.common.errors import ParameterError


def _is_power_of_two(value: int) -> bool:
    return value > 0 and (value & (value - 1)) == 0


@dataclass(frozen=True)
class CacheGeometry:
    num_sets: int
    associativity: int
    block_size_bytes: int
    hit_latency_cycles: int

    def __post_init__(self):
        if not _is_power_of_two(self.num_sets):
            raise ParameterError(f"num_sets は 2 のべき乗である必要があります: {self.num_sets}")
        if self.associativity <= 0:
            raise ParameterError(f"associativity は正の値である必要があります: {self.associativity}")
        if not _is_power_of_two(self.block_size_bytes):
            raise ParameterError(
                f"block_size_bytes は 2 のべき乗である必要があります: {self.block_size_bytes}"
            )
        if self.hit_latency_cycles < 0:
            raise ParameterError("hit_latency_cycles は 0 以上である必要があります。")

    @property
    def total_blocks(self) -> int:
        return self.num_sets * self.associativity

    @property
    def offset_bits(self) -> int:
        return self.block_size_bytes.bit_length() - 1

    @property
    def index_bits(self) -> int:
        return self.num_sets.bit_length() - 1

    def split(self, addr: int) -> tuple[int, int]:
        """バイトアドレスを (set_index, tag) に分解する。"""
        block = addr >> self.offset_bits
        return block & (self.num_sets - 1), block >> self.index_bits

    def block_address(self, set_index: int, tag: int) -> int:
        return ((tag << self.index_bits) | set_index) << self.offset_bits

    def to_dict(self) -> dict[str, int]:
        return asdict(self)


# 既定のマシン構成
DEFAULT_L1 = CacheGeometry(num_sets=256, associativity=2, block_size_bytes=64, hit_latency_cycles=2)
DEFAULT_LLC = CacheGeometry(num_sets=1024, associativity=16, block_size_bytes=64, hit_latency_cycles=10)
DEFAULT_MEMORY_LATENCY = 600
DEFAULT_INSTRUCTION_CYCLES = 1


@dataclass(frozen=True)
class MachineModel:
    """
    マシン構成（L1・LLC の形状）と加算型のサイクルモデル。

    1 命令 = instruction_cycles、L1 データアクセス = l1.hit_latency_cycles、
    LLC アクセス = llc.hit_latency_cycles、LLC ミスと dirty ブロックの書き戻し
    = memory_latency_cycles。
    """

    l1: CacheGeometry = DEFAULT_L1
    llc: CacheGeometry = DEFAULT_LLC
    memory_latency_cycles: int = DEFAULT_MEMORY_LATENCY
    instruction_cycles: int = DEFAULT_INSTRUCTION_CYCLES

    def __post_init__(self):
        if self.memory_latency_cycles < 0 or self.instruction_cycles < 0:
            raise ParameterError("サイクル数は 0 以上である必要があります。")

    def to_dict(self) -> dict[str, object]:
        return {
            "l1": self.l1.to_dict(),
            "llc": self.llc.to_dict(),
            "memory_latency_cycles": self.memory_latency_cycles,
            "instruction_cycles": self.instruction_cycles,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MachineModel":
        """to_dict の逆変換。項目の欠落・型の誤りは ParameterError。"""
        try:
            return cls(
                l1=CacheGeometry(**data["l1"]),
                llc=CacheGeometry(**data["llc"]),
                memory_latency_cycles=int(data["memory_latency_cycles"]),
                instruction_cycles=int(data["instruction_cycles"]),
            )
        except (KeyError, TypeError) as e:
            raise ParameterError(f"マシン構成を解釈できません: {e}") from e
