"""ワークロード指定（名前・データサイズ・seed・繰り返し回数）。"""
from __future__ import annotations

from dataclasses import dataclass, replace

from cacheseed.common.errors import ParameterError
from cacheseed.common.hashing import derive_seed

# 学習用の 4 プログラムと、そのデータサイズ（ノード数／整数の個数）
CORPUS_SIZES: dict[str, tuple[int, ...]] = {
    "list": (9, 100, 1024),
    "sort": (9, 100, 1024),
    "transp": (9, 100, 1024),
    "mul": (18, 200, 2048),
}
CORPUS_NAMES = tuple(CORPUS_SIZES)
CANDIDATE_NAMES = ("candidate-stream", "candidate-chase", "candidate-blocked")

DEFAULT_ITERATIONS: dict[str, int] = {
    "list": 1024,
    "sort": 8,
    "transp": 32,
    "mul": 4,
    "candidate-stream": 14,
    "candidate-chase": 24,
    "candidate-blocked": 2,
}
DEFAULT_CANDIDATE_SIZES: dict[str, int] = {
    # 8 バイト要素数（128 KiB）
    "candidate-stream": 16384,
    # 64 バイト間隔のノード数（512 KiB）
    "candidate-chase": 8192,
    # 正方行列の一辺（4 バイト要素）
    "candidate-blocked": 256,
}
DEFAULT_SEED = 1


@dataclass(frozen=True)
class WorkloadSpec:
    name: str
    data_size: int
    seed: int = DEFAULT_SEED
    iterations: int | None = None

    def __post_init__(self):
        if self.name not in CORPUS_SIZES and self.name not in CANDIDATE_NAMES:
            raise ParameterError(f"未知のワークロードです: {self.name}")
        if self.data_size <= 0:
            raise ParameterError(f"data_size は正の値で指定してください: {self.data_size}")
        if self.iterations is not None and self.iterations < 0:
            raise ParameterError(f"iterations は 0 以上で指定してください: {self.iterations}")

    @property
    def is_corpus(self) -> bool:
        return self.name in CORPUS_SIZES

    @property
    def resolved_iterations(self) -> int:
        if self.iterations is not None:
            return self.iterations
        return DEFAULT_ITERATIONS[self.name]

    @property
    def label(self) -> str:
        return f"{self.name}/{self.data_size}"

    def with_seed(self, seed: int) -> "WorkloadSpec":
        return replace(self, seed=seed)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "data_size": self.data_size,
            "seed": self.seed,
            "iterations": self.resolved_iterations,
        }

    @classmethod
    def parse(cls, text: str, *, seed: int = DEFAULT_SEED, iterations: int | None = None) -> "WorkloadSpec":
        """"list/1024" 形式。候補ワークロードはサイズ省略可（"candidate-chase"）。"""
        name, sep, size = text.strip().partition("/")
        if not sep:
            if name not in DEFAULT_CANDIDATE_SIZES:
                raise ParameterError(f"ワークロードは <名前>/<サイズ> の形式で指定してください: {text!r}")
            return cls(name, DEFAULT_CANDIDATE_SIZES[name], seed, iterations)
        try:
            data_size = int(size)
        except ValueError as e:
            raise ParameterError(f"データサイズが整数ではありません: {text!r}") from e
        return cls(name, data_size, seed, iterations)


def default_corpus(seed: int = DEFAULT_SEED) -> list[WorkloadSpec]:
    """既定コーパスの 12 組。seed はワークロードごとに上位 seed から派生させる。"""
    return [
        WorkloadSpec(name, size, derive_seed(seed, name, size))
        for name, sizes in CORPUS_SIZES.items()
        for size in sizes
    ]


def default_candidates(seed: int = DEFAULT_SEED) -> list[WorkloadSpec]:
    return [
        WorkloadSpec(name, DEFAULT_CANDIDATE_SIZES[name], derive_seed(seed, name))
        for name in CANDIDATE_NAMES
    ]
