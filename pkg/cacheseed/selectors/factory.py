"""セレクタ名（none / fixed:<割合> / ewss / bloom / ann）からセレクタを組み立てる。"""
from __future__ import annotations

from dataclasses import dataclass

from cacheseed.common.errors import ConfigError, ParameterError
from cacheseed.models.ann import AnnModel
from cacheseed.models.bloom import BloomBank
from cacheseed.models.levels import LevelSet
from .ann_selector import AnnSelector
from .base import FixedSelector, NoneSelector, Selector
from .bloom_selector import BloomSelector
from .ewss import EwssParams, EwssSelector

SELECTOR_KINDS = ("none", "fixed", "ewss", "bloom", "ann")


@dataclass(frozen=True)
class SelectorSpec:
    kind: str
    fraction: float | None = None

    @property
    def name(self) -> str:
        if self.kind == "fixed":
            return f"fixed:{self.fraction:g}"
        return self.kind

    @property
    def needs_model(self) -> bool:
        return self.kind in ("bloom", "ann")


def parse_selector_name(text: str, field: str = "selectors") -> SelectorSpec:
    kind, sep, arg = text.strip().partition(":")
    if kind not in SELECTOR_KINDS:
        raise ConfigError(f"未知のセレクタです: {text!r}", field)
    if kind != "fixed":
        if sep:
            raise ConfigError(f"{kind} セレクタは引数を取りません: {text!r}", field)
        return SelectorSpec(kind)
    try:
        fraction = float(arg)
    except ValueError as e:
        raise ConfigError(f"fixed セレクタの割合が数値ではありません: {text!r}", field) from e
    return SelectorSpec("fixed", fraction)


@dataclass(frozen=True)
class SelectorResources:
    """セレクタ生成に必要な学習済みモデルとパラメータ。"""

    levels: LevelSet
    bloom: BloomBank | None = None
    ann: AnnModel | None = None
    ewss: EwssParams = EwssParams()
    min_interval_accesses: int = 0


def build_selector(spec: SelectorSpec, resources: SelectorResources) -> Selector:
    """1 回の実行ごとに新しいセレクタを作る（セレクタは実行中の状態を持つ）。"""
    levels = resources.levels
    match spec.kind:
        case "none":
            return NoneSelector(levels)
        case "fixed":
            try:
                level = levels.by_fraction(spec.fraction)
            except ParameterError as e:
                raise ConfigError(str(e), "selectors") from e
            return FixedSelector(levels, level)
        case "ewss":
            return EwssSelector(levels, resources.ewss)
        case "bloom":
            if resources.bloom is None:
                raise ConfigError("bloom セレクタにはブルームフィルタのモデルが必要です。", "model")
            return BloomSelector(resources.bloom, min_interval_accesses=resources.min_interval_accesses)
        case "ann":
            if resources.ann is None:
                raise ConfigError("ann セレクタには ANN のモデルが必要です。", "model")
            return AnnSelector(
                resources.ann, levels, min_interval_accesses=resources.min_interval_accesses
            )
    raise ConfigError(f"未知のセレクタです: {spec.kind}", "selectors")
