"""ANN: MAS をネットワークに通し、出力がちょうど 1 つ立ったときだけサイズを決める。"""
from __future__ import annotations

from cacheseed.common.errors import ParameterError
from cacheseed.models.ann import AnnModel, decide_one_hot, mlp_forward
from cacheseed.models.levels import LevelSet
from cacheseed.signatures.mas import mas_to_bits
from .base import AccessDrivenSelector, ReconfigCommand


def ann_select(model: AnnModel, mas: int, levels: LevelSet) -> ReconfigCommand | None:
    outputs = mlp_forward(model, mas_to_bits(mas))
    index = decide_one_hot(outputs, model.threshold)
    if index is None:
        return None
    return ReconfigCommand(levels[index])


class AnnSelector(AccessDrivenSelector):
    name = "ann"

    def __init__(self, model: AnnModel, levels: LevelSet, *, min_interval_accesses: int = 0):
        if model.n_outputs != len(levels):
            raise ParameterError("ANN の出力数とサイズレベル数が一致しません。")
        super().__init__(levels, min_interval_accesses=min_interval_accesses)
        self.model = model

    def decide(self, mas: int) -> ReconfigCommand | None:
        return ann_select(self.model, mas, self.levels)
