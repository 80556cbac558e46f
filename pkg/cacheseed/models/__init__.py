"""プロファイリングデータから作るモデル（ブルームフィルタバンク、ANN）。"""
from __future__ import annotations

from .ann import (
    AnnHyper,
    AnnModel,
    TrainingSample,
    TrainReport,
    decide_one_hot,
    mlp_forward,
    mlp_gradients,
    mlp_train,
)
from .bloom import BloomBank, BloomFilter, BloomParams, bloom_add, bloom_check, bloom_new
from .levels import DEFAULT_LEVEL_FRACTIONS, LevelSet, LlcSizeLevel
from .model_io import ModelFile, read_model, write_model

__all__ = [
    "DEFAULT_LEVEL_FRACTIONS",
    "AnnHyper",
    "AnnModel",
    "BloomBank",
    "BloomFilter",
    "BloomParams",
    "LevelSet",
    "LlcSizeLevel",
    "ModelFile",
    "TrainReport",
    "TrainingSample",
    "bloom_add",
    "bloom_check",
    "bloom_new",
    "decide_one_hot",
    "mlp_forward",
    "mlp_gradients",
    "mlp_train",
    "read_model",
    "write_model",
]
