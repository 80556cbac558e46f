"""ラベル付き MAS 集合からのモデル構築（ブルームフィルタバンク / ANN）。"""
from __future__ import annotations

import logging

from cacheseed.cache_sim.geometry import MachineModel
from cacheseed.common.errors import ParameterError
from cacheseed.common.hashing import derive_seed
from cacheseed.models.ann import AnnHyper, AnnModel, TrainingSample, TrainReport, mlp_train
from cacheseed.models.bloom import BloomBank, BloomParams
from cacheseed.models.model_io import ann_document, bloom_document
from .config import TrainingConfig
from .dedup import LabeledMasSets, dedup_mas
from .profiler import ProfileDataset

logger = logging.getLogger(__name__)

MODEL_KINDS = ("bloom", "ann")


def build_bloom_model(labeled: LabeledMasSets, params: BloomParams = BloomParams(), *, seed: int = 0) -> BloomBank:
    """全フィルタを m = (総登録数) × bits_per_element で作り、MAS をラベルのフィルタへ登録する。"""
    expected_n = max(1, labeled.total_inserts)
    bank = BloomBank.create(labeled.levels, expected_n, params, seed)
    for s in labeled.sets:
        for mas in sorted(s.mas):
            bank.add(s.level.index, mas)
    logger.info(
        "ブルームフィルタ構築: 登録数=%d m=%d k=%d 合計 %.1f KB",
        labeled.total_inserts,
        bank.m,
        params.k,
        bank.total_bytes / 1024,
    )
    return bank


def training_samples(labeled: LabeledMasSets) -> list[TrainingSample]:
    return [
        TrainingSample(mas, s.level.index)
        for s in labeled.sets
        for mas in sorted(s.mas)
    ]


def build_ann_model(
    labeled: LabeledMasSets,
    hyper: AnnHyper = AnnHyper(),
    *,
    seed: int = 0,
) -> tuple[AnnModel, TrainReport]:
    samples = training_samples(labeled)
    return mlp_train(samples, hyper, n_outputs=len(labeled.levels), seed=seed)


def train_model(
    kind: str,
    dataset: ProfileDataset,
    training: TrainingConfig,
    *,
    seed: int,
    machine: MachineModel | None = None,
) -> dict:
    """データセットから kind のモデルを学習し、モデルファイルの内容を返す。"""
    if kind not in MODEL_KINDS:
        raise ParameterError(f"未知のモデル種別です: {kind}")
    machine = machine or dataset.machine
    labeled = dedup_mas(dataset, training.cost_mode, apps=training.apps)
    model_seed = derive_seed(seed, "model", kind)
    if kind == "bloom":
        bank = build_bloom_model(labeled, training.bloom, seed=model_seed)
        return bloom_document(bank, machine, cost_mode=training.cost_mode)
    model, report = build_ann_model(labeled, training.ann, seed=model_seed)
    return ann_document(
        model,
        labeled.levels,
        machine,
        cost_mode=training.cost_mode,
        learning_rate=training.ann.learning_rate,
        report=report,
    )
