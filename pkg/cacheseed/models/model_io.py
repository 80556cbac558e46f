"""
学習済みモデルの JSON ファイル入出力。

    {magic, version, kind, geometry, levels, parameters, payload}

bloom の payload はフィルタごとのビット列（16進）、ann の payload は
行優先で並べた重み・バイアス。同じ入力からは同じバイト列が書き出される。
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from cacheseed.cache_sim.geometry import MachineModel
from cacheseed.common.errors import CacheSeedError, DataFormatError
from .ann import AnnModel, TrainReport
from .bloom import BloomBank, BloomFilter, BloomParams, make_salts
from .levels import LevelSet

logger = logging.getLogger(__name__)

MODEL_MAGIC = "cacheseed-model"
MODEL_VERSION = 1
MODEL_KINDS = ("bloom", "ann")


@dataclass(frozen=True)
class ModelFile:
    kind: str
    machine: MachineModel
    levels: LevelSet
    parameters: dict
    bloom: BloomBank | None = None
    ann: AnnModel | None = None


def bloom_document(bank: BloomBank, machine: MachineModel, *, cost_mode: str) -> dict:
    return {
        "magic": MODEL_MAGIC,
        "version": MODEL_VERSION,
        "kind": "bloom",
        "geometry": machine.to_dict(),
        "levels": list(bank.levels.fractions),
        "parameters": {
            "bits_per_element": bank.params.bits_per_element,
            "k": bank.params.k,
            "seed": bank.seed,
            "bits_per_filter": bank.m,
            "total_filter_bytes": bank.total_bytes,
            "inserted": [f.inserted for f in bank.filters],
            "cost_mode": cost_mode,
        },
        "payload": [f.bits_hex() for f in bank.filters],
    }


def ann_document(
    model: AnnModel,
    levels: LevelSet,
    machine: MachineModel,
    *,
    cost_mode: str,
    learning_rate: float,
    report: TrainReport | None = None,
) -> dict:
    parameters: dict = {
        "hidden": model.hidden_size,
        "threshold": model.threshold,
        "learning_rate": learning_rate,
        "parameter_count": model.parameter_count,
        # float32 に換算したメモリ量
        "parameter_bytes": model.parameter_count * 4,
        "cost_mode": cost_mode,
    }
    if report is not None:
        parameters["epochs_run"] = report.epochs_run
        parameters["perfect_fraction"] = report.perfect_fraction
        parameters["converged"] = report.converged
        parameters["sample_count"] = report.sample_count
    return {
        "magic": MODEL_MAGIC,
        "version": MODEL_VERSION,
        "kind": "ann",
        "geometry": machine.to_dict(),
        "levels": list(levels.fractions),
        "parameters": parameters,
        "payload": {
            "w1": model.w1.tolist(),
            "b1": model.b1.tolist(),
            "w2": model.w2.tolist(),
            "b2": model.b2.tolist(),
        },
    }


def write_model(path: str | Path, document: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(document, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    logger.info("モデルを書き出しました: %s (%s)", path, document["kind"])
    return path


def _bank_from_document(doc: dict, levels: LevelSet) -> BloomBank:
    p = doc["parameters"]
    params = BloomParams(bits_per_element=int(p["bits_per_element"]), k=int(p["k"]))
    seed = int(p["seed"])
    m = int(p["bits_per_filter"])
    salts = make_salts(seed, params.k)
    payload = doc["payload"]
    inserted = p.get("inserted", [0] * len(payload))
    filters = [BloomFilter.from_hex(m, salts, text, int(n)) for text, n in zip(payload, inserted)]
    return BloomBank(levels, filters, seed=seed, params=params)


def _ann_from_document(doc: dict) -> AnnModel:
    payload = doc["payload"]
    return AnnModel(
        np.asarray(payload["w1"], dtype=float),
        np.asarray(payload["b1"], dtype=float),
        np.asarray(payload["w2"], dtype=float),
        np.asarray(payload["b2"], dtype=float),
        threshold=float(doc["parameters"]["threshold"]),
    )


def read_model(path: str | Path) -> ModelFile:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"モデルファイルが見つかりません: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise DataFormatError(f"モデルファイルが JSON として読めません: {path}", offset=e.pos) from e

    if not isinstance(doc, dict) or doc.get("magic") != MODEL_MAGIC:
        raise DataFormatError(f"モデルファイルではありません: {path}")
    if doc.get("version") != MODEL_VERSION:
        raise DataFormatError(f"未対応のモデルファイルのバージョンです: {doc.get('version')}")
    kind = doc.get("kind")
    if kind not in MODEL_KINDS:
        raise DataFormatError(f"未対応のモデル種別です: {kind}")

    try:
        machine = MachineModel.from_dict(doc["geometry"])
        levels = LevelSet(doc["levels"])
        if kind == "bloom":
            bank = _bank_from_document(doc, levels)
            return ModelFile(kind, machine, levels, doc["parameters"], bloom=bank)
        ann = _ann_from_document(doc)
        if ann.n_outputs != len(levels):
            raise DataFormatError("ANN の出力数とサイズレベル数が一致しません。")
        return ModelFile(kind, machine, levels, doc["parameters"], ann=ann)
    except DataFormatError:
        raise
    except (KeyError, TypeError, ValueError, CacheSeedError) as e:
        raise DataFormatError(f"モデルファイルの内容が不正です: {path}: {e}") from e
