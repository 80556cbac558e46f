"""モデルファイル（JSON）の書き出し・読み込みと不正ファイルの扱いを検証する。"""

from __future__ import annotations

import json

import numpy as np
import pytest

from cacheseed.cache_sim.geometry import MachineModel
from cacheseed.common.errors import DataFormatError
from cacheseed.models.ann import AnnModel, TrainingSample, mlp_train
from cacheseed.models.bloom import BloomBank, BloomParams
from cacheseed.models.levels import LevelSet
from cacheseed.models.model_io import (
    MODEL_MAGIC,
    ann_document,
    bloom_document,
    read_model,
    write_model,
)


def _bank() -> BloomBank:
    bank = BloomBank.create(LevelSet(), expected_n=20, params=BloomParams(), seed=11)
    for i in range(20):
        bank.add(i % 5, 0x1000 + i)
    return bank


def test_bloom_model_round_trip(tmp_path) -> None:
    bank = _bank()
    machine = MachineModel()
    path = write_model(tmp_path / "bloom.json", bloom_document(bank, machine, cost_mode="min-cycles"))
    loaded = read_model(path)
    assert loaded.kind == "bloom"
    assert loaded.machine == machine
    assert loaded.levels == LevelSet()
    assert loaded.parameters["cost_mode"] == "min-cycles"
    assert loaded.bloom is not None
    for i in range(20):
        assert loaded.bloom.first_match(0x1000 + i) == bank.first_match(0x1000 + i)


def test_ann_model_round_trip(tmp_path) -> None:
    model, report = mlp_train([TrainingSample(5, 1), TrainingSample(9, 4)], n_outputs=5, seed=0)
    doc = ann_document(model, LevelSet(), MachineModel(), cost_mode="min-cycles", learning_rate=0.7, report=report)
    path = write_model(tmp_path / "ann.json", doc)
    loaded = read_model(path)
    assert loaded.kind == "ann"
    assert loaded.ann is not None
    np.testing.assert_array_equal(loaded.ann.w1, model.w1)
    np.testing.assert_array_equal(loaded.ann.b2, model.b2)
    assert loaded.parameters["parameter_count"] == 64 * 32 + 32 + 32 * 5 + 5
    assert loaded.parameters["parameter_bytes"] == 4 * loaded.parameters["parameter_count"]


def test_written_bytes_are_deterministic(tmp_path) -> None:
    machine = MachineModel()
    a = write_model(tmp_path / "a.json", bloom_document(_bank(), machine, cost_mode="min-cycles"))
    b = write_model(tmp_path / "b.json", bloom_document(_bank(), machine, cost_mode="min-cycles"))
    assert a.read_bytes() == b.read_bytes()


def test_missing_model_file(tmp_path) -> None:
    with pytest.raises(FileNotFoundError):
        read_model(tmp_path / "none.json")


def test_not_json(tmp_path) -> None:
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(DataFormatError):
        read_model(path)


@pytest.mark.parametrize(
    "patch",
    [
        {"magic": "other"},
        {"version": 99},
        {"kind": "svm"},
        {"levels": [0.5, 0.2]},
    ],
)
def test_invalid_header_rejected(tmp_path, patch) -> None:
    doc = ann_document(AnnModel.zeros(5), LevelSet(), MachineModel(), cost_mode="min-cycles", learning_rate=0.7)
    doc.update(patch)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    with pytest.raises(DataFormatError):
        read_model(path)


def test_ann_output_count_must_match_levels(tmp_path) -> None:
    doc = ann_document(AnnModel.zeros(3), LevelSet(), MachineModel(), cost_mode="min-cycles", learning_rate=0.7)
    path = tmp_path / "mismatch.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    with pytest.raises(DataFormatError, match="出力数"):
        read_model(path)


def test_magic_is_written() -> None:
    doc = bloom_document(_bank(), MachineModel(), cost_mode="smallest-no-increase")
    assert doc["magic"] == MODEL_MAGIC
    assert len(doc["payload"]) == 5
