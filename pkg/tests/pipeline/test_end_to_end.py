"""学習からセレクタ比較までを縮小構成の LLC で通しで検証する。"""

from __future__ import annotations

import pytest

from cacheseed.models.model_io import write_model
from cacheseed.pipeline.config import config_from_dict
from cacheseed.pipeline.experiment import run_experiment
from cacheseed.pipeline.profiler import profile_corpus
from cacheseed.pipeline.training import train_model

# L1 はページ先頭が 1 セットに集まる点で既定と同じ。LLC は 64 セット × 16 way
REDUCED_MACHINE = {
    "l1": {"num_sets": 16, "associativity": 2},
    "llc": {"num_sets": 64, "associativity": 16},
}
CANDIDATES = ("candidate-stream/1024", "candidate-chase/512")


@pytest.fixture(scope="module")
def experiment(tmp_path_factory):
    config = config_from_dict(
        {
            "seed": 21,
            "geometry": REDUCED_MACHINE,
            "corpus": [
                {"name": "list", "data_size": 9, "iterations": 16},
                {"name": "list", "data_size": 100, "iterations": 2},
                {"name": "transp", "data_size": 100, "iterations": 4},
                {"name": "mul", "data_size": 18, "iterations": 1},
            ],
            "candidates": [
                # 1 セットあたり 2 ブロック
                {"name": "candidate-stream", "data_size": 1024, "iterations": 16},
                # 1 セットあたり 8 ブロック
                {"name": "candidate-chase", "data_size": 512, "iterations": 48},
            ],
            "selectors": ["none", "ewss", "bloom"],
        }
    )
    dataset = profile_corpus(config.machine, config.corpus, config.levels)
    document = train_model("bloom", dataset, config.training, seed=config.seed)
    path = write_model(tmp_path_factory.mktemp("model") / "bloom.json", document)
    return dataset, document, run_experiment(config, [path])


def test_corpus_labels(experiment) -> None:
    dataset, _, _ = experiment
    list9, list100, transp100, _ = dataset.runs
    assert dataset.optimal_level(list9, "min-cycles").fraction == 0.6
    assert dataset.optimal_level(transp100, "min-cycles").fraction == 0.8
    # 先頭 12 ノードだけが収まり、残りは全サイズでミスする
    assert dataset.optimal_level(list100, "min-cycles").fraction == 0.8
    assert (1 << 12) - 1 in list100.mas_set
    assert (1 << 13) - 1 not in list100.mas_set


def test_bloom_filters_hold_unshared_mas(experiment) -> None:
    _, document, _ = experiment
    inserted = document["parameters"]["inserted"]
    assert inserted[0] == inserted[1] == inserted[4] == 0
    # list/9 の T_13 .. T_63 と全 1（T_12 までは list/100 と共通）
    assert inserted[2] == 52
    assert inserted[3] > 0


@pytest.mark.parametrize("workload", CANDIDATES)
def test_bloom_shrinks_without_losing_hits(experiment, workload) -> None:
    _, _, report = experiment
    none = report.row(workload, "none").metrics
    ewss = report.row(workload, "ewss").metrics
    bloom = report.row(workload, "bloom").metrics
    assert none.mean_enabled_fraction == 1.0
    assert bloom.mean_enabled_fraction <= 0.90
    assert bloom.llc_miss_rate - none.llc_miss_rate <= 0.05
    assert bloom.mean_enabled_fraction <= ewss.mean_enabled_fraction
    # 実行全体がウィンドウ 1 つに満たない
    assert ewss.mean_enabled_fraction == 1.0
