"""学習フェーズ（プロファイリング・コスト関数・重複除去・モデル構築）と実行フェーズの実験ハーネス。"""
from __future__ import annotations

from .config import ExperimentConfig, OutputConfig, TrainingConfig, config_from_dict, load_config
from .cost import COST_FUNCTIONS, optimal_size, register_cost_function
from .dedup import LabeledMasSets, LabeledSet, dedup_mas
from .experiment import Report, ReportRow, run_experiment
from .profiler import ProfileDataset, ProfileRun, profile_corpus
from .training import build_ann_model, build_bloom_model, train_model

__all__ = [
    "COST_FUNCTIONS",
    "ExperimentConfig",
    "LabeledMasSets",
    "LabeledSet",
    "OutputConfig",
    "ProfileDataset",
    "ProfileRun",
    "Report",
    "ReportRow",
    "TrainingConfig",
    "build_ann_model",
    "build_bloom_model",
    "config_from_dict",
    "dedup_mas",
    "load_config",
    "optimal_size",
    "profile_corpus",
    "register_cost_function",
    "run_experiment",
    "train_model",
]
