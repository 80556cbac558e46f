"""
コーパスの部分集合ごとに ANN を学習し、1 つのワークロードで比較する。

行のセレクタ名は "ann[lm]" のように、学習に使ったアプリケーションの
頭文字を並べたもの。比較用に "none" の行を先頭に置く。
"""
from __future__ import annotations

import logging
from itertools import combinations

from cacheseed.common.errors import DatasetError
from cacheseed.common.hashing import derive_seed
from cacheseed.selectors.factory import SelectorResources, SelectorSpec
from cacheseed.workloads.spec import WorkloadSpec
from .config import ExperimentConfig
from .dedup import dedup_mas
from .experiment import Report, run_cell
from .profiler import ProfileDataset
from .training import build_ann_model

logger = logging.getLogger(__name__)


def app_subsets(apps: list[str]) -> list[tuple[str, ...]]:
    return [combo for size in range(1, len(apps) + 1) for combo in combinations(apps, size)]


def subset_label(subset: tuple[str, ...]) -> str:
    return "ann[" + "".join(app[0] for app in subset) + "]"


def run_subset_study(config: ExperimentConfig, dataset: ProfileDataset, workload: WorkloadSpec) -> Report:
    apps = sorted({run.app for run in dataset.runs})
    training = config.training
    base = SelectorResources(
        levels=dataset.levels,
        ewss=training.ewss,
        min_interval_accesses=training.min_interval_accesses,
    )
    options = {"timeseries": config.output.timeseries, "set_dump": config.output.set_dump}
    rows = [run_cell(dataset.machine, workload, SelectorSpec("none"), base, **options)]

    for subset in app_subsets(apps):
        label = subset_label(subset)
        labeled = dedup_mas(dataset, training.cost_mode, apps=subset)
        try:
            model, report = build_ann_model(
                labeled, training.ann, seed=derive_seed(config.seed, "model", "ann", *subset)
            )
        except DatasetError as e:
            logger.warning("%s: 学習できないため省略します: %s", label, e)
            continue
        logger.debug("%s: epochs=%d 完全一致率=%.3f", label, report.epochs_run, report.perfect_fraction)
        resources = SelectorResources(
            levels=dataset.levels,
            ann=model,
            ewss=training.ewss,
            min_interval_accesses=training.min_interval_accesses,
        )
        rows.append(run_cell(dataset.machine, workload, SelectorSpec("ann"), resources, label=label, **options))

    return Report(machine=dataset.machine, levels=dataset.levels, rows=tuple(rows))
