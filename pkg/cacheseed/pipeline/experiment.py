"""
実行フェーズ: 評価用ワークロード × セレクタの各組み合わせでトレースを流す。

結果の行は (ワークロード, セレクタ) をキーに集め、設定ファイルの順に並べる。
同じ設定・seed からは同じ内容の Report JSON が書き出される。
"""
from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from cacheseed.cache_sim.geometry import MachineModel
from cacheseed.cache_sim.hierarchy import HierarchyState
from cacheseed.cache_sim.runner import RunMetrics, run_trace
from cacheseed.common.errors import CacheSeedError, ConfigError, DataFormatError
from cacheseed.models.levels import LevelSet
from cacheseed.models.model_io import ModelFile, read_model
from cacheseed.selectors.factory import SelectorResources, SelectorSpec, build_selector
from cacheseed.workloads.candidates import gen_workload
from cacheseed.workloads.spec import WorkloadSpec
from .config import ExperimentConfig

logger = logging.getLogger(__name__)

REPORT_VERSION = 1


@dataclass(frozen=True)
class ReportRow:
    workload: WorkloadSpec
    selector: str
    metrics: RunMetrics
    timeseries: tuple[tuple[int, float], ...] = ()
    set_counts: tuple[tuple[int, ...], ...] | None = None
    telemetry: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        row = {
            "workload": self.workload.to_dict(),
            "selector": self.selector,
            "metrics": self.metrics.to_dict(),
            "timeseries": [[cycle, fraction] for cycle, fraction in self.timeseries],
            "telemetry": self.telemetry,
        }
        if self.set_counts is not None:
            row["set_counts"] = [list(c) for c in self.set_counts]
        return row

    @classmethod
    def from_dict(cls, data: dict) -> "ReportRow":
        w = data["workload"]
        set_counts = data.get("set_counts")
        return cls(
            workload=WorkloadSpec(w["name"], int(w["data_size"]), int(w["seed"]), int(w["iterations"])),
            selector=data["selector"],
            metrics=RunMetrics.from_dict(data["metrics"]),
            timeseries=tuple((int(c), float(f)) for c, f in data.get("timeseries", [])),
            set_counts=None if set_counts is None else tuple(tuple(int(v) for v in c) for c in set_counts),
            telemetry=data.get("telemetry", {}),
        )


@dataclass(frozen=True)
class Report:
    machine: MachineModel
    levels: LevelSet
    rows: tuple[ReportRow, ...]
    models: dict = field(default_factory=dict)

    def row(self, workload_label: str, selector: str) -> ReportRow:
        for r in self.rows:
            if r.workload.label == workload_label and r.selector == selector:
                return r
        raise KeyError(f"{workload_label} × {selector}")

    def to_dict(self) -> dict:
        return {
            "version": REPORT_VERSION,
            "geometry": self.machine.to_dict(),
            "levels": list(self.levels.fractions),
            "models": self.models,
            "rows": [r.to_dict() for r in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json(), encoding="utf-8")
        logger.info("レポートを書き出しました: %s (%d 行)", path, len(self.rows))
        return path

    @classmethod
    def read(cls, path: str | Path) -> "Report":
        path = Path(path)
        if not path.is_file():
            raise FileNotFoundError(f"レポートが見つかりません: {path}")
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise DataFormatError(f"レポートが JSON として読めません: {path}", offset=e.pos) from e
        if not isinstance(data, dict) or data.get("version") != REPORT_VERSION:
            raise DataFormatError(f"未対応のレポート形式です: {path}")
        try:
            return cls(
                machine=MachineModel.from_dict(data["geometry"]),
                levels=LevelSet(data["levels"]),
                rows=tuple(ReportRow.from_dict(r) for r in data["rows"]),
                models=data.get("models", {}),
            )
        except (KeyError, TypeError, ValueError, CacheSeedError) as e:
            raise DataFormatError(f"レポートの内容が不正です: {path}: {e}") from e


def run_cell(
    machine: MachineModel,
    workload: WorkloadSpec,
    selector_spec: SelectorSpec,
    resources: SelectorResources,
    *,
    timeseries: bool = True,
    set_dump: bool = False,
    label: str | None = None,
) -> ReportRow:
    """1 ワークロードを 1 セレクタで実行する（プロセスプールからも呼ばれる）。"""
    selector = build_selector(selector_spec, resources)
    state = HierarchyState(machine, track_sets=set_dump)
    trace = gen_workload(workload, window_instructions=resources.ewss.window_instructions)
    metrics = run_trace(state, trace, selector)
    logger.info(
        "%s × %s: cycles=%d miss_rate=%.4f enabled=%.3f",
        workload.label,
        label or selector_spec.name,
        metrics.cycles,
        metrics.llc_miss_rate,
        metrics.mean_enabled_fraction,
    )
    return ReportRow(
        workload=workload,
        selector=label or selector_spec.name,
        metrics=metrics,
        timeseries=tuple(state.timeline) if timeseries else (),
        set_counts=tuple(tuple(c) for c in state.set_counts) if state.set_counts is not None else None,
        telemetry=selector.telemetry(),
    )


def load_models(paths: Sequence[str | Path], config: ExperimentConfig) -> dict[str, ModelFile]:
    """モデルファイルを種別ごとに読み込み、マシン構成とサイズレベルの一致を確かめる。"""
    models: dict[str, ModelFile] = {}
    for path in paths:
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"モデルファイルが見つかりません: {path}", "model")
        model = read_model(path)
        if model.machine != config.machine:
            raise ConfigError(f"モデルのマシン構成が設定と一致しません: {path}", "geometry")
        if model.levels != config.levels:
            raise ConfigError(f"モデルのサイズレベルが設定と一致しません: {path}", "levels")
        if model.kind in models:
            raise ConfigError(f"同じ種別のモデルが複数指定されています: {model.kind}", "model")
        models[model.kind] = model
    return models


def selector_resources(config: ExperimentConfig, models: dict[str, ModelFile]) -> SelectorResources:
    bloom = models.get("bloom")
    ann = models.get("ann")
    return SelectorResources(
        levels=config.levels,
        bloom=bloom.bloom if bloom else None,
        ann=ann.ann if ann else None,
        ewss=config.training.ewss,
        min_interval_accesses=config.training.min_interval_accesses,
    )


def run_experiment(config: ExperimentConfig, model_paths: Sequence[str | Path] = ()) -> Report:
    models = load_models(model_paths, config)
    for spec in config.selectors:
        if spec.needs_model and spec.kind not in models:
            raise ConfigError(f"{spec.name} セレクタのモデルファイルが指定されていません。", "model")
    resources = selector_resources(config, models)
    cells = [(w, s) for w in config.candidates for s in config.selectors]
    logger.info("実験開始: %d ワークロード × %d セレクタ", len(config.candidates), len(config.selectors))

    options = {"timeseries": config.output.timeseries, "set_dump": config.output.set_dump}
    results: dict[tuple[int, int], ReportRow] = {}
    if config.training.workers > 1:
        with ProcessPoolExecutor(max_workers=config.training.workers) as pool:
            futures = {
                (i, j): pool.submit(run_cell, config.machine, w, s, resources, **options)
                for i, w in enumerate(config.candidates)
                for j, s in enumerate(config.selectors)
            }
            for key, future in futures.items():
                results[key] = future.result()
    else:
        for i, w in enumerate(config.candidates):
            for j, s in enumerate(config.selectors):
                results[(i, j)] = run_cell(config.machine, w, s, resources, **options)

    rows = tuple(results[key] for key in sorted(results))
    logger.info("実験完了: %d 行", len(cells))
    return Report(
        machine=config.machine,
        levels=config.levels,
        rows=rows,
        models={kind: dict(sorted(m.parameters.items())) for kind, m in sorted(models.items())},
    )
