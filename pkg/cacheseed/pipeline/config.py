"""
実験設定ファイル（JSON）の読み込み。

    {seed, geometry, levels, corpus, candidates, selectors, training, output}

未知のキーはどの階層でも ConfigError とし、項目のパスをメッセージに含める。
省略した項目は既定値（既定マシン構成、5 段階のサイズレベル、12 組のコーパス）。
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from cacheseed.cache_sim.geometry import DEFAULT_L1, DEFAULT_LLC, CacheGeometry, MachineModel
from cacheseed.common.errors import ConfigError, ParameterError
from cacheseed.common.hashing import derive_seed
from cacheseed.models.ann import AnnHyper
from cacheseed.models.bloom import BloomParams
from cacheseed.models.levels import DEFAULT_LEVEL_FRACTIONS, LevelSet
from cacheseed.selectors.ewss import EwssParams
from cacheseed.selectors.factory import SelectorSpec, parse_selector_name
from cacheseed.workloads.spec import (
    CORPUS_NAMES,
    DEFAULT_SEED,
    WorkloadSpec,
    default_candidates,
    default_corpus,
)
from .cost import COST_FUNCTIONS, DEFAULT_COST_MODE

logger = logging.getLogger(__name__)

DEFAULT_SELECTORS = ("none", "ewss", "bloom", "ann")


@dataclass(frozen=True)
class TrainingConfig:
    cost_mode: str = DEFAULT_COST_MODE
    profiling_level: float = 1.0
    bloom: BloomParams = BloomParams()
    ann: AnnHyper = AnnHyper()
    ewss: EwssParams = EwssParams()
    min_interval_accesses: int = 0
    workers: int = 1
    apps: tuple[str, ...] | None = None


@dataclass(frozen=True)
class OutputConfig:
    timeseries: bool = True
    set_dump: bool = False


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = DEFAULT_SEED
    machine: MachineModel = MachineModel()
    levels: LevelSet = field(default_factory=LevelSet)
    corpus: tuple[WorkloadSpec, ...] = ()
    candidates: tuple[WorkloadSpec, ...] = ()
    selectors: tuple[SelectorSpec, ...] = ()
    training: TrainingConfig = TrainingConfig()
    output: OutputConfig = OutputConfig()


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _section(data: Any, allowed: set[str], path: str) -> dict:
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError("オブジェクトで指定してください。", path)
    for key in data:
        if key not in allowed:
            raise ConfigError("未知の設定項目です。", _join(path, key))
    return data


def _int(data: dict, key: str, default: int, path: str, *, minimum: int | None = None) -> int:
    value = data.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"整数で指定してください: {value!r}", _join(path, key))
    if minimum is not None and value < minimum:
        raise ConfigError(f"{minimum} 以上で指定してください: {value}", _join(path, key))
    return value


def _float(data: dict, key: str, default: float, path: str) -> float:
    value = data.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"数値で指定してください: {value!r}", _join(path, key))
    return float(value)


def _bool(data: dict, key: str, default: bool, path: str) -> bool:
    value = data.get(key, default)
    if not isinstance(value, bool):
        raise ConfigError(f"true / false で指定してください: {value!r}", _join(path, key))
    return value


_GEOMETRY_KEYS = {"num_sets", "associativity", "block_size_bytes", "hit_latency_cycles"}


def _parse_geometry(data: Any, default: CacheGeometry, path: str) -> CacheGeometry:
    section = _section(data, _GEOMETRY_KEYS, path)
    values = {key: _int(section, key, getattr(default, key), path) for key in _GEOMETRY_KEYS}
    try:
        return CacheGeometry(**values)
    except ParameterError as e:
        raise ConfigError(str(e), path) from e


def _parse_machine(data: Any) -> MachineModel:
    path = "geometry"
    section = _section(data, {"l1", "llc", "memory_latency_cycles", "instruction_cycles"}, path)
    default = MachineModel()
    try:
        return MachineModel(
            l1=_parse_geometry(section.get("l1"), DEFAULT_L1, f"{path}.l1"),
            llc=_parse_geometry(section.get("llc"), DEFAULT_LLC, f"{path}.llc"),
            memory_latency_cycles=_int(section, "memory_latency_cycles", default.memory_latency_cycles, path),
            instruction_cycles=_int(section, "instruction_cycles", default.instruction_cycles, path),
        )
    except ParameterError as e:
        raise ConfigError(str(e), path) from e


def _parse_levels(data: Any) -> LevelSet:
    if data is None:
        return LevelSet(DEFAULT_LEVEL_FRACTIONS)
    if not isinstance(data, list) or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in data):
        raise ConfigError("数値のリストで指定してください。", "levels")
    try:
        return LevelSet(data)
    except ParameterError as e:
        raise ConfigError(str(e), "levels") from e


def _parse_workloads(data: Any, path: str, seed: int, *, corpus_only: bool) -> tuple[WorkloadSpec, ...]:
    if not isinstance(data, list):
        raise ConfigError("ワークロード指定のリストで指定してください。", path)
    specs = []
    for i, entry in enumerate(data):
        item_path = f"{path}[{i}]"
        section = _section(entry, {"name", "data_size", "seed", "iterations"}, item_path)
        name = section.get("name")
        if not isinstance(name, str):
            raise ConfigError("name を文字列で指定してください。", f"{item_path}.name")
        if corpus_only and name not in CORPUS_NAMES:
            raise ConfigError(f"コーパスに使えるのは {CORPUS_NAMES} です: {name}", f"{item_path}.name")
        data_size = _int(section, "data_size", 0, item_path, minimum=1)
        workload_seed = _int(section, "seed", derive_seed(seed, name, data_size), item_path, minimum=0)
        iterations = section.get("iterations")
        if iterations is not None:
            iterations = _int(section, "iterations", 0, item_path, minimum=0)
        try:
            specs.append(WorkloadSpec(name, data_size, workload_seed, iterations))
        except ParameterError as e:
            raise ConfigError(str(e), item_path) from e
    return tuple(specs)


def _parse_selectors(data: Any, levels: LevelSet) -> tuple[SelectorSpec, ...]:
    if data is None:
        data = list(DEFAULT_SELECTORS)
    if not isinstance(data, list) or not all(isinstance(v, str) for v in data):
        raise ConfigError("セレクタ名のリストで指定してください。", "selectors")
    specs = []
    for i, name in enumerate(data):
        spec = parse_selector_name(name, f"selectors[{i}]")
        if spec.kind == "fixed":
            try:
                levels.by_fraction(spec.fraction)
            except ParameterError as e:
                raise ConfigError(str(e), f"selectors[{i}]") from e
        specs.append(spec)
    return tuple(specs)


def _parse_training(data: Any, levels: LevelSet) -> TrainingConfig:
    path = "training"
    section = _section(
        data,
        {"cost_mode", "profiling_level", "bloom", "ann", "ewss", "min_interval_accesses", "workers", "apps"},
        path,
    )
    default = TrainingConfig()

    cost_mode = section.get("cost_mode", default.cost_mode)
    if cost_mode not in COST_FUNCTIONS:
        raise ConfigError(f"未知のコスト関数です: {cost_mode!r}", f"{path}.cost_mode")
    profiling_level = _float(section, "profiling_level", default.profiling_level, path)
    try:
        levels.by_fraction(profiling_level)
    except ParameterError as e:
        raise ConfigError(str(e), f"{path}.profiling_level") from e

    bloom = _section(section.get("bloom"), {"bits_per_element", "k"}, f"{path}.bloom")
    ann = _section(section.get("ann"), {"learning_rate", "max_epochs", "threshold"}, f"{path}.ann")
    ewss = _section(
        section.get("ewss"),
        {"window_instructions", "distance_threshold", "stable_limit", "unstable_limit"},
        f"{path}.ewss",
    )
    try:
        bloom_params = BloomParams(
            bits_per_element=_int(bloom, "bits_per_element", default.bloom.bits_per_element, f"{path}.bloom"),
            k=_int(bloom, "k", default.bloom.k, f"{path}.bloom"),
        )
    except ParameterError as e:
        raise ConfigError(str(e), f"{path}.bloom") from e
    try:
        hyper = AnnHyper(
            learning_rate=_float(ann, "learning_rate", default.ann.learning_rate, f"{path}.ann"),
            max_epochs=_int(ann, "max_epochs", default.ann.max_epochs, f"{path}.ann"),
            threshold=_float(ann, "threshold", default.ann.threshold, f"{path}.ann"),
        )
    except ParameterError as e:
        raise ConfigError(str(e), f"{path}.ann") from e
    ewss_params = EwssParams(
        window_instructions=_int(
            ewss, "window_instructions", default.ewss.window_instructions, f"{path}.ewss", minimum=1
        ),
        distance_threshold=_float(ewss, "distance_threshold", default.ewss.distance_threshold, f"{path}.ewss"),
        stable_limit=_int(ewss, "stable_limit", default.ewss.stable_limit, f"{path}.ewss", minimum=0),
        unstable_limit=_int(ewss, "unstable_limit", default.ewss.unstable_limit, f"{path}.ewss", minimum=0),
    )

    apps = section.get("apps")
    if apps is not None:
        if not isinstance(apps, list) or not apps or any(a not in CORPUS_NAMES for a in apps):
            raise ConfigError(f"{CORPUS_NAMES} から 1 つ以上選んでください: {apps!r}", f"{path}.apps")
        apps = tuple(apps)

    return TrainingConfig(
        cost_mode=cost_mode,
        profiling_level=profiling_level,
        bloom=bloom_params,
        ann=hyper,
        ewss=ewss_params,
        min_interval_accesses=_int(section, "min_interval_accesses", 0, path, minimum=0),
        workers=_int(section, "workers", default.workers, path, minimum=1),
        apps=apps,
    )


def _parse_output(data: Any) -> OutputConfig:
    section = _section(data, {"timeseries", "set_dump"}, "output")
    default = OutputConfig()
    return OutputConfig(
        timeseries=_bool(section, "timeseries", default.timeseries, "output"),
        set_dump=_bool(section, "set_dump", default.set_dump, "output"),
    )


def config_from_dict(data: Any) -> ExperimentConfig:
    root = _section(
        data,
        {"seed", "geometry", "levels", "corpus", "candidates", "selectors", "training", "output"},
        "",
    )
    seed = _int(root, "seed", DEFAULT_SEED, "", minimum=0)
    levels = _parse_levels(root.get("levels"))
    corpus = (
        _parse_workloads(root["corpus"], "corpus", seed, corpus_only=True)
        if "corpus" in root
        else tuple(default_corpus(seed))
    )
    candidates = (
        _parse_workloads(root["candidates"], "candidates", seed, corpus_only=False)
        if "candidates" in root
        else tuple(default_candidates(seed))
    )
    return ExperimentConfig(
        seed=seed,
        machine=_parse_machine(root.get("geometry")),
        levels=levels,
        corpus=corpus,
        candidates=candidates,
        selectors=_parse_selectors(root.get("selectors"), levels),
        training=_parse_training(root.get("training"), levels),
        output=_parse_output(root.get("output")),
    )


def load_config(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"設定ファイルが見つかりません: {path}", "config")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigError(f"JSON として読めません（{e.lineno} 行 {e.colno} 列）: {path}", "config") from e
    config = config_from_dict(data)
    logger.debug("設定ファイル読み込み: %s seed=%d", path, config.seed)
    return config
