"""
64-32-n の全結合ニューラルネットワーク（活性化はロジスティックシグモイド）。

入力は MAS の 64 ビット、出力はサイズレベルごとの 1 ニューロン。
学習は全サンプルのバッチ勾配降下法で、損失は
    L = 0.5 · Σ_n Σ_j (y_nj - t_nj)^2
とする。閾値処理した出力が教師の one-hot と一致したサンプルを
「完全一致」とみなし、全サンプルが完全一致した時点で学習を止める。
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.special import expit

from cacheseed.common.errors import DatasetError, ParameterError
from cacheseed.signatures.mas import MAS_BITS, mas_to_bits

logger = logging.getLogger(__name__)

INPUT_SIZE = MAS_BITS
HIDDEN_SIZE = 32
DEFAULT_LEARNING_RATE = 0.7
DEFAULT_MAX_EPOCHS = 1000
DEFAULT_THRESHOLD = 0.5
INIT_WEIGHT_RANGE = 0.5


@dataclass(frozen=True)
class AnnHyper:
    learning_rate: float = DEFAULT_LEARNING_RATE
    max_epochs: int = DEFAULT_MAX_EPOCHS
    threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ParameterError(f"learning_rate は正の値で指定してください: {self.learning_rate}")
        if self.max_epochs < 0:
            raise ParameterError(f"max_epochs は 0 以上で指定してください: {self.max_epochs}")
        if not 0.0 < self.threshold < 1.0:
            raise ParameterError(f"threshold は (0, 1) の範囲で指定してください: {self.threshold}")


@dataclass(frozen=True)
class TrainingSample:
    """MAS と、その MAS に最適なサイズレベル番号の組。"""

    mas: int
    level_index: int

    def target(self, n_outputs: int) -> np.ndarray:
        t = np.zeros(n_outputs)
        t[self.level_index] = 1.0
        return t


@dataclass
class AnnGradients:
    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray


@dataclass
class AnnModel:
    """重み行列は (出力, 入力) の形で持つ。"""

    w1: np.ndarray  # (HIDDEN, INPUT)
    b1: np.ndarray  # (HIDDEN,)
    w2: np.ndarray  # (n_outputs, HIDDEN)
    b2: np.ndarray  # (n_outputs,)
    threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self):
        hidden, inputs = self.w1.shape
        if inputs != INPUT_SIZE:
            raise ParameterError(f"入力層は {INPUT_SIZE} ニューロン固定です: {inputs}")
        if self.b1.shape != (hidden,) or self.w2.shape[1] != hidden or self.b2.shape != (self.w2.shape[0],):
            raise ParameterError("ANN の重み・バイアスの形状が一致しません。")

    @classmethod
    def zeros(cls, n_outputs: int, hidden: int = HIDDEN_SIZE) -> "AnnModel":
        return cls(
            np.zeros((hidden, INPUT_SIZE)),
            np.zeros(hidden),
            np.zeros((n_outputs, hidden)),
            np.zeros(n_outputs),
        )

    @classmethod
    def initialize(cls, n_outputs: int, seed: int, hidden: int = HIDDEN_SIZE) -> "AnnModel":
        rng = np.random.default_rng(seed)
        r = INIT_WEIGHT_RANGE
        return cls(
            rng.uniform(-r, r, (hidden, INPUT_SIZE)),
            rng.uniform(-r, r, hidden),
            rng.uniform(-r, r, (n_outputs, hidden)),
            rng.uniform(-r, r, n_outputs),
        )

    @property
    def n_outputs(self) -> int:
        return self.w2.shape[0]

    @property
    def hidden_size(self) -> int:
        return self.w1.shape[0]

    @property
    def parameter_count(self) -> int:
        return self.w1.size + self.b1.size + self.w2.size + self.b2.size

    def copy(self) -> "AnnModel":
        return AnnModel(self.w1.copy(), self.b1.copy(), self.w2.copy(), self.b2.copy(), self.threshold)


@dataclass(frozen=True)
class TrainReport:
    epochs_run: int
    perfect_fraction: float
    converged: bool
    final_loss: float
    sample_count: int


def _hidden(model: AnnModel, x: np.ndarray) -> np.ndarray:
    return expit(x @ model.w1.T + model.b1)


def mlp_forward(model: AnnModel, x: np.ndarray | Sequence[float]) -> np.ndarray:
    """x が (64,) なら (n,)、(N, 64) なら (N, n) を返す。"""
    x = np.asarray(x, dtype=float)
    return expit(_hidden(model, x) @ model.w2.T + model.b2)


def mlp_loss(model: AnnModel, x: np.ndarray, t: np.ndarray) -> float:
    y = mlp_forward(model, np.atleast_2d(x))
    t = np.atleast_2d(t)
    return float(0.5 * np.sum((y - t) ** 2))


def mlp_gradients(model: AnnModel, x: np.ndarray, t: np.ndarray) -> AnnGradients:
    """mlp_loss の各パラメータに対する勾配（誤差逆伝播）。"""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    t = np.atleast_2d(np.asarray(t, dtype=float))
    h = _hidden(model, x)
    y = expit(h @ model.w2.T + model.b2)
    delta2 = (y - t) * y * (1.0 - y)
    delta1 = (delta2 @ model.w2) * h * (1.0 - h)
    return AnnGradients(
        w1=delta1.T @ x,
        b1=delta1.sum(axis=0),
        w2=delta2.T @ h,
        b2=delta2.sum(axis=0),
    )


def perfect_matches(y: np.ndarray, t: np.ndarray, threshold: float) -> np.ndarray:
    """各サンプルについて、閾値処理後の出力が one-hot 教師と一致するか。"""
    return np.all((y >= threshold) == (t == 1.0), axis=1)


def decide_one_hot(outputs: Sequence[float] | np.ndarray, threshold: float = DEFAULT_THRESHOLD) -> int | None:
    """閾値以上の出力がちょうど 1 つならそのレベル番号、それ以外は None。"""
    fired = np.flatnonzero(np.asarray(outputs) >= threshold)
    if fired.size != 1:
        return None
    return int(fired[0])


def check_consistent(samples: Iterable[TrainingSample]) -> dict[int, int]:
    """同じ MAS に異なる教師が付いていれば DatasetError。MAS -> レベル番号を返す。"""
    table: dict[int, int] = {}
    for sample in samples:
        known = table.setdefault(sample.mas, sample.level_index)
        if known != sample.level_index:
            raise DatasetError(
                f"同じ MAS 0x{sample.mas:016x} に異なる教師レベルが付いています: {known}, {sample.level_index}"
            )
    return table


def mlp_train(
    samples: Sequence[TrainingSample],
    hyper: AnnHyper = AnnHyper(),
    *,
    n_outputs: int,
    seed: int = 0,
) -> tuple[AnnModel, TrainReport]:
    table = check_consistent(samples)
    if not table:
        raise DatasetError("学習サンプルがありません。")
    if any(not 0 <= level < n_outputs for level in table.values()):
        raise DatasetError(f"教師レベル番号が出力数 {n_outputs} の範囲外です。")

    mas_values = list(table)
    x = mas_to_bits(mas_values)
    t = np.zeros((len(mas_values), n_outputs))
    t[np.arange(len(mas_values)), [table[m] for m in mas_values]] = 1.0

    model = AnnModel.initialize(n_outputs, seed)
    model.threshold = hyper.threshold
    logger.info("ANN 学習開始: samples=%d outputs=%d", len(mas_values), n_outputs)

    epochs = 0
    while True:
        y = mlp_forward(model, x)
        matched = perfect_matches(y, t, hyper.threshold)
        if matched.all() or epochs >= hyper.max_epochs:
            break
        grads = mlp_gradients(model, x, t)
        model.w1 -= hyper.learning_rate * grads.w1
        model.b1 -= hyper.learning_rate * grads.b1
        model.w2 -= hyper.learning_rate * grads.w2
        model.b2 -= hyper.learning_rate * grads.b2
        epochs += 1

    report = TrainReport(
        epochs_run=epochs,
        perfect_fraction=float(matched.mean()),
        converged=bool(matched.all()),
        final_loss=float(0.5 * np.sum((y - t) ** 2)),
        sample_count=len(mas_values),
    )
    if report.converged:
        logger.info("ANN 学習完了: epochs=%d", report.epochs_run)
    else:
        logger.warning(
            "ANN 学習は最大エポック数で終了しました: epochs=%d 完全一致率=%.3f",
            report.epochs_run,
            report.perfect_fraction,
        )
    return model, report
