#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# cacheseed\app.py
"""
cacheseed のコマンドラインエントリポイント。

    gen-trace  ワークロードのトレースをバイナリファイルに書き出す
    profile    コーパスを全サイズレベルで実行してデータセットを作る
    train      データセットからモデル（bloom / ann）を学習する
    run        評価用ワークロード × セレクタの実験を行う
    report     実験結果を CSV / Excel / 図に変換する
    subsets    コーパスの部分集合ごとに ANN を学習して比較する

終了コード: 0 正常、1 設定・引数の誤り、2 データ・形式の誤り
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from cacheseed import __version__
from cacheseed.common.errors import CacheSeedError, ConfigError
from cacheseed.common.logging_config import setup_logging
from cacheseed.models.model_io import write_model
from cacheseed.pipeline.config import load_config
from cacheseed.pipeline.cost import COST_FUNCTIONS
from cacheseed.pipeline.experiment import Report, run_experiment
from cacheseed.pipeline.profiler import ProfileDataset, profile_corpus
from cacheseed.pipeline.training import MODEL_KINDS, train_model
from cacheseed.workloads.candidates import PHASE_WINDOW_INSTRUCTIONS, gen_workload
from cacheseed.workloads.spec import CORPUS_NAMES, DEFAULT_SEED, WorkloadSpec
from cacheseed.workloads.trace_file import dump_text, trace_read, trace_write

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2


def _cmd_gen_trace(args: argparse.Namespace) -> int:
    spec = WorkloadSpec.parse(args.workload, seed=args.seed, iterations=args.iterations)
    count = trace_write(gen_workload(spec, window_instructions=args.window_instructions), args.output)
    if args.dump_text:
        args.dump_text.parent.mkdir(parents=True, exist_ok=True)
        with args.dump_text.open("w", encoding="utf-8") as out:
            dump_text(trace_read(args.output), out)
    print(f"{spec.label}: {count} レコードを書き出しました: {args.output}")
    return EXIT_OK


def _cmd_profile(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    dataset = profile_corpus(
        config.machine,
        config.corpus,
        config.levels,
        profiling_level=config.training.profiling_level,
        workers=config.training.workers,
    )
    dataset.write(args.output)
    if args.table:
        from cacheseed.pipeline.report_writer import write_csv

        write_csv(dataset.table(), args.table)
    print(f"データセットを書き出しました: {args.output}")
    return EXIT_OK


def _parse_apps(text: str) -> tuple[str, ...]:
    apps = tuple(a.strip() for a in text.split(",") if a.strip())
    unknown = [a for a in apps if a not in CORPUS_NAMES]
    if not apps or unknown:
        raise ConfigError(f"{CORPUS_NAMES} からカンマ区切りで指定してください: {text!r}", "--apps")
    return apps


def _cmd_train(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    training = config.training
    if args.cost:
        training = replace(training, cost_mode=args.cost)
    if args.apps:
        training = replace(training, apps=_parse_apps(args.apps))
    dataset = ProfileDataset.read(args.dataset)
    if dataset.machine != config.machine or dataset.levels != config.levels:
        raise ConfigError("データセットのマシン構成・サイズレベルが設定と一致しません。", "geometry")
    document = train_model(args.model, dataset, training, seed=config.seed, machine=config.machine)
    write_model(args.output, document)
    print(f"{args.model} モデルを書き出しました: {args.output}")
    return EXIT_OK


def _cmd_run(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    report = run_experiment(config, args.model or [])
    report.write(args.output)
    print(f"レポートを書き出しました: {args.output}")
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    from cacheseed.pipeline import report_writer

    report = Report.read(args.report)
    summary = report_writer.summary_frame(report)
    if args.csv:
        report_writer.write_csv(summary, args.csv)
    if args.timeseries:
        report_writer.write_csv(report_writer.timeseries_frame(report), args.timeseries)
    if args.setdump:
        report_writer.write_csv(report_writer.set_dump_frame(report), args.setdump)
    if args.excel:
        sheets = {"summary": summary}
        timeseries = report_writer.timeseries_frame(report)
        if len(timeseries):
            sheets["timeseries"] = timeseries
        report_writer.write_excel(sheets, args.excel)
    if args.plot:
        from cacheseed.pipeline.plot import plot_report

        plot_report(report, args.plot)
    if not any((args.csv, args.timeseries, args.setdump, args.excel, args.plot)):
        print(summary.to_string(index=False))
    return EXIT_OK


def _cmd_subsets(args: argparse.Namespace) -> int:
    from cacheseed.pipeline.subsets import run_subset_study

    config = load_config(args.config)
    dataset = ProfileDataset.read(args.dataset)
    workload = WorkloadSpec.parse(args.workload, seed=config.seed)
    report = run_subset_study(config, dataset, workload)
    report.write(args.output)
    print(f"レポートを書き出しました: {args.output}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cacheseed",
        description="再構成可能 LLC のトレース駆動シミュレータとプロファイル再利用パイプライン",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-dir", default="logs", help="ログファイルの出力先フォルダ")
    parser.add_argument("--no-log-file", action="store_true", help="ログファイルを出力しない")
    parser.add_argument("-v", "--verbose", action="store_true", help="DEBUG ログもコンソールに出す")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-trace", help="トレースファイルを生成")
    p.add_argument("workload", help="ワークロード（例: list/1024, candidate-chase）")
    p.add_argument("-o", "--output", type=Path, required=True, help="出力トレースファイル")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--iterations", type=int, default=None)
    p.add_argument("--window-instructions", type=int, default=PHASE_WINDOW_INSTRUCTIONS)
    p.add_argument("--dump-text", type=Path, default=None, help="テキスト形式でも書き出す")
    p.set_defaults(func=_cmd_gen_trace)

    p = sub.add_parser("profile", help="コーパスのプロファイリング")
    p.add_argument("-c", "--config", type=Path, required=True)
    p.add_argument("-o", "--output", type=Path, required=True, help="データセット JSON")
    p.add_argument("--table", type=Path, default=None, help="サイクル数の表（CSV）")
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("train", help="モデルの学習")
    p.add_argument("-c", "--config", type=Path, required=True)
    p.add_argument("-d", "--dataset", type=Path, required=True)
    p.add_argument("-o", "--output", type=Path, required=True, help="モデル JSON")
    p.add_argument("--model", choices=MODEL_KINDS, default="bloom")
    p.add_argument("--cost", choices=sorted(COST_FUNCTIONS), default=None)
    p.add_argument("--apps", default=None, help="学習に使うアプリケーション（例: list,mul）")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("run", help="評価用ワークロードでの実験")
    p.add_argument("-c", "--config", type=Path, required=True)
    p.add_argument("-m", "--model", type=Path, action="append", help="モデル JSON（複数指定可）")
    p.add_argument("-o", "--output", type=Path, required=True, help="レポート JSON")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("report", help="レポートの表・図への変換")
    p.add_argument("report", type=Path)
    p.add_argument("--csv", type=Path, default=None, help="サマリ CSV")
    p.add_argument("--timeseries", type=Path, default=None, help="時系列 CSV")
    p.add_argument("--setdump", type=Path, default=None, help="セット別カウント CSV")
    p.add_argument("--excel", type=Path, default=None, help="Excel ファイル")
    p.add_argument("--plot", type=Path, default=None, help="図の出力フォルダ")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("subsets", help="コーパス部分集合ごとの ANN の比較")
    p.add_argument("-c", "--config", type=Path, required=True)
    p.add_argument("-d", "--dataset", type=Path, required=True)
    p.add_argument("-w", "--workload", required=True)
    p.add_argument("-o", "--output", type=Path, required=True)
    p.set_defaults(func=_cmd_subsets)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(
        None if args.no_log_file else args.log_dir,
        logging.DEBUG if args.verbose else logging.INFO,
    )
    logger.debug("CLI引数: %s", args)
    try:
        return args.func(args)
    except CacheSeedError as e:
        logger.error("実行エラー: %s", e, exc_info=True)
        print(f"エラー: {e}", file=sys.stderr)
        return e.exit_code
    except FileNotFoundError as e:
        logger.error("ファイルが見つかりません: %s", e, exc_info=True)
        print(f"エラー: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        logger.error("入出力エラー: %s", e, exc_info=True)
        print(f"エラー: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
