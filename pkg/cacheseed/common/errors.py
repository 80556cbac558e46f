# cacheseed\common\errors.py
"""
例外クラスをまとめるモジュール。

CLI はここで定義した exit_code をそのまま終了コードとして使う。
値の誤りに起因するものは ValueError も継承しているため、
呼び出し側は組み込み例外で捕捉してもよい。
"""
from __future__ import annotations


class CacheSeedError(Exception):
    """cacheseed の例外の基底クラス"""

    exit_code = 2


class ConfigError(CacheSeedError, ValueError):
    """設定ファイル／CLI 引数の誤り。field に該当項目のパスを保持する。"""

    exit_code = 1

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class ParameterError(CacheSeedError, ValueError):
    exit_code = 1


class LevelRangeError(CacheSeedError, ValueError):
    exit_code = 2


class DatasetError(CacheSeedError, ValueError):
    exit_code = 2


class DataFormatError(CacheSeedError, ValueError):
    """トレース・モデル・データセットの読込失敗。"""

    exit_code = 2

    def __init__(
        self,
        message: str,
        *,
        record_index: int | None = None,
        offset: int | None = None,
    ):
        self.record_index = record_index
        self.offset = offset
        details = []
        if record_index is not None:
            details.append(f"record={record_index}")
        if offset is not None:
            details.append(f"offset={offset}")
        if details:
            message = f"{message} ({', '.join(details)})"
        super().__init__(message)
