# cacheseed\common\logging_config.py
# ログ設定をまとめるファイル
import logging
import os
from logging.handlers import RotatingFileHandler


def setup_logging(log_dir: str | None = "logs", level: int = logging.INFO) -> None:
    """
    アプリ全体で使うログ設定を行う。
    - ログファイルはサイズベースでローテーション
      (maxBytes=1MB, backupCount=5)
    - コンソールには level 以上を出力

    Args:
        log_dir (str | None): ログディレクトリパス。None の場合はファイル出力しない
        level (int): コンソールに出すログレベル
    """

    root = logging.getLogger()
    # 既にハンドラがあれば二重登録しない
    if root.handlers:
        return

    root.setLevel(logging.DEBUG)

    # コンソールハンドラ
    ch = logging.StreamHandler()
    ch.setLevel(level)
    ch.setFormatter(logging.Formatter("[%(levelname)s] %(message)s"))
    root.addHandler(ch)

    if log_dir is None:
        return

    # ログディレクトリ作成
    os.makedirs(log_dir, exist_ok=True)
    logfile = os.path.join(log_dir, "cacheseed.log")

    # ファイルハンドラ: サイズベースローテーション
    fh = RotatingFileHandler(
        logfile,
        mode="a",
        maxBytes=1 * 1024 * 1024,  # 1MB
        backupCount=5,
        encoding="utf-8",
    )
    fh.setLevel(logging.DEBUG)
    fh.setFormatter(logging.Formatter(
        "%(asctime)s %(name)s [%(levelname)s] %(filename)s:%(lineno)d %(message)s"
    ))
    root.addHandler(fh)
