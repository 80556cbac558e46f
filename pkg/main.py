from __future__ import annotations

import multiprocessing as mp
import sys


def main() -> int:
    # プロファイリング・実験を ProcessPoolExecutor で並列実行するため
    mp.freeze_support()
    from cacheseed.app import main as app_main

    return app_main()


if __name__ == "__main__":
    sys.exit(main())
