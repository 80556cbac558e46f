"""
1 レベル分のセットアソシアティブキャッシュ状態。

ブロックごとに enabled / valid / dirty / accessed / tag を持ち、
セットごとに有効ブロックの LRU 順（先頭が MRU）を保持する。
無効化 (disabled) されたブロックは必ず invalid なので、
タグ検索の辞書には現れない。
"""
from __future__ import annotations

from dataclasses import dataclass

from cacheseed.common.errors import ParameterError
from .geometry import CacheGeometry


@dataclass(frozen=True)
class BlockState:
    enabled: bool
    valid: bool
    dirty: bool
    accessed: bool
    tag: int | None
    lru_rank: int | None


class CacheLevel:
    def __init__(self, geometry: CacheGeometry):
        self.geometry = geometry
        n = geometry.num_sets
        a = geometry.associativity
        self.enabled = [[True] * a for _ in range(n)]
        self.valid = [[False] * a for _ in range(n)]
        self.dirty = [[False] * a for _ in range(n)]
        self.accessed = [[False] * a for _ in range(n)]
        self.tags = [[0] * a for _ in range(n)]
        self.enabled_per_set = [a] * n
        self.enabled_total = n * a
        self._tag_map: list[dict[int, int]] = [{} for _ in range(n)]
        # valid なブロックの way 番号（先頭が MRU）
        self._lru: list[list[int]] = [[] for _ in range(n)]

    # --- 参照・更新 ---------------------------------------------------------

    def lookup(self, set_index: int, tag: int) -> int | None:
        return self._tag_map[set_index].get(tag)

    def touch(self, set_index: int, way: int, write: bool) -> None:
        order = self._lru[set_index]
        if order[0] != way:
            order.remove(way)
            order.insert(0, way)
        self.accessed[set_index][way] = True
        if write:
            self.dirty[set_index][way] = True

    def fill(self, set_index: int, tag: int, dirty: bool) -> int | None:
        """
        tag を set_index に割り当てる。

        空き（enabled かつ invalid）の way があれば番号の小さいものを使い、
        なければ LRU の valid ブロックを追い出す。
        追い出したブロックが dirty だった場合はそのタグを返す。
        """
        enabled = self.enabled[set_index]
        valid = self.valid[set_index]
        order = self._lru[set_index]
        way = -1
        if len(order) < self.enabled_per_set[set_index]:
            for w in range(self.geometry.associativity):
                if enabled[w] and not valid[w]:
                    way = w
                    break
        victim_tag: int | None = None
        if way < 0:
            way = order.pop()
            old_tag = self.tags[set_index][way]
            del self._tag_map[set_index][old_tag]
            if self.dirty[set_index][way]:
                victim_tag = old_tag
        valid[way] = True
        self.dirty[set_index][way] = dirty
        self.accessed[set_index][way] = True
        self.tags[set_index][way] = tag
        self._tag_map[set_index][tag] = way
        order.insert(0, way)
        return victim_tag

    # --- ブロックの電源制御 -------------------------------------------------

    def disable(self, set_index: int, way: int) -> bool:
        """ブロックを無効化して中身を捨てる。書き戻しが必要だった場合 True。"""
        needs_write_back = self.valid[set_index][way] and self.dirty[set_index][way]
        if self.valid[set_index][way]:
            del self._tag_map[set_index][self.tags[set_index][way]]
            self._lru[set_index].remove(way)
        self.enabled[set_index][way] = False
        self.valid[set_index][way] = False
        self.dirty[set_index][way] = False
        self.accessed[set_index][way] = False
        self.enabled_per_set[set_index] -= 1
        self.enabled_total -= 1
        return needs_write_back

    def enable(self, set_index: int, way: int) -> None:
        # 再有効化したブロックは invalid かつ clean から始める
        self.enabled[set_index][way] = True
        self.valid[set_index][way] = False
        self.dirty[set_index][way] = False
        self.accessed[set_index][way] = False
        self.enabled_per_set[set_index] += 1
        self.enabled_total += 1

    # --- 検査・テスト用 -----------------------------------------------------

    def block(self, set_index: int, way: int) -> BlockState:
        valid = self.valid[set_index][way]
        order = self._lru[set_index]
        return BlockState(
            enabled=self.enabled[set_index][way],
            valid=valid,
            dirty=self.dirty[set_index][way],
            accessed=self.accessed[set_index][way],
            tag=self.tags[set_index][way] if valid else None,
            lru_rank=order.index(way) if valid else None,
        )

    def set_block(
        self,
        set_index: int,
        way: int,
        *,
        enabled: bool = True,
        valid: bool = False,
        dirty: bool = False,
        accessed: bool = False,
        tag: int | None = None,
    ) -> None:
        """
        ブロック状態を直接設定する（テストや状態の組み立て用）。
        valid にしたブロックは MRU 位置に置かれる。
        """
        if valid and not enabled:
            raise ParameterError("無効化されたブロックを valid にはできません。")
        if dirty and not valid:
            raise ParameterError("invalid なブロックを dirty にはできません。")
        if valid and tag is None:
            raise ParameterError("valid なブロックには tag が必要です。")
        if self.valid[set_index][way]:
            del self._tag_map[set_index][self.tags[set_index][way]]
            self._lru[set_index].remove(way)
        if self.enabled[set_index][way] != enabled:
            delta = 1 if enabled else -1
            self.enabled_per_set[set_index] += delta
            self.enabled_total += delta
        self.enabled[set_index][way] = enabled
        self.valid[set_index][way] = valid
        self.dirty[set_index][way] = dirty
        self.accessed[set_index][way] = accessed and enabled
        if valid:
            assert tag is not None
            if tag in self._tag_map[set_index]:
                raise ParameterError(f"同じセットに tag={tag} が重複しています。")
            self.tags[set_index][way] = tag
            self._tag_map[set_index][tag] = way
            self._lru[set_index].insert(0, way)

    def count_enabled(self) -> int:
        return sum(sum(1 for e in row if e) for row in self.enabled)

    def valid_tags(self, set_index: int) -> dict[int, int]:
        return dict(self._tag_map[set_index])
