"""LLC サイズ選択アルゴリズム（EWSS / BLOOM / ANN）と固定サイズのベースライン。"""
from __future__ import annotations

from .ann_selector import AnnSelector, ann_select
from .base import FixedSelector, NoneSelector, ReconfigCommand, Selector
from .bloom_selector import BloomSelector, bloom_select
from .ewss import EwssParams, EwssSelector, EwssState, ewss_observe_instruction, ewss_window_end
from .factory import SelectorResources, SelectorSpec, build_selector, parse_selector_name

__all__ = [
    "AnnSelector",
    "BloomSelector",
    "EwssParams",
    "EwssSelector",
    "EwssState",
    "FixedSelector",
    "NoneSelector",
    "ReconfigCommand",
    "Selector",
    "SelectorResources",
    "SelectorSpec",
    "ann_select",
    "bloom_select",
    "build_selector",
    "ewss_observe_instruction",
    "ewss_window_end",
    "parse_selector_name",
]
