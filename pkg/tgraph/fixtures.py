"""
內建範例時序圖
圖1語義範例、圖2與圖4不可區分對，以及乘積語義與時序鄰域語義的分歧見證
=============================================================================
"""
import logging
from typing import Dict, Tuple

from tgraph.graph import PointedTemporalGraph
from tgraph.serialization import from_dict

# 設置logger
logger = logging.getLogger(__name__)

# =============================================================================
# 原始JSON結構（顏色 c1 對應標籤第0位，c2 對應第1位）
# =============================================================================
FIGURE1 = {
    "nodes": ["u", "w", "v"],
    "colours": 2,
    "snapshots": [
        {"t": 1, "edges": [["u", "w"]], "labels": {"v": [0, 1]}},
        {"t": 2, "edges": [["u", "w"], ["w", "v"]], "labels": {}},
        {"t": 3, "edges": [["w", "v"]], "labels": {"u": [1, 0]}},
        {"t": 4, "edges": [["u", "v"], ["w", "v"]], "labels": {"u": [0, 1], "v": [1, 0]}},
    ],
}


def _figure2_graph(prime: str, coloured_at_t1: str) -> Dict:
    names = [f"{n}{prime}" for n in ("v", "w1", "w2", "u1", "u2")]
    v, w1, w2, u1, u2 = names
    edges = [[w1, w2], [w1, v], [u1, v], [u1, u2]]
    return {
        "nodes": names,
        "colours": 2,
        "snapshots": [
            {"t": 1, "edges": edges, "labels": {f"{coloured_at_t1}{prime}": [0, 1]}},
            {"t": 2, "edges": edges, "labels": {u1: [1, 0]}},
        ],
    }


FIGURE2A = _figure2_graph("", "u2")
FIGURE2B = _figure2_graph("'", "w2")

FIGURE4A = {
    "nodes": ["v"],
    "colours": 1,
    "snapshots": [
        {"t": 1, "edges": [], "labels": {"v": [1]}},
        {"t": 2, "edges": [], "labels": {"v": [1]}},
    ],
}

FIGURE4B = {
    "nodes": ["v'"],
    "colours": 1,
    "snapshots": [
        {"t": 1, "edges": [], "labels": {}},
        {"t": 2, "edges": [], "labels": {"v'": [1]}},
    ],
}

WITNESS = {
    "nodes": ["v", "u"],
    "colours": 1,
    "snapshots": [
        {"t": 1, "edges": [["v", "u"]], "labels": {"u": [1]}},
        {"t": 2, "edges": [], "labels": {}},
    ],
}

# CLI `fixture` 子命令可輸出的名稱
FIXTURE_SOURCES = {
    "figure1": (FIGURE1, "v"),
    "figure2a": (FIGURE2A, "v"),
    "figure2b": (FIGURE2B, "v'"),
    "figure4a": (FIGURE4A, "v"),
    "figure4b": (FIGURE4B, "v'"),
    "witness": (WITNESS, "v"),
}


def _pointed(name: str) -> PointedTemporalGraph:
    source, node = FIXTURE_SOURCES[name]
    tg = from_dict(source)
    return PointedTemporalGraph(tg, tg.node_index(node))


def fixture(name: str) -> PointedTemporalGraph:
    """依名稱取得範例（指向最後一個快照）"""
    if name not in FIXTURE_SOURCES:
        raise KeyError(f"未知範例: {name}，可用: {', '.join(FIXTURE_SOURCES)}")
    return _pointed(name)


def fixture_figure1() -> PointedTemporalGraph:
    """3節點、4快照的語義範例，指向 (v, t_4)"""
    return _pointed("figure1")


def fixture_figure2_pair() -> Tuple[PointedTemporalGraph, PointedTemporalGraph]:
    """
    時間與圖架構的不可區分對

    兩圖邊集相同且不隨時間改變，只差在 t_1 時 c2 位於 u2 或 w2'
    """
    return _pointed("figure2a"), _pointed("figure2b")


def fixture_figure4_pair() -> Tuple[PointedTemporalGraph, PointedTemporalGraph]:
    """全域架構的不可區分對：單節點、無邊，c1 於 t_1 的有無不同"""
    return _pointed("figure4a"), _pointed("figure4b")


def divergence_witness() -> PointedTemporalGraph:
    """u 只在 t_1 與 v 相鄰且帶 c1；<>P c1 在 (v, t_2) 兩種語義結果不同"""
    return _pointed("witness")
