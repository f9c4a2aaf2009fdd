"""
模型檢查器（預言機）
在 (子公式, 節點, 時間) 上做動態規劃，得到所有子公式在所有位置的真值
=============================================================================
"""
import json
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np

from logic.formula import Formula, Atom, Not, And, Diamond, Yesterday, Past, colour_width
from logic.subformulas import SubformulaIndex, enumerate_subformulas
from tgraph.graph import TemporalGraph, PointedTemporalGraph, is_discrete
from utils.exceptions import NonDiscreteGraph, NonBitLabels, ColourIndexOutOfRange

# 設置logger
logger = logging.getLogger(__name__)


class SemanticsMode(Enum):
    """<> 的兩種讀法：乘積語義看當前邊；時序鄰域語義讓 <>Y、<>P 看過去快照的邊"""

    PRODUCT = "product"
    TEMPORAL_NEIGHBOURHOOD = "temporal"

    @classmethod
    def parse(cls, text: str) -> "SemanticsMode":
        for mode in cls:
            if mode.value == text:
                return mode
        raise ValueError(f"未知語義模式: {text}，可用: product, temporal")


@dataclass(frozen=True)
class TruthTable:
    """
    預言機結果

    Attributes:
        index: 子公式列舉
        values: bool 陣列，形狀 (n, 節點數, 時間長度)
        graph: 檢查所用的時序圖
        mode: 語義模式
    """

    index: SubformulaIndex
    values: np.ndarray
    graph: TemporalGraph
    mode: SemanticsMode = SemanticsMode.PRODUCT

    def holds(self, subformula: Union[int, Formula], node: int, time_index: int) -> bool:
        """子公式在 (node, time_index) 是否成立；子公式可給位置或公式本身"""
        i = subformula if isinstance(subformula, int) else self.index.position(subformula)
        return bool(self.values[i, node, time_index])

    def root_values(self) -> np.ndarray:
        """根公式的 (節點, 時間) 真值"""
        return self.values[-1]

    def at(self, pointed: PointedTemporalGraph) -> bool:
        """根公式在指向位置的真值"""
        return bool(self.values[-1, pointed.node, pointed.time_index])

    def to_dict(self):
        return {
            "subformulas": self.index.labels(),
            "nodes": list(self.graph.node_names),
            "mode": self.mode.value,
            "truth": self.values.tolist(),
        }

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False)


def validate_check_input(tg: TemporalGraph, phi: Formula):
    """檢查前置條件：離散、位元標籤、顏色在範圍內"""
    if not is_discrete(tg):
        raise NonDiscreteGraph(f"時間戳不是 1..{tg.length}: {[str(t) for t in tg.timestamps]}")
    for i, (g, _) in enumerate(tg.snapshots):
        if not g.is_coloured():
            raise NonBitLabels(f"快照 t_{i + 1} 的標籤不是0/1位元")
    width = colour_width(phi)
    if width > tg.label_width:
        raise ColourIndexOutOfRange(f"公式使用 c{width}，但標籤寬度只有 {tg.label_width}")


def _neighbour_exists(adjacency: np.ndarray, column: np.ndarray) -> np.ndarray:
    return (adjacency @ column.astype(np.int64)) > 0


def check(tg: TemporalGraph, phi: Formula, mode: SemanticsMode = SemanticsMode.PRODUCT,
          index: Optional[SubformulaIndex] = None) -> TruthTable:
    """
    計算所有子公式在所有 (節點, 時間) 的真值

    Args:
        tg: 離散且標籤為位元的時序圖
        phi: 公式
        mode: 語義模式
        index: 已有的子公式列舉（缺省時現場建立）

    Returns:
        TruthTable

    Raises:
        NonDiscreteGraph, NonBitLabels, ColourIndexOutOfRange
    """
    validate_check_input(tg, phi)
    index = index or enumerate_subformulas(phi)

    node_count, length = tg.node_count, tg.length
    labels = np.stack([g.label_matrix().reshape(node_count, tg.label_width) for g, _ in tg.snapshots], axis=2)
    adjacency = [g.adjacency_matrix() for g, _ in tg.snapshots]
    values = np.zeros((index.n, node_count, length), dtype=bool)

    for i, f in enumerate(index.formulas):
        kids = index.children[i]
        if isinstance(f, Atom):
            values[i] = labels[:, f.colour - 1, :] == 1
        elif isinstance(f, Not):
            values[i] = ~values[kids[0]]
        elif isinstance(f, And):
            values[i] = values[kids[0]] & values[kids[1]]
        elif isinstance(f, Yesterday):
            values[i, :, 1:] = values[kids[0], :, :-1]
        elif isinstance(f, Past):
            for t in range(1, length):
                values[i, :, t] = values[i, :, t - 1] | values[kids[0], :, t - 1]
        elif isinstance(f, Diamond):
            values[i] = _diamond(f, kids[0], values, adjacency, index, mode)
        else:
            raise TypeError(f"未知公式節點: {f!r}")

    return TruthTable(index, values, tg, mode)


def _diamond(f, child, values, adjacency, index, mode):
    length = len(adjacency)
    result = np.zeros(values.shape[1:], dtype=bool)

    if mode is SemanticsMode.TEMPORAL_NEIGHBOURHOOD and isinstance(f.operand, (Yesterday, Past)):
        chi = index.children[child][0]
        reached = np.zeros(values.shape[1], dtype=bool)
        for t in range(1, length):
            step = _neighbour_exists(adjacency[t - 1], values[chi, :, t - 1])
            if isinstance(f.operand, Yesterday):
                result[:, t] = step
            else:
                reached |= step
                result[:, t] = reached
        return result

    for t in range(length):
        result[:, t] = _neighbour_exists(adjacency[t], values[child, :, t])
    return result
