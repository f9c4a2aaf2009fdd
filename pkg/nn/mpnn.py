"""
訊息傳遞網路
每層: h' = comb(h ‖ agg)，agg 為鄰居狀態之和或鄰居 msg 輸出之和；空鄰域聚合為零向量
=============================================================================
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np

from nn.fnn import Fnn, FnnLayer, identity, eval_rows
from tgraph.graph import StaticGraph
from utils.exceptions import DimensionMismatch, UnsupportedAggregation
from utils.rational import zeros

# 設置logger
logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Sum:
    """鄰居狀態直接加總"""


@dataclass(frozen=True, eq=False)
class SumMsg:
    """鄰居狀態先經 msg 網路再加總"""
    msg: Fnn


Aggregation = Union[Sum, SumMsg]


@dataclass(frozen=True, eq=False)
class MpnnLayer:
    comb: Fnn
    agg: Aggregation

    def aggregate_width(self, state_width: int) -> int:
        return self.agg.msg.out_width if isinstance(self.agg, SumMsg) else state_width

    @property
    def state_width(self) -> int:
        """由 comb 的輸入寬度反推狀態寬度"""
        if isinstance(self.agg, SumMsg):
            return self.comb.in_width - self.agg.msg.out_width
        return self.comb.in_width // 2

    @property
    def out_width(self) -> int:
        return self.comb.out_width


@dataclass(frozen=True, eq=False)
class Mpnn:
    """訊息傳遞層序列；相鄰層寬度必須相符"""

    layers: Tuple[MpnnLayer, ...]

    def __post_init__(self):
        for i, layer in enumerate(self.layers):
            state = layer.state_width
            if layer.comb.in_width != state + layer.aggregate_width(state):
                raise DimensionMismatch(f"第{i}層 comb 輸入寬度 {layer.comb.in_width} 不等於狀態加聚合寬度")
        for i, (a, b) in enumerate(zip(self.layers, self.layers[1:])):
            if a.out_width != b.state_width:
                raise DimensionMismatch(f"第{i}層輸出寬度 {a.out_width} 與第{i + 1}層狀態寬度 {b.state_width} 不一致")

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def in_width(self) -> int:
        return self.layers[0].state_width

    @property
    def out_width(self) -> int:
        return self.layers[-1].out_width

    def is_single_layer_comb(self) -> bool:
        """每層 comb 是否皆為單層（即 M̂ 類別）"""
        return all(layer.comb.depth == 1 for layer in self.layers)


def combine(layer: MpnnLayer, H: np.ndarray, aggregate: np.ndarray) -> np.ndarray:
    """comb 作用在 狀態 ‖ 聚合 上"""
    return eval_rows(layer.comb, np.concatenate([H, aggregate], axis=1))


def run_mpnn(m: Mpnn, g: StaticGraph, labels: Optional[np.ndarray] = None) -> List[np.ndarray]:
    """
    在靜態圖上執行訊息傳遞網路

    Args:
        m: 網路
        g: 靜態圖（提供邊）
        labels: 初始狀態，缺省為圖的標籤

    Returns:
        list: 各層狀態 h^(0)..h^(k)，每個形狀為 (節點數, 寬度)

    Raises:
        DimensionMismatch: 初始狀態寬度不符
    """
    H = g.label_matrix().reshape(g.node_count, -1) if labels is None else labels
    if H.shape[1] != m.in_width:
        raise DimensionMismatch(f"初始狀態寬度 {H.shape[1]} 與網路輸入寬度 {m.in_width} 不一致")
    adjacency = g.adjacency_matrix()
    states = [H]
    for layer in m.layers:
        messages = eval_rows(layer.agg.msg, H) if isinstance(layer.agg, SumMsg) else H
        H = combine(layer, H, adjacency @ messages)
        states.append(H)
    return states


# =============================================================================
# 組合運算
# =============================================================================
def identity_layer(width: int) -> MpnnLayer:
    """忽略聚合、狀態原樣通過（值域為 [0,1] 時）"""
    W = np.concatenate([np.eye(width, dtype=np.int64), zeros((width, width))], axis=1)
    return MpnnLayer(Fnn((FnnLayer(W, zeros(width)),)), Sum())


def pad_identity(m: Mpnn, depth: int) -> Mpnn:
    """在尾端補恆等層直到指定層數"""
    if m.depth > depth:
        raise DimensionMismatch(f"網路已有 {m.depth} 層，無法補到 {depth} 層")
    return Mpnn(m.layers + tuple(identity_layer(m.out_width) for _ in range(depth - m.depth)))


def serial_compose(a: Mpnn, b: Mpnn) -> Mpnn:
    """先執行 a，再以 a 的輸出作為 b 的初始狀態"""
    if a.out_width != b.in_width:
        raise DimensionMismatch(f"串接寬度不符: {a.out_width} -> {b.in_width}")
    return Mpnn(a.layers + b.layers)


def _pad_fnn(f: Fnn, depth: int) -> Fnn:
    return Fnn(f.layers + tuple(identity(f.out_width).layers[0] for _ in range(depth - f.depth)))


def _block_diagonal(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]),
                   dtype=object if object in (a.dtype, b.dtype) else np.int64)
    out[:a.shape[0], :a.shape[1]] = a
    out[a.shape[0]:, a.shape[1]:] = b
    return out


def _parallel_comb(a: MpnnLayer, b: MpnnLayer) -> Fnn:
    wa, wb = a.state_width, b.state_width
    depth = max(a.comb.depth, b.comb.depth)
    comb_a, comb_b = _pad_fnn(a.comb, depth), _pad_fnn(b.comb, depth)

    layers = []
    for i, (la, lb) in enumerate(zip(comb_a.layers, comb_b.layers)):
        if la.act is not lb.act:
            raise DimensionMismatch(f"平行組合的啟用函數不一致: {la.act.value} / {lb.act.value}")
        if i == 0:
            # 輸入排列為 x ‖ y ‖ agg_x ‖ agg_y
            W = _block_diagonal(la.W, lb.W)
            order = (list(range(wa)) + list(range(wa + wa, wa + wa + wb))
                     + list(range(wa, wa + wa)) + list(range(wa + wa + wb, wa + wa + wb + wb)))
            W = W[:, order]
        else:
            W = _block_diagonal(la.W, lb.W)
        layers.append(FnnLayer(W, np.concatenate([la.b, lb.b]), la.act))
    return Fnn(tuple(layers))


def parallel_compose(a: Mpnn, b: Mpnn) -> Mpnn:
    """
    平行組合：輸入 x ‖ y，輸出 a(x) ‖ b(y)，權重為區塊對角，兩部分互不影響

    Raises:
        DimensionMismatch: 層數不同
        UnsupportedAggregation: 任一層不是 Sum 聚合
    """
    if a.depth != b.depth:
        raise DimensionMismatch(f"平行組合需要相同層數: {a.depth} / {b.depth}")
    layers = []
    for la, lb in zip(a.layers, b.layers):
        if not (isinstance(la.agg, Sum) and isinstance(lb.agg, Sum)):
            raise UnsupportedAggregation("平行組合只支援 Sum 聚合")
        layers.append(MpnnLayer(_parallel_comb(la, lb), Sum()))
    return Mpnn(tuple(layers))
