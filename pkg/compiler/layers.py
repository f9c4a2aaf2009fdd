"""
編譯用的權重列建構工具
所有編譯器共用：逐列填入整數權重後轉為 FnnLayer / MpnnLayer
=============================================================================
"""
from typing import Callable, Iterable, Sequence

import numpy as np

from logic.formula import Formula, Not, And
from nn.fnn import Fnn, FnnLayer, Activation
from nn.mpnn import MpnnLayer, Sum
from utils.rational import zeros


class LayerBuilder:
    """
    單層權重矩陣 [C | A] 與偏置 b

    Args:
        out_width: 輸出寬度
        state_width: 狀態欄數（C 的欄）
        agg_width: 聚合欄數（A 的欄）
    """

    def __init__(self, out_width: int, state_width: int, agg_width: int = 0):
        self.state_width = state_width
        self.W = zeros((out_width, state_width + agg_width))
        self.b = zeros(out_width)

    def state(self, row: int, col: int, value: int = 1):
        self.W[row, col] += value

    def agg(self, row: int, col: int, value: int = 1):
        self.W[row, self.state_width + col] += value

    def bias(self, row: int, value: int):
        self.b[row] = value

    def copy_rows(self, rows: Iterable[int], offset: int = 0):
        """row 直接複製狀態欄 row + offset"""
        for row in rows:
            self.state(row, row + offset)

    def layer(self, act: Activation = Activation.TRRELU) -> FnnLayer:
        return FnnLayer(self.W.copy(), self.b.copy(), act)

    def fnn(self) -> Fnn:
        return Fnn((self.layer(),))

    def mpnn_layer(self, agg=None) -> MpnnLayer:
        return MpnnLayer(self.fnn(), agg if agg is not None else Sum())


def boolean_row(builder: LayerBuilder, row: int, f: Formula, kids: Sequence[int],
                columns: Callable[[int], Sequence[int]] = lambda c: (c,)):
    """
    否定與合取的閘：Not → 權重 -1、偏置 1；And → 權重 1、1、偏置 -1

    columns(c) 給出子公式 c 的值所在欄（多欄時以其和為值）
    """
    if isinstance(f, Not):
        for col in columns(kids[0]):
            builder.state(row, col, -1)
        builder.bias(row, 1)
    elif isinstance(f, And):
        for child in kids:
            for col in columns(child):
                builder.state(row, col, 1)
        builder.bias(row, -(len(kids) - 1))
    else:
        raise TypeError(f"不是布林連接詞: {f!r}")


def row_entries(layer: FnnLayer, row: int):
    """非零權重 {欄: 值} 與偏置，用於檢視與比較"""
    nonzero = {int(c): layer.W[row, c] for c in np.flatnonzero(layer.W[row] != 0)}
    return nonzero, layer.b[row]
