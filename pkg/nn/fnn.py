"""
精確有理數前饋網路
每層先做仿射變換再套用啟用函數；trReLU 為唯一的一般啟用函數，sin 只用於 time2vec 的週期槽
=============================================================================
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Tuple

import numpy as np

from utils.exceptions import DimensionMismatch
from utils.rational import rational_array, tr_relu, zeros

# 設置logger
logger = logging.getLogger(__name__)


class Activation(Enum):
    TRRELU = "trrelu"
    NONE = "none"
    SIN = "sin"


def apply_activation(z: np.ndarray, act: Activation) -> np.ndarray:
    if act is Activation.TRRELU:
        return tr_relu(z)
    if act is Activation.SIN:
        return np.sin(np.asarray(z, dtype=object).astype(float))
    return z


@dataclass(frozen=True, eq=False)
class FnnLayer:
    """單層：W 形狀 (輸出, 輸入)，b 形狀 (輸出,)"""

    W: np.ndarray
    b: np.ndarray
    act: Activation = Activation.TRRELU

    def __post_init__(self):
        if self.W.ndim != 2 or self.b.shape != (self.W.shape[0],):
            raise DimensionMismatch(f"權重形狀 {self.W.shape} 與偏置形狀 {self.b.shape} 不一致")

    @classmethod
    def build(cls, W: Sequence[Sequence], b: Sequence, act: Activation = Activation.TRRELU) -> "FnnLayer":
        """由巢狀列表建立，數值轉為精確陣列"""
        rows = len(W)
        cols = len(W[0]) if rows else 0
        matrix = rational_array(W).reshape(rows, cols) if rows and cols else zeros((rows, cols))
        bias = rational_array(list(b)).reshape(rows) if rows else zeros(0)
        return cls(matrix, bias, act)

    @property
    def in_width(self) -> int:
        return self.W.shape[1]

    @property
    def out_width(self) -> int:
        return self.W.shape[0]

    def apply(self, X: np.ndarray) -> np.ndarray:
        """X 形狀 (列數, 輸入寬度)，逐列計算"""
        return apply_activation(X @ self.W.T + self.b, self.act)

    def same_as(self, other: "FnnLayer") -> bool:
        return (self.act is other.act and self.W.shape == other.W.shape
                and bool(np.all(self.W == other.W)) and bool(np.all(self.b == other.b)))


@dataclass(frozen=True, eq=False)
class Fnn:
    """前饋網路；相鄰層的維度必須相符，至少一層"""

    layers: Tuple[FnnLayer, ...]

    def __post_init__(self):
        if not self.layers:
            raise DimensionMismatch("前饋網路至少需要一層")
        for i, (a, b) in enumerate(zip(self.layers, self.layers[1:])):
            if a.out_width != b.in_width:
                raise DimensionMismatch(f"第{i}層輸出寬度 {a.out_width} 與第{i + 1}層輸入寬度 {b.in_width} 不一致")

    @property
    def in_width(self) -> int:
        return self.layers[0].in_width

    @property
    def out_width(self) -> int:
        return self.layers[-1].out_width

    @property
    def depth(self) -> int:
        return len(self.layers)

    def same_as(self, other: "Fnn") -> bool:
        return self.depth == other.depth and all(a.same_as(b) for a, b in zip(self.layers, other.layers))


def single_layer(W, b, act: Activation = Activation.TRRELU) -> Fnn:
    return Fnn((FnnLayer.build(W, b, act),))


def identity(width: int) -> Fnn:
    """W=I、b=0 的單層 trReLU 網路；在 [0,1] 上為恆等"""
    return Fnn((FnnLayer(np.eye(width, dtype=np.int64), zeros(width)),))


def eval_rows(f: Fnn, X: np.ndarray) -> np.ndarray:
    """對矩陣的每一列計算網路輸出"""
    if X.ndim != 2 or X.shape[1] != f.in_width:
        raise DimensionMismatch(f"輸入寬度 {X.shape[-1] if X.ndim else 0} 與網路輸入寬度 {f.in_width} 不一致")
    for layer in f.layers:
        X = layer.apply(X)
    return X


def eval_fnn(f: Fnn, x) -> np.ndarray:
    """
    計算單一向量的網路輸出

    Args:
        f: 前饋網路
        x: 輸入向量（列表或陣列）

    Returns:
        np.ndarray: 精確輸出向量

    Raises:
        DimensionMismatch: 輸入寬度不符
    """
    vector = x if isinstance(x, np.ndarray) else rational_array(list(x))
    return eval_rows(f, vector.reshape(1, -1))[0]
