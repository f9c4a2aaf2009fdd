"""
時序圖神經網路模型
遞迴架構、時間與圖架構、全域架構；建構時即檢查各自的寬度不變量
=============================================================================
"""
from dataclasses import dataclass
from enum import Enum
from typing import Union

from nn.fnn import Fnn
from nn.mpnn import Mpnn, SumMsg
from nn.time2vec import Time2Vec
from utils.exceptions import DimensionMismatch


class DeltaConvention(Enum):
    """全域架構時間差的方向"""

    PAST_MINUS_CURRENT = "past_minus_current"
    CURRENT_MINUS_PAST = "current_minus_past"


def _check_out(out: Fnn, width: int):
    if out.depth != 1 or out.out_width != 1:
        raise DimensionMismatch(f"輸出網路必須是單層且輸出一個純量，得到 {out.depth} 層、寬度 {out.out_width}")
    if out.in_width != width:
        raise DimensionMismatch(f"輸出網路輸入寬度 {out.in_width} 與嵌入寬度 {width} 不一致")


@dataclass(frozen=True, eq=False)
class RecursiveTgnn:
    """
    遞迴架構 (M, out)

    每個快照都套用同一個 M，輸入為 當前顏色 ‖ 上一個快照的最終嵌入
    """

    mpnn: Mpnn
    out: Fnn

    arch = "recursive"

    def __post_init__(self):
        if self.mpnn.in_width < self.mpnn.out_width:
            raise DimensionMismatch(
                f"輸入寬度 {self.mpnn.in_width} 必須等於顏色寬度加輸出寬度 {self.mpnn.out_width}")
        _check_out(self.out, self.mpnn.out_width)

    @property
    def colour_width(self) -> int:
        return self.mpnn.in_width - self.mpnn.out_width

    @property
    def state_width(self) -> int:
        return self.mpnn.out_width


@dataclass(frozen=True, eq=False)
class TandGTgnn:
    """
    時間與圖架構 (M1, M2, Cell, out)

    M1 讀當前帶標籤快照，M2 讀當前邊與上一步的 Cell 狀態，Cell 逐節點融合兩者
    """

    m1: Mpnn
    m2: Mpnn
    cell: Fnn
    out: Fnn

    arch = "tandg"

    def __post_init__(self):
        if self.m1.depth != self.m2.depth:
            raise DimensionMismatch(f"M1 與 M2 層數必須相同: {self.m1.depth} / {self.m2.depth}")
        if self.cell.in_width != self.m1.out_width + self.m2.out_width:
            raise DimensionMismatch(
                f"Cell 輸入寬度 {self.cell.in_width} 不等於 M1、M2 輸出寬度之和 "
                f"{self.m1.out_width} + {self.m2.out_width}")
        if self.m2.in_width != self.cell.out_width:
            raise DimensionMismatch(f"M2 輸入寬度 {self.m2.in_width} 與 Cell 輸出寬度 {self.cell.out_width} 不一致")
        _check_out(self.out, self.cell.out_width)

    @property
    def colour_width(self) -> int:
        return self.m1.in_width

    @property
    def state_width(self) -> int:
        return self.cell.out_width

    def cell_in_class_f(self) -> bool:
        """Cell 是否為單層（可轉換為遞迴架構）"""
        return self.cell.depth == 1


@dataclass(frozen=True, eq=False)
class GlobalTgnn:
    """
    全域架構 (M, φ, out)，組合運算固定為串接

    每層皆為 SumMsg；msg 輸入為 鄰居狀態 ‖ time2vec(Δ)
    """

    mpnn: Mpnn
    enc: Time2Vec
    out: Fnn
    delta_convention: DeltaConvention = DeltaConvention.PAST_MINUS_CURRENT

    arch = "global"

    def __post_init__(self):
        for i, layer in enumerate(self.mpnn.layers):
            if not isinstance(layer.agg, SumMsg):
                raise DimensionMismatch(f"全域架構第{i}層必須使用 SumMsg 聚合")
            expected = layer.state_width + self.enc.width
            if layer.agg.msg.in_width != expected:
                raise DimensionMismatch(f"第{i}層 msg 輸入寬度 {layer.agg.msg.in_width}，應為 {expected}")
        _check_out(self.out, self.mpnn.out_width)

    @property
    def colour_width(self) -> int:
        return self.mpnn.in_width

    @property
    def state_width(self) -> int:
        return self.mpnn.out_width


TgnnModel = Union[RecursiveTgnn, TandGTgnn, GlobalTgnn]
