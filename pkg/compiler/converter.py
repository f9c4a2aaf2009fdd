"""
時間與圖架構 -> 遞迴架構
M3 = (M1 ‖ M2) 後接一層忽略聚合、套用 Cell 的訊息傳遞層；遞迴架構的攜帶狀態即 Cell 狀態
=============================================================================
"""
import logging

import numpy as np

from nn.fnn import Fnn, FnnLayer
from nn.mpnn import Mpnn, MpnnLayer, Sum, parallel_compose
from tgnn.models import TandGTgnn, RecursiveTgnn
from utils.exceptions import UnsupportedCell
from utils.rational import zeros

# 設置logger
logger = logging.getLogger(__name__)


def cell_layer(cell: Fnn) -> MpnnLayer:
    """comb(x, y) = Cell(x)"""
    layer = cell.layers[0]
    W = np.concatenate([layer.W, zeros(layer.W.shape)], axis=1)
    return MpnnLayer(Fnn((FnnLayer(W, layer.b, layer.act),)), Sum())


def tandg_to_recursive(t: TandGTgnn) -> RecursiveTgnn:
    """
    轉換為行為相同的遞迴架構模型

    Args:
        t: Cell 為單層的時間與圖架構模型

    Returns:
        RecursiveTgnn: 輸入為 顏色 ‖ 上一步 Cell 狀態

    Raises:
        UnsupportedCell: Cell 超過一層
        UnsupportedAggregation: M1 或 M2 使用 SumMsg
    """
    if not t.cell_in_class_f():
        raise UnsupportedCell(f"Cell 有 {t.cell.depth} 層，只能轉換單層 Cell")
    combined = parallel_compose(t.m1, t.m2)
    mpnn = Mpnn(combined.layers + (cell_layer(t.cell),))
    logger.debug(f"轉換完成: {mpnn.depth} 層，輸入寬度 {mpnn.in_width}")
    return RecursiveTgnn(mpnn, t.out)
