"""
隨機模型抽樣
權重自小型有理數網格抽取，固定種子可重現；產生的模型滿足各架構的不變量
=============================================================================
"""
import logging
from dataclasses import dataclass

import numpy as np

from config.settings import (
    SAMPLER_WEIGHT_GRID, SAMPLER_HIDDEN_WIDTH, SAMPLER_LAYERS, SAMPLER_PERIODIC_SLOTS,
)
from nn.fnn import Fnn, FnnLayer
from nn.mpnn import Mpnn, MpnnLayer, Sum, SumMsg
from nn.time2vec import Time2Vec
from tgnn.models import RecursiveTgnn, TandGTgnn, GlobalTgnn, TgnnModel

# 設置logger
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SamplerDims:
    """抽樣模型的尺寸"""

    colours: int = 2
    hidden: int = SAMPLER_HIDDEN_WIDTH
    layers: int = SAMPLER_LAYERS
    periodic_slots: int = SAMPLER_PERIODIC_SLOTS

    def __post_init__(self):
        if self.colours < 1 or self.hidden < 1 or self.layers < 1 or self.periodic_slots < 0:
            raise ValueError(f"抽樣尺寸無效: {self}")


class _WeightSampler:
    def __init__(self, seed):
        self.rng = np.random.default_rng(seed)
        self.grid = np.array(SAMPLER_WEIGHT_GRID, dtype=object)

    def draw(self, *shape):
        return self.grid[self.rng.integers(0, len(self.grid), size=shape)]

    def layer(self, out_width, in_width) -> FnnLayer:
        return FnnLayer.build(self.draw(out_width, in_width).tolist(), self.draw(out_width).tolist())

    def fnn(self, out_width, in_width) -> Fnn:
        return Fnn((self.layer(out_width, in_width),))

    def mpnn(self, in_width, hidden, depth, msg_extra=None) -> Mpnn:
        """msg_extra 不為 None 時使用 SumMsg，msg 輸入額外附加 msg_extra 維時間特徵"""
        layers, width = [], in_width
        for _ in range(depth):
            if msg_extra is None:
                layers.append(MpnnLayer(self.fnn(hidden, 2 * width), Sum()))
            else:
                msg = self.fnn(hidden, width + msg_extra)
                layers.append(MpnnLayer(self.fnn(hidden, width + hidden), SumMsg(msg)))
            width = hidden
        return Mpnn(tuple(layers))


def sample_model(arch: str, dims: SamplerDims, seed: int) -> TgnnModel:
    """
    抽樣一個隨機模型

    Args:
        arch: recursive / tandg / global
        dims: 顏色寬度、隱藏寬度、層數與週期槽數
        seed: 隨機種子

    Returns:
        TgnnModel: 時間與圖架構的 Cell 為單層；全域架構的 time2vec 含 periodic_slots 個 sin 槽
    """
    sampler = _WeightSampler(seed)
    k, w, depth = dims.colours, dims.hidden, dims.layers

    if arch == "recursive":
        first = MpnnLayer(sampler.fnn(w, 2 * (k + w)), Sum())
        rest = sampler.mpnn(w, w, depth - 1).layers if depth > 1 else ()
        return RecursiveTgnn(Mpnn((first,) + tuple(rest)), sampler.fnn(1, w))

    if arch == "tandg":
        m1 = sampler.mpnn(k, w, depth)
        m2 = sampler.mpnn(w, w, depth)
        cell = sampler.fnn(w, 2 * w)
        return TandGTgnn(m1, m2, cell, sampler.fnn(1, w))

    if arch == "global":
        slots = 1 + dims.periodic_slots
        enc = Time2Vec.build(sampler.draw(slots).tolist(), sampler.draw(slots).tolist())
        mpnn = sampler.mpnn(k, w, depth, msg_extra=slots)
        return GlobalTgnn(mpnn, enc, sampler.fnn(1, w))

    raise ValueError(f"未知架構: {arch}")
