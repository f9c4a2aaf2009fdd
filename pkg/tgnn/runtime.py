"""
時序圖神經網路執行器
三種架構的逐快照計算，回傳完整狀態軌跡；輸出對每個快照都計算一次（即各前綴上的結果）
=============================================================================
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List

import numpy as np

from config.settings import CLASSIFY_THRESHOLD
from nn.fnn import eval_rows
from nn.mpnn import run_mpnn, combine
from nn.time2vec import encode_many
from tgnn.models import RecursiveTgnn, TandGTgnn, GlobalTgnn, DeltaConvention, TgnnModel
from tgraph.graph import TemporalGraph, PointedTemporalGraph
from utils.exceptions import DimensionMismatch
from utils.rational import zeros, rational_array

# 設置logger
logger = logging.getLogger(__name__)


@dataclass
class TgnnRun:
    """
    執行結果

    Attributes:
        arch: 架構名稱
        layers: layers[t] 為快照 t 的主網路各層狀態 h^(0)..h^(k)，每個形狀 (節點數, 寬度)
        embeddings: embeddings[t] 為快照 t 的最終嵌入
        outputs: 形狀 (節點數, 快照數)，out 作用於各快照最終嵌入的純量
        auxiliary: 其他子網路的軌跡（時間與圖架構的 m2、cell）
    """

    arch: str
    layers: List[List[np.ndarray]]
    embeddings: List[np.ndarray]
    outputs: np.ndarray
    auxiliary: Dict[str, List[List[np.ndarray]]] = field(default_factory=dict)

    def final_vector(self, node: int, time_index: int = -1) -> np.ndarray:
        return self.embeddings[time_index][node]

    def output(self, node: int, time_index: int = -1):
        return self.outputs[node, time_index]

    def output_at(self, pointed: PointedTemporalGraph):
        return self.outputs[pointed.node, pointed.time_index]

    def classify_at(self, pointed: PointedTemporalGraph) -> int:
        return classify(self.output_at(pointed))

    def all_states(self):
        """逐一產生軌跡中的每個狀態陣列"""
        for per_time in self.layers:
            yield from per_time
        for trace in self.auxiliary.values():
            for per_time in trace:
                yield from per_time


def classify(value, threshold: Fraction = CLASSIFY_THRESHOLD) -> int:
    """
    純量二值化：0/1 原樣回傳，其餘以 >= threshold 判定

    Args:
        value: 輸出純量
        threshold: 門檻

    Returns:
        int: 0 或 1
    """
    if value == 0 or value == 1:
        return int(value)
    return int(value >= threshold)


def _label_matrix(tg: TemporalGraph, time_index: int, width: int) -> np.ndarray:
    labels = tg.graph(time_index).label_matrix().reshape(tg.node_count, -1)
    if labels.shape[1] != width:
        raise DimensionMismatch(f"標籤寬度 {labels.shape[1]} 與模型顏色寬度 {width} 不一致")
    return labels


def _apply_out(model, H):
    return eval_rows(model.out, H)[:, 0]


def _stack_outputs(columns, node_count):
    if not columns:
        return zeros((node_count, 0))
    return np.stack(columns, axis=1)


def run_recursive(t: RecursiveTgnn, tg: TemporalGraph) -> TgnnRun:
    """
    遞迴架構：h(t_1) 的輸入為 c_1 ‖ 0，h(t_{j+1}) 的輸入為 c_{j+1} ‖ h(t_j)

    Raises:
        DimensionMismatch: 標籤寬度與模型不符
    """
    previous = zeros((tg.node_count, t.state_width))
    layers, embeddings, outputs = [], [], []
    for i in range(tg.length):
        X = np.concatenate([_label_matrix(tg, i, t.colour_width), previous], axis=1)
        states = run_mpnn(t.mpnn, tg.graph(i), X)
        previous = states[-1]
        layers.append(states)
        embeddings.append(previous)
        outputs.append(_apply_out(t, previous))
    return TgnnRun("recursive", layers, embeddings, _stack_outputs(outputs, tg.node_count))


def run_tandg(t: TandGTgnn, tg: TemporalGraph) -> TgnnRun:
    """
    時間與圖架構：h(t_j) = Cell(M1(G_j), M2(E_j, h(t_{j-1})))，t_1 時 M2 讀零向量

    Raises:
        DimensionMismatch: 標籤寬度與模型不符
    """
    previous = zeros((tg.node_count, t.state_width))
    m1_trace, m2_trace, cell_trace, embeddings, outputs = [], [], [], [], []
    for i in range(tg.length):
        g = tg.graph(i)
        a = run_mpnn(t.m1, g, _label_matrix(tg, i, t.colour_width))
        b = run_mpnn(t.m2, g, previous)
        H = np.concatenate([a[-1], b[-1]], axis=1)
        stages = [H]
        for layer in t.cell.layers:
            H = layer.apply(H)
            stages.append(H)
        previous = H
        m1_trace.append(a)
        m2_trace.append(b)
        cell_trace.append(stages)
        embeddings.append(previous)
        outputs.append(_apply_out(t, previous))
    return TgnnRun("tandg", m1_trace, embeddings, _stack_outputs(outputs, tg.node_count),
                   {"m2": m2_trace, "cell": cell_trace})


def run_global(t: GlobalTgnn, tg: TemporalGraph) -> TgnnRun:
    """
    全域架構：第 i+1 層在 (v, t_j) 上聚合所有 h <= j、{v,u} ∈ E_h 的
    msg(h^(i)(u, t_h) ‖ φ(Δ))；v 自己的過去狀態不會被聚合

    加總順序固定為 (h, u) 遞增

    Raises:
        DimensionMismatch: 標籤寬度與模型不符
    """
    length, node_count = tg.length, tg.node_count
    timestamps = tg.timestamps
    adjacency = [tg.graph(h).adjacency_matrix() for h in range(length)]
    sign = 1 if t.delta_convention is DeltaConvention.PAST_MINUS_CURRENT else -1

    states = [[_label_matrix(tg, j, t.colour_width) for j in range(length)]]
    for layer in t.mpnn.layers:
        current = states[-1]
        next_states = []
        for j in range(length):
            deltas = rational_array([sign * (timestamps[h] - timestamps[j]) for h in range(j + 1)])
            encoded = encode_many(t.enc, deltas)
            aggregate = zeros((node_count, layer.agg.msg.out_width))
            for h in range(j + 1):
                features = np.repeat(encoded[h:h + 1], node_count, axis=0)
                messages = eval_rows(layer.agg.msg, np.concatenate([current[h], features], axis=1))
                aggregate = aggregate + adjacency[h] @ messages
            next_states.append(combine(layer, current[j], aggregate))
        states.append(next_states)

    layers = [[states[k][j] for k in range(len(states))] for j in range(length)]
    embeddings = [states[-1][j] for j in range(length)]
    outputs = [_apply_out(t, H) for H in embeddings]
    return TgnnRun("global", layers, embeddings, _stack_outputs(outputs, node_count))


def run_model(model: TgnnModel, tg: TemporalGraph) -> TgnnRun:
    """依模型架構分派執行"""
    if isinstance(model, RecursiveTgnn):
        return run_recursive(model, tg)
    if isinstance(model, TandGTgnn):
        return run_tandg(model, tg)
    if isinstance(model, GlobalTgnn):
        return run_global(model, tg)
    raise TypeError(f"未知模型類型: {type(model).__name__}")
