"""
時序圖資料模型
靜態圖、時序圖與帶指向節點的時序圖，建構時即完成驗證，建構後不可變
=============================================================================
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from utils.exceptions import (
    EmptySequence, MismatchedNodeSets, MismatchedLabelWidth,
    NonIncreasingTimestamps, NodeOutOfRange, InvalidEdge, DuplicateEdge,
)
from utils.rational import to_rational, rational_array

# 設置logger
logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class StaticGraph:
    """無向、無自環的靜態圖；labels[v] 為長度 k 的有理數向量"""

    node_count: int
    edges: Tuple[Edge, ...]
    labels: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.labels) != self.node_count:
            raise MismatchedNodeSets(
                f"標籤數量 {len(self.labels)} 與節點數 {self.node_count} 不一致")
        widths = {len(label) for label in self.labels}
        if len(widths) > 1:
            raise MismatchedLabelWidth(f"同一快照內標籤寬度不一致: {sorted(widths)}")
        seen = set()
        for a, b in self.edges:
            if a == b or not (0 <= a < self.node_count and 0 <= b < self.node_count):
                raise InvalidEdge(f"無效的邊: ({a}, {b})")
            pair = (min(a, b), max(a, b))
            if pair in seen:
                raise DuplicateEdge(f"重複的邊: {pair}")
            seen.add(pair)

    @classmethod
    def build(cls, node_count: int, edges: Iterable[Sequence[int]], labels: Sequence[Sequence]) -> "StaticGraph":
        """
        建立靜態圖：邊正規化為排序後的無序對，標籤轉為 Fraction

        Args:
            node_count: 節點數
            edges: 節點索引對
            labels: 每個節點的標籤向量
        """
        pairs = [tuple(edge) for edge in edges]
        for pair in pairs:
            if len(pair) != 2:
                raise InvalidEdge(f"邊必須恰有兩個端點: {pair}")
        normalised = [(min(a, b), max(a, b)) for a, b in pairs]
        if len(set(normalised)) != len(normalised):
            duplicates = sorted({p for p in normalised if normalised.count(p) > 1})
            raise DuplicateEdge(f"重複的邊: {duplicates}")
        return cls(
            node_count=node_count,
            edges=tuple(sorted(normalised)),
            labels=tuple(tuple(to_rational(v) for v in label) for label in labels),
        )

    @property
    def label_width(self) -> int:
        return len(self.labels[0]) if self.labels else 0

    def neighbours(self, v: int) -> frozenset:
        """與節點 v 相鄰的所有節點"""
        if not 0 <= v < self.node_count:
            raise NodeOutOfRange(f"節點索引 {v} 超出範圍 0..{self.node_count - 1}")
        return frozenset(b if a == v else a for a, b in self.edges if v in (a, b))

    def adjacency_matrix(self) -> np.ndarray:
        """整數鄰接矩陣（對稱）"""
        adjacency = np.zeros((self.node_count, self.node_count), dtype=np.int64)
        for a, b in self.edges:
            adjacency[a, b] = 1
            adjacency[b, a] = 1
        return adjacency

    def label_matrix(self) -> np.ndarray:
        """標籤矩陣，形狀為 (節點數, k)"""
        if self.node_count == 0:
            return np.zeros((0, 0), dtype=np.int64)
        return rational_array([list(label) for label in self.labels])

    def is_coloured(self) -> bool:
        """所有標籤是否皆為位元"""
        return all(v in (0, 1) for label in self.labels for v in label)


def neighbours(g: StaticGraph, v: int) -> frozenset:
    """與節點 v 共享一條邊的節點集合"""
    return g.neighbours(v)


@dataclass(frozen=True)
class TemporalGraph:
    """共享同一節點集的時間戳快照序列"""

    snapshots: Tuple[Tuple[StaticGraph, Fraction], ...]
    node_names: Tuple[str, ...] = field(default=())

    @property
    def length(self) -> int:
        return len(self.snapshots)

    @property
    def node_count(self) -> int:
        return self.snapshots[0][0].node_count

    @property
    def label_width(self) -> int:
        return self.snapshots[0][0].label_width

    @property
    def timestamps(self) -> Tuple[Fraction, ...]:
        return tuple(t for _, t in self.snapshots)

    def graph(self, time_index: int) -> StaticGraph:
        """第 time_index 個快照（0起算）"""
        return self.snapshots[time_index][0]

    def node_index(self, name: str) -> int:
        """節點名稱轉索引"""
        try:
            return self.node_names.index(name)
        except ValueError:
            raise NodeOutOfRange(f"未知節點名稱: {name}") from None

    def node_name(self, index: int) -> str:
        return self.node_names[index]


def new_temporal_graph(snapshots: Sequence[Tuple[StaticGraph, object]],
                       node_names: Optional[Sequence[str]] = None) -> TemporalGraph:
    """
    驗證並建立時序圖

    Args:
        snapshots: (靜態圖, 時間戳) 列表
        node_names: 節點名稱表，缺省為 "0", "1", ...

    Returns:
        TemporalGraph: 通過全部不變量的時序圖
    """
    if not snapshots:
        raise EmptySequence("快照序列不可為空")

    node_counts = {g.node_count for g, _ in snapshots}
    if len(node_counts) != 1:
        raise MismatchedNodeSets(f"各快照節點數不一致: {sorted(node_counts)}")
    widths = {g.label_width for g, _ in snapshots}
    if len(widths) != 1:
        raise MismatchedLabelWidth(f"各快照標籤寬度不一致: {sorted(widths)}")

    stamped = [(g, to_rational(t)) for g, t in snapshots]
    for (_, previous), (_, current) in zip(stamped, stamped[1:]):
        if current <= previous:
            raise NonIncreasingTimestamps(f"時間戳未嚴格遞增: {previous} -> {current}")

    node_count = node_counts.pop()
    names = tuple(str(n) for n in node_names) if node_names is not None \
        else tuple(str(i) for i in range(node_count))
    if len(names) != node_count:
        raise MismatchedNodeSets(f"節點名稱數 {len(names)} 與節點數 {node_count} 不一致")
    if len(set(names)) != len(names):
        raise MismatchedNodeSets("節點名稱重複")

    return TemporalGraph(tuple(stamped), names)


def is_discrete(tg: TemporalGraph) -> bool:
    """第 i 個時間戳是否恰為 i（1起算）"""
    return all(t == i for i, t in enumerate(tg.timestamps, start=1))


def reindex_discrete(tg: TemporalGraph) -> TemporalGraph:
    """將時間戳重新編號為 1..n，保留快照順序"""
    return TemporalGraph(tuple((g, Fraction(i)) for i, (g, _) in enumerate(tg.snapshots, start=1)),
                         tg.node_names)


def edge_sets_static(tg: TemporalGraph) -> bool:
    """所有快照的邊集是否相同"""
    first = tg.graph(0).edges
    return all(g.edges == first for g, _ in tg.snapshots)


@dataclass(frozen=True)
class PointedTemporalGraph:
    """帶指向節點的時序圖；time_index 為0起算，缺省指向最後一個快照"""

    graph: TemporalGraph
    node: int
    time_index: Optional[int] = None

    def __post_init__(self):
        if not 0 <= self.node < self.graph.node_count:
            raise NodeOutOfRange(f"指向節點 {self.node} 超出範圍")
        if self.time_index is None:
            object.__setattr__(self, 'time_index', self.graph.length - 1)
        if not 0 <= self.time_index < self.graph.length:
            raise NodeOutOfRange(f"時間索引 {self.time_index} 超出範圍")

    @property
    def node_name(self) -> str:
        return self.graph.node_name(self.node)
