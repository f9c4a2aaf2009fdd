"""
隨機時序圖產生器
固定種子可重現；時間戳為離散的 1..n
=============================================================================
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx
import numpy as np

from tgraph.graph import StaticGraph, TemporalGraph, new_temporal_graph

# 設置logger
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GraphParams:
    """隨機時序圖參數"""

    max_nodes: int = 6
    max_snapshots: int = 5
    colours: int = 3
    edge_density: Fraction = Fraction(1, 2)
    static_edges: bool = False

    def __post_init__(self):
        if self.max_nodes < 1 or self.max_snapshots < 1 or self.colours < 1:
            raise ValueError(f"圖參數必須為正: {self}")
        if not 0 <= self.edge_density <= 1:
            raise ValueError(f"邊密度必須在 [0, 1]: {self.edge_density}")


def _edge_set(node_count, density, rng):
    g = nx.gnp_random_graph(node_count, float(density), seed=int(rng.integers(2 ** 31)))
    return sorted((min(a, b), max(a, b)) for a, b in g.edges())


def random_temporal_graph(params: GraphParams, seed: int) -> TemporalGraph:
    """
    產生隨機離散時序圖

    Args:
        params: 節點數、快照數、顏色數上限與邊密度
        seed: 隨機種子

    Returns:
        TemporalGraph: 節點數與快照數各自在 1..上限 內均勻抽取
    """
    rng = np.random.default_rng(seed)
    node_count = int(rng.integers(1, params.max_nodes + 1))
    length = int(rng.integers(1, params.max_snapshots + 1))

    shared_edges = _edge_set(node_count, params.edge_density, rng) if params.static_edges else None

    snapshots = []
    for t in range(1, length + 1):
        edges = shared_edges if shared_edges is not None else _edge_set(node_count, params.edge_density, rng)
        labels = rng.integers(0, 2, size=(node_count, params.colours)).tolist()
        snapshots.append((StaticGraph.build(node_count, edges, labels), t))

    tg = new_temporal_graph(snapshots)
    logger.debug(f"隨機時序圖 seed={seed}: {node_count} 節點, {length} 快照")
    return tg
