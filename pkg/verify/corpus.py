"""
驗證語料
語料由 (參數, 種子) 完全決定；第 i 張圖的種子由主種子衍生
=============================================================================
"""
import logging
from dataclasses import dataclass, asdict, replace
from fractions import Fraction
from typing import List

from config.settings import (
    CORPUS_MAX_NODES, CORPUS_MAX_SNAPSHOTS, CORPUS_COLOURS, CORPUS_GRAPHS, CORPUS_EDGE_DENSITY,
)
from tgraph.generator import GraphParams, random_temporal_graph
from tgraph.graph import TemporalGraph
from utils.helpers import derive_seed

# 設置logger
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorpusParams:
    """語料描述"""

    max_nodes: int = CORPUS_MAX_NODES
    max_snapshots: int = CORPUS_MAX_SNAPSHOTS
    colours: int = CORPUS_COLOURS
    edge_density: Fraction = CORPUS_EDGE_DENSITY
    count: int = CORPUS_GRAPHS
    static_edges: bool = False

    def graph_params(self) -> GraphParams:
        return GraphParams(self.max_nodes, self.max_snapshots, self.colours, self.edge_density, self.static_edges)

    def with_count(self, count: int) -> "CorpusParams":
        return replace(self, count=count)

    def with_static_edges(self, static_edges: bool) -> "CorpusParams":
        return replace(self, static_edges=static_edges)

    def generate(self, seed: int) -> List[TemporalGraph]:
        """產生 count 張隨機離散時序圖"""
        params = self.graph_params()
        tag = "static" if self.static_edges else "varying"
        return [random_temporal_graph(params, derive_seed(seed, "graph", tag, i)) for i in range(self.count)]

    def to_dict(self):
        data = asdict(self)
        data["edge_density"] = str(self.edge_density)
        return data
