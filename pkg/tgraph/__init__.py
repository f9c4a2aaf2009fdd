# tgraph/__init__.py
# 時序圖模組初始化檔案
# 資料模型、範例、隨機產生與JSON序列化

from .graph import (
    StaticGraph, TemporalGraph, PointedTemporalGraph,
    new_temporal_graph, neighbours, is_discrete, reindex_discrete, edge_sets_static,
)
from .serialization import parse_json, serialize_json, to_dict, from_dict, graph_digest
from .fixtures import (
    fixture, fixture_figure1, fixture_figure2_pair, fixture_figure4_pair, divergence_witness,
)
from .generator import GraphParams, random_temporal_graph
