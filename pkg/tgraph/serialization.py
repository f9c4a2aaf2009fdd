"""
時序圖JSON序列化模組
格式: {"nodes": [...], "colours": k, "snapshots": [{"t": 1, "edges": [[a, b]], "labels": {name: [...]}}]}
=============================================================================
"""
import json
import logging
from typing import Any, Dict

from tgraph.graph import StaticGraph, TemporalGraph, new_temporal_graph
from utils.exceptions import JsonSyntax, SchemaViolation, GraphValidationError
from utils.helpers import canonical_digest
from utils.rational import format_rational, to_rational

# 設置logger
logger = logging.getLogger(__name__)


def to_dict(tg: TemporalGraph) -> Dict[str, Any]:
    """時序圖轉為JSON結構；全零標籤省略"""
    snapshots = []
    for g, t in tg.snapshots:
        labels = {
            tg.node_name(v): [format_rational(x) for x in g.labels[v]]
            for v in range(g.node_count)
            if any(x != 0 for x in g.labels[v])
        }
        snapshots.append({
            "t": format_rational(t),
            "edges": [[tg.node_name(a), tg.node_name(b)] for a, b in g.edges],
            "labels": labels,
        })
    return {
        "nodes": list(tg.node_names),
        "colours": tg.label_width,
        "snapshots": snapshots,
    }


def serialize_json(tg: TemporalGraph, indent=None) -> str:
    """時序圖序列化為JSON文字"""
    return json.dumps(to_dict(tg), indent=indent, ensure_ascii=False)


def _require(data, key, expected_type, path):
    if not isinstance(data, dict):
        raise SchemaViolation(path, "應為物件")
    if key not in data:
        raise SchemaViolation(f"{path}.{key}", "缺少必要欄位")
    value = data[key]
    if not isinstance(value, expected_type) or isinstance(value, bool) and expected_type is not bool:
        raise SchemaViolation(f"{path}.{key}", f"型別錯誤，應為 {expected_type}")
    return value


def _rational_at(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise SchemaViolation(path, f"無效的數值: {value!r}")
    try:
        return to_rational(value)
    except (ValueError, ZeroDivisionError):
        raise SchemaViolation(path, f"無效的有理數: {value!r}") from None


def from_dict(data: Dict[str, Any]) -> TemporalGraph:
    """
    由JSON結構建立時序圖

    Args:
        data: 已解析的JSON物件

    Returns:
        TemporalGraph: 已驗證的時序圖

    Raises:
        SchemaViolation: 結構或型別錯誤，附路徑
    """
    nodes = _require(data, "nodes", list, "$")
    colours = _require(data, "colours", int, "$")
    raw_snapshots = _require(data, "snapshots", list, "$")

    if colours < 0:
        raise SchemaViolation("$.colours", "顏色數不可為負")
    for i, name in enumerate(nodes):
        if not isinstance(name, str):
            raise SchemaViolation(f"$.nodes[{i}]", "節點名稱必須是字串")
    if len(set(nodes)) != len(nodes):
        raise SchemaViolation("$.nodes", "節點名稱重複")
    index = {name: i for i, name in enumerate(nodes)}

    snapshots = []
    for s, raw in enumerate(raw_snapshots):
        path = f"$.snapshots[{s}]"
        if not isinstance(raw, dict) or "t" not in raw:
            raise SchemaViolation(f"{path}.t", "缺少必要欄位")
        t = _rational_at(raw["t"], f"{path}.t")

        edges = []
        for e, edge in enumerate(raw.get("edges", [])):
            edge_path = f"{path}.edges[{e}]"
            if not isinstance(edge, list) or len(edge) != 2:
                raise SchemaViolation(edge_path, "邊必須是兩個節點名稱")
            for endpoint in edge:
                if endpoint not in index:
                    raise SchemaViolation(edge_path, f"未知節點: {endpoint!r}")
            edges.append((index[edge[0]], index[edge[1]]))

        raw_labels = raw.get("labels", {})
        if not isinstance(raw_labels, dict):
            raise SchemaViolation(f"{path}.labels", "應為物件")
        labels = [[0] * colours for _ in nodes]
        for name, vector in raw_labels.items():
            label_path = f"{path}.labels.{name}"
            if name not in index:
                raise SchemaViolation(label_path, f"未知節點: {name!r}")
            if not isinstance(vector, list) or len(vector) != colours:
                raise SchemaViolation(label_path, f"標籤寬度應為 {colours}")
            labels[index[name]] = [_rational_at(x, f"{label_path}[{j}]") for j, x in enumerate(vector)]

        try:
            snapshots.append((StaticGraph.build(len(nodes), edges, labels), t))
        except GraphValidationError as e:
            raise SchemaViolation(path, str(e)) from e

    return new_temporal_graph(snapshots, nodes)


def parse_json(text: str) -> TemporalGraph:
    """解析時序圖JSON文字"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise JsonSyntax(f"JSON語法錯誤: 第{e.lineno}行第{e.colno}列 {e.msg}") from e
    return from_dict(data)


def graph_digest(tg: TemporalGraph) -> str:
    """時序圖的穩定摘要（基於正規JSON）"""
    return canonical_digest(to_dict(tg))
