"""
網路JSON序列化
{"kind": "fnn"|"mpnn"|"time2vec", "layers": [{"W": [[...]], "b": [...], "act": ...}], "agg": [...]}
有理數輸出為 "p/q" 字串，整數輸出為數字
=============================================================================
"""
import logging
from typing import Any, Dict

import numpy as np

from nn.fnn import Fnn, FnnLayer, Activation
from nn.mpnn import Mpnn, MpnnLayer, Sum, SumMsg
from nn.time2vec import Time2Vec
from utils.exceptions import SchemaViolation, DimensionMismatch
from utils.rational import format_rational, to_rational

# 設置logger
logger = logging.getLogger(__name__)


def _matrix_to_json(W: np.ndarray):
    return [[format_rational(v) for v in row] for row in W]


def layer_to_dict(layer: FnnLayer) -> Dict[str, Any]:
    return {
        "W": _matrix_to_json(layer.W),
        "b": [format_rational(v) for v in layer.b],
        "act": layer.act.value,
    }


def fnn_to_dict(f: Fnn) -> Dict[str, Any]:
    return {"kind": "fnn", "layers": [layer_to_dict(layer) for layer in f.layers]}


def mpnn_to_dict(m: Mpnn) -> Dict[str, Any]:
    return {
        "kind": "mpnn",
        "layers": [fnn_to_dict(layer.comb) for layer in m.layers],
        "agg": ["sum" if isinstance(layer.agg, Sum) else {"summsg": fnn_to_dict(layer.agg.msg)}
                for layer in m.layers],
    }


def time2vec_to_dict(enc: Time2Vec) -> Dict[str, Any]:
    """單層表示：W 為 (width, 1) 欄向量；槽0固定為仿射，其餘槽為 sin"""
    return {
        "kind": "time2vec",
        "layers": [{
            "W": [[format_rational(v)] for v in enc.w],
            "b": [format_rational(v) for v in enc.b],
            "act": Activation.SIN.value,
        }],
    }


# =============================================================================
# 反序列化
# =============================================================================
def _rational(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SchemaViolation(path, f"權重必須是整數或 \"p/q\" 字串: {value!r}")
    try:
        return to_rational(value)
    except (ValueError, ZeroDivisionError):
        raise SchemaViolation(path, f"無效的有理數: {value!r}") from None


def _expect_kind(data, kind, path):
    if not isinstance(data, dict):
        raise SchemaViolation(path, "應為物件")
    if data.get("kind") != kind:
        raise SchemaViolation(f"{path}.kind", f"應為 {kind!r}，得到 {data.get('kind')!r}")
    layers = data.get("layers")
    if not isinstance(layers, list) or not layers:
        raise SchemaViolation(f"{path}.layers", "必須是非空列表")
    return layers


def _layer_from_dict(data, path) -> FnnLayer:
    if not isinstance(data, dict):
        raise SchemaViolation(path, "應為物件")
    W, b = data.get("W"), data.get("b")
    if not isinstance(W, list) or not all(isinstance(row, list) for row in W):
        raise SchemaViolation(f"{path}.W", "必須是二維列表")
    if not isinstance(b, list) or len(b) != len(W):
        raise SchemaViolation(f"{path}.b", f"長度應為 {len(W)}")
    try:
        act = Activation(data.get("act", "trrelu"))
    except ValueError:
        raise SchemaViolation(f"{path}.act", f"未知啟用函數: {data.get('act')!r}") from None
    if len({len(row) for row in W}) > 1:
        raise SchemaViolation(f"{path}.W", "各列長度不一致")
    matrix = [[_rational(v, f"{path}.W[{r}][{c}]") for c, v in enumerate(row)] for r, row in enumerate(W)]
    bias = [_rational(v, f"{path}.b[{r}]") for r, v in enumerate(b)]
    return FnnLayer.build(matrix, bias, act)


def fnn_from_dict(data, path="$") -> Fnn:
    layers = _expect_kind(data, "fnn", path)
    try:
        return Fnn(tuple(_layer_from_dict(layer, f"{path}.layers[{i}]") for i, layer in enumerate(layers)))
    except DimensionMismatch as e:
        raise SchemaViolation(path, str(e)) from e


def mpnn_from_dict(data, path="$") -> Mpnn:
    combs = _expect_kind(data, "mpnn", path)
    aggs = data.get("agg")
    if not isinstance(aggs, list) or len(aggs) != len(combs):
        raise SchemaViolation(f"{path}.agg", f"長度應為 {len(combs)}")
    layers = []
    for i, (comb, agg) in enumerate(zip(combs, aggs)):
        if agg == "sum":
            aggregation = Sum()
        elif isinstance(agg, dict) and "summsg" in agg:
            aggregation = SumMsg(fnn_from_dict(agg["summsg"], f"{path}.agg[{i}].summsg"))
        else:
            raise SchemaViolation(f"{path}.agg[{i}]", f"未知聚合方式: {agg!r}")
        layers.append(MpnnLayer(fnn_from_dict(comb, f"{path}.layers[{i}]"), aggregation))
    try:
        return Mpnn(tuple(layers))
    except DimensionMismatch as e:
        raise SchemaViolation(path, str(e)) from e


def time2vec_from_dict(data, path="$") -> Time2Vec:
    layers = _expect_kind(data, "time2vec", path)
    layer = _layer_from_dict(layers[0], f"{path}.layers[0]")
    if layer.in_width != 1:
        raise SchemaViolation(f"{path}.layers[0].W", "time2vec 權重必須是單欄")
    return Time2Vec(layer.W[:, 0], layer.b)
