import math
from fractions import Fraction

import numpy as np
import pytest

from nn.fnn import Activation, Fnn, FnnLayer, eval_fnn, identity, single_layer
from nn.gadgets import and_gate, eq_gate, leq_gate, not_gate, or_threshold
from nn.mpnn import Mpnn, MpnnLayer, Sum, SumMsg, pad_identity, parallel_compose, run_mpnn, serial_compose
from nn.serialization import (
    fnn_from_dict, fnn_to_dict, mpnn_from_dict, mpnn_to_dict, time2vec_from_dict, time2vec_to_dict,
)
from nn.time2vec import Time2Vec, affine_encoder, time2vec
from tgraph.graph import StaticGraph
from utils.exceptions import DimensionMismatch, SchemaViolation, UnsupportedAggregation
from utils.rational import rational_array


def _neighbour_sum_layer() -> MpnnLayer:
    """h' = trReLU(鄰居狀態和)"""
    return MpnnLayer(single_layer([[0, 1]], [0]), Sum())


def _not_self_comb() -> Fnn:
    """1 - 自身狀態，忽略聚合"""
    return single_layer([[-1, 0]], [1])


@pytest.fixture
def path_graph():
    """0 - 1 - 2，節點3孤立"""
    return StaticGraph.build(4, [(0, 1), (1, 2)], [[1], [0], [0], [1]])


# =============================================================================
# 前饋網路與布林閘
# =============================================================================
@pytest.mark.parametrize("x, y", [(0, 0), (0, 1), (1, 0), (1, 1)])
def test_boolean_gates_on_bits(x, y):
    assert eval_fnn(and_gate(), [x, y]).tolist() == [x & y]
    assert eval_fnn(or_threshold(), [x, y]).tolist() == [x | y]
    assert eval_fnn(not_gate(), [x]).tolist() == [1 - x]


def test_wide_and_gate():
    assert eval_fnn(and_gate(3), [1, 1, 1]).tolist() == [1]
    assert eval_fnn(and_gate(3), [1, 0, 1]).tolist() == [0]


def test_eq_and_leq_gates_on_integer_deltas():
    for delta in range(-2, 7):
        assert eval_fnn(eq_gate(2), [delta]).tolist() == [int(delta == 2)]
        assert eval_fnn(leq_gate(3), [delta]).tolist() == [int(delta <= 3)]


def test_trrelu_clips_and_stays_exact():
    half = single_layer([["1/2"]], [0])
    assert eval_fnn(half, [1])[0] == Fraction(1, 2)
    doubled = single_layer([[2]], [0])
    assert eval_fnn(doubled, [1]).tolist() == [1]
    assert eval_fnn(doubled, [-1]).tolist() == [0]
    linear = single_layer([[2]], [0], Activation.NONE)
    assert eval_fnn(linear, [3]).tolist() == [6]


def test_identity_preserves_unit_interval():
    out = eval_fnn(identity(2), rational_array([Fraction(1, 3), 1]))
    assert list(out) == [Fraction(1, 3), 1]


def test_fnn_dimension_checks():
    with pytest.raises(DimensionMismatch):
        eval_fnn(not_gate(), [1, 0])
    with pytest.raises(DimensionMismatch):
        Fnn(())
    with pytest.raises(DimensionMismatch):
        Fnn((FnnLayer.build([[1, 1]], [0]), FnnLayer.build([[1, 1]], [0])))
    with pytest.raises(DimensionMismatch):
        FnnLayer(np.eye(2, dtype=np.int64), np.zeros(3, dtype=np.int64))


# =============================================================================
# 訊息傳遞網路
# =============================================================================
def test_sum_aggregation_and_empty_neighbourhood(path_graph):
    states = run_mpnn(Mpnn((_neighbour_sum_layer(),)), path_graph)
    assert len(states) == 2
    assert states[1][:, 0].tolist() == [0, 1, 0, 0]


def test_summsg_aggregation(path_graph):
    # 計算標籤為0的鄰居，截斷到1
    layer = MpnnLayer(single_layer([[0, 1]], [0]), SumMsg(not_gate()))
    states = run_mpnn(Mpnn((layer,)), path_graph)
    assert states[1][:, 0].tolist() == [1, 1, 1, 0]


def test_mpnn_input_width_is_checked(path_graph):
    with pytest.raises(DimensionMismatch):
        run_mpnn(Mpnn((_neighbour_sum_layer(),)), path_graph, rational_array([[1, 0]] * 4))
    with pytest.raises(DimensionMismatch):
        Mpnn((MpnnLayer(single_layer([[0, 1, 1]], [0]), Sum()),))


def test_parallel_composition_is_block_diagonal(path_graph):
    a = Mpnn((_neighbour_sum_layer(),))
    b = Mpnn((MpnnLayer(_not_self_comb(), Sum()),))
    both = parallel_compose(a, b)
    x = rational_array([[1], [0], [0], [1]])
    y = rational_array([[0], [1], [1], [0]])
    combined = run_mpnn(both, path_graph, np.concatenate([x, y], axis=1))[-1]
    assert combined[:, :1].tolist() == run_mpnn(a, path_graph, x)[-1].tolist()
    assert combined[:, 1:].tolist() == run_mpnn(b, path_graph, y)[-1].tolist()


def test_parallel_composition_rejects_mismatched_inputs():
    one = Mpnn((_neighbour_sum_layer(),))
    two = pad_identity(one, 2)
    with pytest.raises(DimensionMismatch):
        parallel_compose(one, two)
    msg = Mpnn((MpnnLayer(single_layer([[0, 1]], [0]), SumMsg(not_gate())),))
    with pytest.raises(UnsupportedAggregation):
        parallel_compose(one, msg)


def test_pad_and_serial_compose(path_graph):
    m = Mpnn((_neighbour_sum_layer(),))
    padded = pad_identity(m, 3)
    assert padded.depth == 3
    assert run_mpnn(padded, path_graph)[-1].tolist() == run_mpnn(m, path_graph)[-1].tolist()
    chained = serial_compose(m, m)
    assert chained.depth == 2
    # 第二層讀到的是第一層的輸出
    assert run_mpnn(chained, path_graph)[-1][:, 0].tolist() == [1, 0, 1, 0]
    with pytest.raises(DimensionMismatch):
        pad_identity(padded, 2)
    with pytest.raises(DimensionMismatch):
        serial_compose(m, Mpnn((MpnnLayer(single_layer([[0, 0, 1, 1]], [0]), Sum()),)))


def _mixing_mpnn() -> Mpnn:
    """兩維狀態，每層同時讀自身與鄰居"""
    first = MpnnLayer(single_layer([[1, 0, 1, 0], [0, 1, 1, -1]], [0, 0]), Sum())
    second = MpnnLayer(single_layer([[1, -1, 0, 1], [0, 0, 1, 1]], [0, -1]), Sum())
    return Mpnn((first, second))


def test_mpnn_is_permutation_equivariant():
    edges = [(0, 1), (1, 2), (2, 3), (0, 2)]
    labels = [[1, 0], [0, 1], [1, 1], [0, 0]]
    # 原節點 v 移到 perm[v]
    perm = [2, 0, 3, 1]
    moved_labels = [None] * 4
    for v, label in enumerate(labels):
        moved_labels[perm[v]] = label
    g = StaticGraph.build(4, edges, labels)
    moved = StaticGraph.build(4, [(perm[a], perm[b]) for a, b in edges], moved_labels)
    m = _mixing_mpnn()
    for before, after in zip(run_mpnn(m, g), run_mpnn(m, moved)):
        for v in range(4):
            assert after[perm[v]].tolist() == before[v].tolist()


def test_serial_compose_is_associative(path_graph):
    a = Mpnn((_neighbour_sum_layer(),))
    b = Mpnn((MpnnLayer(_not_self_comb(), Sum()),))
    c = pad_identity(a, 2)
    left = serial_compose(serial_compose(a, b), c)
    right = serial_compose(a, serial_compose(b, c))
    assert left.depth == right.depth == 4
    for x, y in zip(left.layers, right.layers):
        assert x.comb.layers[0].W.tolist() == y.comb.layers[0].W.tolist()
    assert run_mpnn(left, path_graph)[-1].tolist() == run_mpnn(right, path_graph)[-1].tolist()


def test_parallel_blocks_ignore_each_other(path_graph):
    a = Mpnn((_neighbour_sum_layer(), MpnnLayer(_not_self_comb(), Sum())))
    b = Mpnn((MpnnLayer(_not_self_comb(), Sum()), _neighbour_sum_layer()))
    both = parallel_compose(a, b)
    inputs = [[[1], [0], [0], [1]], [[0], [1], [1], [0]], [[1], [1], [1], [1]], [[0], [0], [0], [0]]]
    for x in map(rational_array, inputs):
        for y in map(rational_array, inputs):
            out = run_mpnn(both, path_graph, np.concatenate([x, y], axis=1))[-1]
            assert out[:, :1].tolist() == run_mpnn(a, path_graph, x)[-1].tolist()
            assert out[:, 1:].tolist() == run_mpnn(b, path_graph, y)[-1].tolist()


# =============================================================================
# time2vec
# =============================================================================
def test_affine_encoder_is_exact():
    encoded = time2vec(affine_encoder(), 3)
    assert encoded.tolist() == [3]
    assert time2vec(affine_encoder(), "1/2")[0] == Fraction(1, 2)


def test_periodic_slots_are_sine():
    enc = Time2Vec.build([1, 1], [0, "1/2"])
    encoded = time2vec(enc, 2)
    assert encoded[0] == 2
    assert encoded[1] == pytest.approx(math.sin(2.5))
    with pytest.raises(ValueError):
        Time2Vec.build([], [])


# =============================================================================
# 序列化
# =============================================================================
def test_fnn_json_keeps_rationals():
    f = Fnn((FnnLayer.build([["1/2", -1]], [2]), FnnLayer.build([[1]], [0], Activation.NONE)))
    data = fnn_to_dict(f)
    assert data["layers"][0] == {"W": [["1/2", -1]], "b": [2], "act": "trrelu"}
    assert fnn_from_dict(data).same_as(f)


def test_mpnn_and_time2vec_json():
    m = Mpnn((MpnnLayer(single_layer([[0, 1]], [0]), SumMsg(not_gate())), _neighbour_sum_layer()))
    data = mpnn_to_dict(m)
    assert data["agg"][1] == "sum"
    again = mpnn_from_dict(data)
    assert again.depth == 2
    assert all(a.comb.same_as(b.comb) for a, b in zip(again.layers, m.layers))
    assert again.layers[0].agg.msg.same_as(not_gate())

    enc = time2vec_from_dict(time2vec_to_dict(Time2Vec.build([1, 2], [0, 1])))
    assert enc.w.tolist() == [1, 2] and enc.b.tolist() == [0, 1]


@pytest.mark.parametrize("mutate, path", [
    (lambda d: d.update(kind="mpnn"), "$.kind"),
    (lambda d: d["layers"][0]["W"][0].__setitem__(0, 0.5), "$.layers[0].W[0][0]"),
    (lambda d: d["layers"][0].update(act="tanh"), "$.layers[0].act"),
    (lambda d: d["layers"][0].update(b=[]), "$.layers[0].b"),
    (lambda d: d["layers"].append({"W": [[1, 1]], "b": [0]}), "$"),
])
def test_fnn_schema_violations(mutate, path):
    data = fnn_to_dict(not_gate())
    mutate(data)
    with pytest.raises(SchemaViolation) as info:
        fnn_from_dict(data)
    assert info.value.path == path


def test_unknown_aggregation_is_rejected():
    data = mpnn_to_dict(Mpnn((_neighbour_sum_layer(),)))
    data["agg"] = ["max"]
    with pytest.raises(SchemaViolation) as info:
        mpnn_from_dict(data)
    assert info.value.path == "$.agg[0]"
