from fractions import Fraction

import pytest

from nn.fnn import single_layer
from nn.mpnn import Mpnn, MpnnLayer, Sum, SumMsg
from nn.time2vec import affine_encoder
from tgnn.models import DeltaConvention, GlobalTgnn, RecursiveTgnn, TandGTgnn
from tgnn.runtime import classify, run_global, run_model, run_recursive, run_tandg
from tgnn.sampler import SamplerDims, sample_model
from tgnn.serialization import model_from_dict, model_to_dict, parse_model, serialize_model
from tgraph.serialization import from_dict, to_dict
from utils.exceptions import DimensionMismatch, JsonSyntax, SchemaViolation

# 只有 t_1 帶 c1 的單節點圖
ONCE = from_dict({
    "nodes": ["v"],
    "colours": 1,
    "snapshots": [{"t": 1, "labels": {"v": [1]}}, {"t": 2}, {"t": 3}],
})


def _self_only(width_in: int = 1) -> MpnnLayer:
    """只讀自身狀態的第一維"""
    return MpnnLayer(single_layer([[1] + [0] * (2 * width_in - 1)], [0]), Sum())


def _sticky_recursive() -> RecursiveTgnn:
    """h(t) = trReLU(c1 + h(t-1))：c1 曾經出現過"""
    return RecursiveTgnn(Mpnn((MpnnLayer(single_layer([[1, 1, 0, 0]], [0]), Sum()),)), single_layer([[1]], [0]))


def _sticky_tandg() -> TandGTgnn:
    return TandGTgnn(Mpnn((_self_only(),)), Mpnn((_self_only(),)), single_layer([[1, 1]], [0]),
                     single_layer([[1]], [0]))


def _neighbour_ever_global(msg_weights) -> GlobalTgnn:
    msg = single_layer([msg_weights], [0])
    layer = MpnnLayer(single_layer([[0, 1]], [0]), SumMsg(msg))
    return GlobalTgnn(Mpnn((layer,)), affine_encoder(), single_layer([[1]], [0]))


# =============================================================================
# 執行
# =============================================================================
def test_recursive_state_carries_across_snapshots():
    run = run_recursive(_sticky_recursive(), ONCE)
    assert run.outputs.tolist() == [[1, 1, 1]]
    assert len(run.layers) == 3 and len(run.layers[0]) == 2
    # 第一個快照的輸入為 c ‖ 0
    assert run.layers[0][0].tolist() == [[1, 0]]
    assert run.layers[1][0].tolist() == [[0, 1]]


def test_tandg_matches_recursive_on_sticky_model(figure4_pair):
    for pointed in figure4_pair:
        expected = run_recursive(_sticky_recursive(), pointed.graph).outputs.tolist()
        run = run_tandg(_sticky_tandg(), pointed.graph)
        assert run.outputs.tolist() == expected
        assert set(run.auxiliary) == {"m2", "cell"}
    right = figure4_pair[1]
    assert run_tandg(_sticky_tandg(), right.graph).outputs.tolist() == [[0, 1]]


def test_global_aggregates_past_edges(witness):
    run = run_global(_neighbour_ever_global([1, 0]), witness.graph)
    v, u = witness.graph.node_index("v"), witness.graph.node_index("u")
    assert run.outputs[v].tolist() == [1, 1]
    assert run.outputs[u].tolist() == [0, 0]
    assert run.classify_at(witness) == 1


def test_global_delta_convention(witness):
    # msg 只讀時間差：過去減現在為負，截斷為0
    past = run_global(_neighbour_ever_global([0, 1]), witness.graph)
    assert past.output(witness.node) == 0
    flipped = GlobalTgnn(_neighbour_ever_global([0, 1]).mpnn, affine_encoder(), single_layer([[1]], [0]),
                         DeltaConvention.CURRENT_MINUS_PAST)
    assert run_global(flipped, witness.graph).output(witness.node) == 1


def test_run_model_dispatch_and_label_width(figure1):
    run = run_model(_sticky_recursive(), ONCE)
    assert run.arch == "recursive"
    assert run.final_vector(0).tolist() == [1]
    with pytest.raises(DimensionMismatch):
        run_model(_sticky_recursive(), figure1.graph)
    with pytest.raises(TypeError):
        run_model(object(), ONCE)


@pytest.mark.parametrize("value, expected", [
    (0, 0), (1, 1), (Fraction(1, 2), 1), (Fraction(1, 3), 0), (0.75, 1), (-2, 0),
])
def test_classify_threshold(value, expected):
    assert classify(value) == expected


# =============================================================================
# 模型不變量
# =============================================================================
def test_model_width_invariants():
    with pytest.raises(DimensionMismatch):
        RecursiveTgnn(_sticky_recursive().mpnn, single_layer([[1, 1]], [0]))
    with pytest.raises(DimensionMismatch):
        TandGTgnn(Mpnn((_self_only(),)), Mpnn((_self_only(),)), single_layer([[1]], [0]),
                  single_layer([[1]], [0]))
    with pytest.raises(DimensionMismatch):
        GlobalTgnn(Mpnn((_self_only(),)), affine_encoder(), single_layer([[1]], [0]))
    with pytest.raises(DimensionMismatch):
        _neighbour_ever_global([1, 0, 0])


# =============================================================================
# 抽樣與序列化
# =============================================================================
@pytest.mark.parametrize("arch", ["recursive", "tandg", "global"])
def test_sampled_models_run(arch, figure1):
    model = sample_model(arch, SamplerDims(colours=2, periodic_slots=0), 5)
    assert model.arch == arch
    assert model.colour_width == 2
    run = run_model(model, figure1.graph)
    assert run.outputs.shape == (3, 4)
    assert model_to_dict(model) == model_to_dict(sample_model(arch, SamplerDims(colours=2, periodic_slots=0), 5))


def test_sampled_tandg_cell_is_single_layer():
    assert sample_model("tandg", SamplerDims(), 0).cell_in_class_f()
    with pytest.raises(ValueError):
        sample_model("lstm", SamplerDims(), 0)
    with pytest.raises(ValueError):
        SamplerDims(layers=0)


@pytest.mark.parametrize("arch", ["recursive", "tandg", "global"])
def test_model_json_reproduces_outputs(arch, figure1):
    model = sample_model(arch, SamplerDims(colours=2), 9)
    again = parse_model(serialize_model(model))
    assert again.arch == arch
    assert run_model(again, figure1.graph).outputs.tolist() == run_model(model, figure1.graph).outputs.tolist()


def test_model_json_errors():
    with pytest.raises(JsonSyntax):
        parse_model("{")
    data = model_to_dict(_sticky_recursive())
    with pytest.raises(SchemaViolation) as info:
        parse_model(serialize_model(_sticky_recursive()).replace('"recursive"', '"lstm"'))
    assert info.value.path == "$.arch"
    del data["components"]["out"]
    with pytest.raises(SchemaViolation) as info:
        model_from_dict(data)
    assert info.value.path == "$.components.out"
    data = model_to_dict(_neighbour_ever_global([1, 0]))
    assert data["delta_convention"] == "past_minus_current"
    data["delta_convention"] = "sideways"
    with pytest.raises(SchemaViolation) as info:
        model_from_dict(data)
    assert info.value.path == "$.delta_convention"


# =============================================================================
# 節點置換
# =============================================================================
def _reorder_nodes(tg, order):
    """同一張時序圖，節點依 order 重新編號"""
    data = to_dict(tg)
    data["nodes"] = [data["nodes"][i] for i in order]
    return from_dict(data)


@pytest.mark.parametrize("arch", ["recursive", "tandg", "global"])
def test_runs_are_node_permutation_equivariant(arch, figure1, small_corpus):
    model = sample_model(arch, SamplerDims(colours=2, periodic_slots=0), 3)
    for tg in [figure1.graph] + small_corpus.generate(6):
        n = tg.node_count
        for order in (list(reversed(range(n))), [(i + 1) % n for i in range(n)]):
            moved = _reorder_nodes(tg, order)
            before = run_model(model, tg).outputs
            after = run_model(model, moved).outputs
            for name in tg.node_names:
                assert after[moved.node_index(name)].tolist() == before[tg.node_index(name)].tolist()
