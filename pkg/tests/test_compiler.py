import json
from dataclasses import replace

import numpy as np
import pytest

from compiler import RECURSIVE_DEVIATIONS, compile_formula, sidecar_path, tandg_to_recursive, write_artifact
from compiler.global_tgnn import compile_global
from compiler.layers import row_entries
from compiler.recursive import compile_recursive
from compiler.tandg import Category, categorize, compile_tandg
from logic.checker import check
from logic.parser import parse_formula
from tgnn.runtime import classify, run_model, run_recursive, run_tandg
from tgnn.serialization import parse_model
from utils.exceptions import ColourIndexOutOfRange, FragmentViolation, UnsupportedCell


def _agrees_with_oracle(artifact, tg) -> bool:
    expected = check(tg, artifact.formula).root_values()
    outputs = run_model(artifact.model, tg).outputs
    return all(classify(outputs[v, t]) == int(expected[v, t])
               for v in range(tg.node_count) for t in range(tg.length))


# =============================================================================
# 遞迴架構
# =============================================================================
def test_negation_structure():
    artifact = compile_recursive(parse_formula("!c1"))
    assert (artifact.n, artifact.m, artifact.colours) == (2, 1, 1)
    mpnn = artifact.model.mpnn
    assert mpnn.depth == 3
    assert mpnn.in_width == 5
    assert [layer.out_width for layer in mpnn.layers] == [6, 6, 4]
    assert artifact.structure["construction_layers"] == 1
    assert artifact.structure["working_width"] == 6
    assert artifact.structure["carried_width"] == 4
    assert artifact.deviations == RECURSIVE_DEVIATIONS


def test_layer_map_follows_enumeration():
    artifact = compile_recursive(parse_formula("<> Y c1"), 2)
    assert (artifact.n, artifact.m) == (3, 1)
    assert artifact.structure["construction_layers"] == 2
    assert {i: e["layer"] for i, e in artifact.layer_map.items()} == {0: 1, 1: 2, 2: 3}
    assert artifact.dimension_map[1] == {"current": 1, "yesterday": 4, "past": 7}
    assert artifact.model.mpnn.depth == artifact.n - artifact.m + 2


def test_figure1_compiles_to_one_at_v_t4(figure1, figure1_formula):
    artifact = compile_recursive(figure1_formula, figure1.graph.label_width)
    assert run_model(artifact.model, figure1.graph).output_at(figure1) == 1
    assert _agrees_with_oracle(artifact, figure1.graph)


def test_recursive_outputs_are_bits(figure1, figure2_pair):
    artifact = compile_recursive(parse_formula("P(c1 & <>c2) & !Y c2"), 2)
    for pointed in (figure1, *figure2_pair):
        outputs = run_model(artifact.model, pointed.graph).outputs
        assert set(outputs.flatten().tolist()) <= {0, 1}
        assert _agrees_with_oracle(artifact, pointed.graph)


def test_colour_width_is_checked():
    with pytest.raises(ColourIndexOutOfRange):
        compile_recursive(parse_formula("c3"), 2)
    assert compile_recursive(parse_formula("c1"), 3).model.colour_width == 3


# =============================================================================
# 時間與圖架構
# =============================================================================
def test_categories():
    assert categorize(parse_formula("<>c1")) is Category.STATIC
    assert categorize(parse_formula("<>Y c1")) is Category.TEMPORAL
    assert categorize(parse_formula("c1 & P c2")) is Category.MIXED


def test_tandg_rejects_non_l1():
    with pytest.raises(FragmentViolation) as info:
        compile_tandg(parse_formula("<>(P c1 & c2)"))
    assert info.value.fragment == "L1"
    assert info.value.subformula == parse_formula("<>(P c1 & c2)")


def test_tandg_agrees_with_oracle(figure1, figure4_pair):
    for text in ("Y c1", "<>Y c1", "c1 & P c2", "!(<>c2 & Y !c1)"):
        artifact = compile_tandg(parse_formula(text), 2)
        assert _agrees_with_oracle(artifact, figure1.graph), text
    left, right = figure4_pair
    artifact = compile_tandg(parse_formula("Y c1"))
    assert classify(run_model(artifact.model, left.graph).output_at(left)) == 1
    assert classify(run_model(artifact.model, right.graph).output_at(right)) == 0


NESTED_MIXED = "!(!(P c1 & !c2) & !(!P c1 & c2))"


@pytest.mark.parametrize("text", ["c1 & Y c2", "Y c1 & c2", "c1 & P c2"])
def test_one_level_mixed_cell_is_single_layer(text, figure1, small_corpus):
    artifact = compile_tandg(parse_formula(text), 2)
    assert artifact.model.cell.depth == 1
    assert artifact.structure["cell_in_class_f"]
    assert "multi_layer_cell" not in artifact.deviations
    assert "past_accumulator_in_m2" in artifact.deviations
    assert _agrees_with_oracle(artifact, figure1.graph), text
    for tg in small_corpus.generate(3):
        assert _agrees_with_oracle(artifact, tg), text


def test_nested_mixed_cell_depth_matches_gate_depth(figure1, small_corpus):
    artifact = compile_tandg(parse_formula(NESTED_MIXED), 2)
    assert artifact.model.cell.depth == 2
    assert artifact.structure["cell_layers"] == 2
    assert "multi_layer_cell" in artifact.deviations
    root = artifact.n - 1
    assert artifact.layer_map[root] == {"component": "cell", "layer": 2}
    assert _agrees_with_oracle(artifact, figure1.graph)
    for tg in small_corpus.generate(4):
        assert _agrees_with_oracle(artifact, tg)


def test_static_only_formula_still_gets_one_cell_layer():
    single = compile_tandg(parse_formula("<>Y c1"))
    assert single.structure["cell_in_class_f"]
    assert compile_tandg(parse_formula("<>c1")).model.cell.depth == 1


# =============================================================================
# 全域架構
# =============================================================================
def test_global_rejects_non_l2():
    with pytest.raises(FragmentViolation) as info:
        compile_global(parse_formula("P c1"))
    assert info.value.fragment == "L2"


def test_global_separates_figure2_pair(figure2_pair):
    artifact = compile_global(parse_formula("<>(c1 & <>Y c2)"), 2)
    assert artifact.structure["layers"] == artifact.n - artifact.m + 1
    assert artifact.dimension_map[artifact.index.position(parse_formula("Y c2"))]["current"] is None
    left, right = figure2_pair
    assert classify(run_model(artifact.model, left.graph).output_at(left)) == 1
    assert classify(run_model(artifact.model, right.graph).output_at(right)) == 0
    for pointed in figure2_pair:
        assert _agrees_with_oracle(artifact, pointed.graph)


def test_global_on_static_edges_matches_product_semantics(figure2_pair):
    artifact = compile_global(parse_formula("c2 & <>P(c1 | c2)"), 2)
    for pointed in figure2_pair:
        assert _agrees_with_oracle(artifact, pointed.graph)


def test_compile_formula_dispatch():
    assert compile_formula(parse_formula("c1"), "tandg").arch == "tandg"
    with pytest.raises(ValueError):
        compile_formula(parse_formula("c1"), "lstm")


# =============================================================================
# 轉換
# =============================================================================
def test_converted_model_matches_tandg(figure1):
    artifact = compile_tandg(parse_formula("<>Y c1 & !P c2"), 2)
    converted = tandg_to_recursive(artifact.model)
    assert converted.mpnn.depth == artifact.model.m1.depth + 1
    expected = run_tandg(artifact.model, figure1.graph).outputs
    assert run_recursive(converted, figure1.graph).outputs.tolist() == expected.tolist()


def test_converter_rejects_multi_layer_cell():
    artifact = compile_tandg(parse_formula(NESTED_MIXED))
    with pytest.raises(UnsupportedCell):
        tandg_to_recursive(artifact.model)


# =============================================================================
# 產物檔案
# =============================================================================
def test_write_artifact_and_sidecar(tmp_path, figure1):
    artifact = compile_recursive(parse_formula("<> Y c1"), 2)
    model_path = tmp_path / "model.json"
    side = write_artifact(artifact, model_path)
    assert side == sidecar_path(model_path) == tmp_path / "model.sidecar.json"

    data = json.loads(side.read_text(encoding="utf-8"))
    assert data["index_base"] == 0
    assert (data["n"], data["m"], data["colours"]) == (3, 1, 2)
    assert data["subformulas"] == ["c1", "Y c1", "<>Y c1"]
    assert data["layer_map"]["2"] == {"component": "mpnn", "layer": 3}
    assert data["deviations"] == list(RECURSIVE_DEVIATIONS)
    assert data["structure"]["single_layer_comb"] is True

    model = parse_model(model_path.read_text(encoding="utf-8"))
    again = run_model(model, figure1.graph).outputs.tolist()
    assert again == run_model(artifact.model, figure1.graph).outputs.tolist()


def _normalised_row(artifact, i):
    n = artifact.n
    weights, bias = row_entries(artifact.model.mpnn.layers[1].comb.layers[0], i)
    return {(col // n, col % n): value for col, value in weights.items()}, bias


def test_shared_subformulas_get_identical_rows():
    small = compile_recursive(parse_formula("Y c1 & <>c2"), 2)
    large = compile_recursive(parse_formula("!(Y c1 & <>c2)"), 2)
    assert small.m == large.m
    for i in range(small.m, small.n):
        f = small.index.formulas[i]
        assert large.index.position(f) == i
        assert _normalised_row(small, i) == _normalised_row(large, i), str(f)


def test_converted_compiled_model_still_matches_oracle(small_corpus):
    artifact = compile_tandg(parse_formula("<>P c1"), 2)
    converted = replace(artifact, model=tandg_to_recursive(artifact.model))
    for tg in small_corpus.generate(3):
        assert _agrees_with_oracle(converted, tg)


def test_compiled_traces_are_binary(figure1):
    for artifact in (compile_recursive(parse_formula("P(c1 & <>c2) & !Y c2"), 2),
                     compile_tandg(parse_formula("!(<>c2 & Y !c1)"), 2),
                     compile_global(parse_formula("<>(c1 & <>Y c2)"), 2)):
        run = run_model(artifact.model, figure1.graph)
        for states in run.all_states():
            assert set(np.asarray(states).flatten().tolist()) <= {0, 1}, artifact.arch


def test_single_layer_mixed_cell_converts(figure1):
    artifact = compile_tandg(parse_formula("c1 & Y c2"), 2)
    converted = tandg_to_recursive(artifact.model)
    expected = run_tandg(artifact.model, figure1.graph).outputs
    assert run_recursive(converted, figure1.graph).outputs.tolist() == expected.tolist()
