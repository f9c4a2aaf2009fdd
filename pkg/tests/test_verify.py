import json
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from compiler.global_tgnn import compile_global
from compiler.recursive import compile_recursive
from compiler.tandg import compile_tandg
from logic.checker import SemanticsMode
from logic.parser import parse_formula
from nn.fnn import Fnn, identity, single_layer
from nn.mpnn import Mpnn, MpnnLayer
from tgnn.models import RecursiveTgnn
from verify.audit import audit_sweep, dimension_audit, structural_check
from verify.battery import corollary_evidence, indistinguishability_battery
from verify.converter import converter_differential
from verify.corpus import CorpusParams
from verify.equivalence import equiv_sweep, formula_sweep, has_semantics_gap, run_equivalence
from verify.reports import CheckReport, Discrepancy, EquivalenceReport
from verify.suite import figure1_check, fragment_checks, run_suite, witness_check

SMALL_FORMULAS = {"recursive": 2, "tandg": 2, "global": 2}


# =============================================================================
# 預言機等價
# =============================================================================
def test_recursive_figure1_has_no_discrepancies(figure1, figure1_formula):
    artifact = compile_recursive(figure1_formula, 2)
    report = run_equivalence(artifact, SemanticsMode.PRODUCT, [figure1.graph])
    assert report.checked == 12
    assert report.discrepancy_count == 0
    assert report.passed and report.mandatory
    assert report.to_dict()["verdict"] == "pass"


def test_broken_output_is_caught(figure1, figure1_formula):
    """把輸出改成常數1，所有為假的位置都應被報告"""
    artifact = compile_recursive(figure1_formula, 2)
    constant = single_layer([[0] * (2 * artifact.n)], [1])
    broken = replace(artifact, model=RecursiveTgnn(artifact.model.mpnn, constant))
    report = run_equivalence(broken, SemanticsMode.PRODUCT, [figure1.graph], seed=4)
    assert report.discrepancy_count == 11
    assert not report.passed
    first = report.discrepancies[0]
    assert (first.node, first.time, first.expected, first.got) == ("u", 1, 0, 1)
    assert [d.sort_key() for d in report.discrepancies] == sorted(d.sort_key() for d in report.discrepancies)
    assert report.summary_row()[1] == "FAIL"


def test_discrepancy_list_is_capped():
    report = EquivalenceReport("c1", "recursive", "product", {"count": 1}, seed=0, cap=3)
    for t in (5, 4, 3, 2, 1):
        report.add(Discrepancy("ab", "v", t, 1, 0))
    report.finalize()
    assert report.discrepancy_count == 5
    assert [d.time for d in report.discrepancies] == [3, 4, 5]
    assert report.to_dict()["verdict"] == "fail"


@pytest.mark.parametrize("arch", ["recursive", "tandg"])
def test_small_sweeps_pass(arch, small_corpus):
    sweep = formula_sweep(arch, SemanticsMode.PRODUCT, small_corpus, seed=11, formulas=4)
    assert sweep.passed, sweep.render()
    assert len(sweep.reports) == 4
    assert not sweep.gaps


def test_global_sweeps(small_corpus, small_static_corpus):
    static = formula_sweep("global", SemanticsMode.PRODUCT, small_static_corpus, seed=11, formulas=4)
    assert static.passed, static.render()
    temporal = formula_sweep("global", SemanticsMode.TEMPORAL_NEIGHBOURHOOD, small_corpus, seed=11, formulas=4)
    assert temporal.passed, temporal.render()
    gap = formula_sweep("global", SemanticsMode.PRODUCT, small_corpus, seed=11, formulas=4, label="gap")
    assert gap.passed


def test_equiv_sweep_single_formula(small_corpus):
    report = equiv_sweep(parse_formula("<>Y c1 & !P c2"), "tandg", SemanticsMode.PRODUCT, small_corpus, seed=2)
    assert report.passed
    assert report.corpus["count"] == 8


def test_semantics_gap_is_flagged_not_failed(witness):
    phi = parse_formula("<>P c1")
    assert has_semantics_gap("global", SemanticsMode.PRODUCT, phi, [witness.graph])
    assert not has_semantics_gap("global", SemanticsMode.TEMPORAL_NEIGHBOURHOOD, phi, [witness.graph])
    assert not has_semantics_gap("recursive", SemanticsMode.PRODUCT, phi, [witness.graph])

    report = run_equivalence(compile_global(phi, 1), SemanticsMode.PRODUCT, [witness.graph])
    assert report.discrepancy_count == 1
    assert not report.mandatory
    assert report.flagged
    assert report.summary_row()[1] == "FLAGGED"
    temporal = run_equivalence(compile_global(phi, 1), SemanticsMode.TEMPORAL_NEIGHBOURHOOD, [witness.graph])
    assert temporal.passed


def test_witness_and_fragment_checks():
    witness = witness_check()
    assert witness.passed
    assert witness.details == {"product": "false", "temporal": "true", "global_output": "1"}
    assert all(r.passed for r in fragment_checks())


# =============================================================================
# 逐維度審計
# =============================================================================
def test_figure1_dimension_audit(figure1, figure1_formula):
    artifact = compile_recursive(figure1_formula, 2)
    report = dimension_audit(artifact, graphs=[figure1.graph], seed=None)
    assert report.passed, report.render()
    assert report.graphs == 1
    assert all(count > 0 for count in report.checked.values())
    assert structural_check(artifact).passed


def test_figure1_check_with_audit():
    reports = figure1_check(audit=True)
    assert [r.passed for r in reports] == [True, True, True]
    assert reports[0].details == {"oracle": "true", "recursive_output": "1"}


def test_audit_rejects_other_architectures():
    with pytest.raises(ValueError):
        dimension_audit(compile_tandg(parse_formula("Y c1")), graphs=[])


def test_structure_check_notices_missing_deviation():
    artifact = compile_recursive(parse_formula("!c1"))
    assert structural_check(artifact).passed
    assert not structural_check(replace(artifact, deviations=())).passed


def test_structure_check_notices_deep_comb():
    artifact = compile_recursive(parse_formula("!c1"))
    assert artifact.structure["single_layer_comb"] is True
    mpnn = artifact.model.mpnn
    first = mpnn.layers[1]
    deep = MpnnLayer(Fnn(first.comb.layers + identity(first.out_width).layers), first.agg)
    model = RecursiveTgnn(Mpnn(mpnn.layers[:1] + (deep,) + mpnn.layers[2:]), artifact.model.out)
    assert not structural_check(replace(artifact, model=model)).passed
    relabelled = replace(artifact, structure={**artifact.structure, "single_layer_comb": False})
    assert not structural_check(relabelled).passed


def test_audit_sweep(small_corpus):
    report, structure = audit_sweep(small_corpus.with_count(3), seed=8, formulas=5)
    assert report.passed, report.render()
    assert report.graphs == 15
    assert structure.passed


# =============================================================================
# 不可區分性與轉換
# =============================================================================
@pytest.mark.parametrize("arch, separating", [
    ("tandg", {"oracle", "recursive", "global"}),
    ("global", {"oracle", "recursive", "tandg"}),
])
def test_indistinguishability_battery(arch, separating):
    report = indistinguishability_battery(arch, trials=6, seed=3)
    assert report.mismatches == 0
    assert set(report.separations) == separating
    assert all(entry["distinguishes"] for entry in report.separations.values())
    assert report.passed
    assert report.to_dict()["evidence"] == "sampled, not a proof"


def test_battery_arguments_are_checked():
    with pytest.raises(ValueError):
        indistinguishability_battery("recursive", trials=1)
    with pytest.raises(ValueError):
        indistinguishability_battery("tandg", trials=0)


def test_corollary_evidence():
    report = corollary_evidence(seed=5, trials=3)
    assert report.passed
    assert report.details["global_compiled_on_figure2"] is True
    assert report.details["tandg_compiled_on_figure4"] is True


def test_converter_differential():
    corpus = CorpusParams(max_nodes=4, max_snapshots=3, colours=2, count=4)
    report = converter_differential(trials=3, corpus_params=corpus, seed=2)
    assert report.passed
    assert report.comparisons > 0
    assert report.to_dict()["mismatches"] == 0


# =============================================================================
# 套件
# =============================================================================
def test_suite_equiv_with_small_overrides():
    result = run_suite("equiv", seed=5, formulas=SMALL_FORMULAS, graphs=3)
    assert result.passed, result.render()
    assert result.exit_code == 0
    data = json.loads(result.to_json())
    assert data["suite"] == "equiv" and data["seed"] == 5
    names = [r["name"] for r in data["reports"]]
    assert "figure1" in names and "divergence witness" in names
    gap = next(r for r in result.reports if r.name == "sweep[global/product/gap]")
    assert gap.passed


def test_suite_indist_and_dims():
    assert run_suite("indist", trials=2, seed=5).passed
    dims = run_suite("dims", seed=5, formulas=SMALL_FORMULAS, graphs=2)
    assert dims.passed, dims.render()
    assert "verdict=PASS" in dims.render()


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("smoke")


def test_check_reports_hold_plain_values():
    figure = figure1_check()[0]
    assert type(figure.ok) is bool
    assert json.loads(json.dumps(figure.to_dict()))["passed"] is True
    report = CheckReport("numpy", np.bool_(True), {"count": np.int64(3), "ratio": Fraction(1, 2)})
    assert report.to_dict() == {"check": "numpy", "passed": True, "details": {"count": 3, "ratio": "1/2"}}
    assert json.loads(run_suite("indist", trials=2, seed=5).to_json())["passed"] is True
