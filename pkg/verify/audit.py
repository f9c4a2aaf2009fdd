"""
遞迴編譯審計
逐維度比對隱藏狀態與預言機：
    (a) 維度 i 自建立該子公式的層起，等於 φ_i 在當下快照的真值
    (b) 維度 n+i 等於 φ_i 在前一快照的真值（t_1 時為0）
    (c) 維度 2n+i 等於「φ_i 在某個較早快照成立」（t_1 時為0）
另檢查所有隱藏值皆為0或1，以及層數與寬度的結構
=============================================================================
"""
import logging
from typing import Iterable, Optional

import numpy as np

from compiler.artifact import CompilationArtifact, RECURSIVE_DEVIATIONS
from compiler.recursive import compile_recursive
from config.settings import DEFAULT_SEED, FORMULA_MAX_DEPTH
from logic.checker import check
from logic.formula import format_formula
from logic.generator import FormulaParams, random_formula
from tgnn.runtime import run_recursive
from tgraph.graph import TemporalGraph
from utils.helpers import derive_seed
from utils.rational import is_bit_array
from verify.corpus import CorpusParams
from verify.reports import AuditReport, CheckReport

# 設置logger
logger = logging.getLogger(__name__)

# 軌跡索引：0 為輸入、1 為版面層、2..n-m+1 為構造層、n-m+2 為位移層
LAYOUT_TRACE_INDEX = 1


def _record(report: AuditReport, statement: str, mismatch: np.ndarray, checked: int, H: np.ndarray,
            offset: int, expected: np.ndarray, tg: TemporalGraph, t: int, layer: int):
    report.checked[statement] += checked
    for v, i in np.argwhere(mismatch):
        report.add(statement, {"subformula": int(i), "node": tg.node_name(v), "time": t + 1, "layer": layer,
                               "expected": int(expected[v, i]), "got": str(H[v, offset + i])})


def _audit_graph(artifact: CompilationArtifact, tg: TemporalGraph, report: AuditReport):
    n = artifact.n
    last = artifact.n - artifact.m + 1
    truth = check(tg, artifact.formula, index=artifact.index).values.astype(np.int64)
    established = np.array([artifact.layer_map[i]["layer"] for i in range(n)])
    run = run_recursive(artifact.model, tg)

    for state in run.all_states():
        report.checked["binary"] += 1
        if not is_bit_array(state):
            report.add("binary", {"shape": list(state.shape)})

    for t in range(tg.length):
        # (節點, 子公式) 的期望值
        current = truth[:, :, t].T
        yesterday = truth[:, :, t - 1].T if t > 0 else np.zeros_like(current)
        past = truth[:, :, :t].max(axis=2).T if t > 0 else np.zeros_like(current)
        for layer in range(LAYOUT_TRACE_INDEX, last + 1):
            H = run.layers[t][layer]
            ready = established <= layer
            full = n * tg.node_count
            _record(report, "a", (H[:, :n] != current) & ready, int(ready.sum()) * tg.node_count,
                    H, 0, current, tg, t, layer)
            _record(report, "b", H[:, n:2 * n] != yesterday, full, H, n, yesterday, tg, t, layer)
            _record(report, "c", H[:, 2 * n:3 * n] != past, full, H, 2 * n, past, tg, t, layer)


def dimension_audit(artifact: CompilationArtifact, corpus_params: Optional[CorpusParams] = None,
                    seed: int = DEFAULT_SEED, graphs: Optional[Iterable[TemporalGraph]] = None,
                    report: Optional[AuditReport] = None) -> AuditReport:
    """
    審計單一遞迴編譯產物

    Args:
        artifact: recursive 架構的編譯產物
        corpus_params: 語料參數（未給 graphs 時使用）
        seed: 語料種子
        graphs: 直接指定的圖
        report: 累加到既有報告

    Returns:
        AuditReport
    """
    if artifact.arch != "recursive":
        raise ValueError(f"只能審計遞迴架構產物，得到 {artifact.arch}")
    if graphs is None:
        graphs = (corpus_params or CorpusParams()).generate(seed)
    graphs = list(graphs)
    if report is None:
        report = AuditReport(format_formula(artifact.formula), 0, seed)
    report.graphs += len(graphs)
    for tg in graphs:
        _audit_graph(artifact, tg, report)
    logger.debug(f"{report.name}: {report.summary()}")
    return report


def structural_problems(artifact: CompilationArtifact):
    """遞迴產物的結構問題列表（空表示通過）"""
    n, m, k = artifact.n, artifact.m, artifact.colours
    layers = artifact.model.mpnn.layers
    problems = []
    if len(layers) != n - m + 2:
        problems.append(f"層數 {len(layers)} != n-m+2 = {n - m + 2}")
    if layers[0].state_width != k + 2 * n:
        problems.append(f"輸入寬度 {layers[0].state_width} != k+2n = {k + 2 * n}")
    if any(layer.out_width != 3 * n for layer in layers[:-1]):
        problems.append(f"工作寬度不是 3n = {3 * n}")
    if layers[-1].out_width != 2 * n:
        problems.append(f"位移層輸出寬度 {layers[-1].out_width} != 2n = {2 * n}")
    if artifact.structure.get("construction_layers") != n - m:
        problems.append(f"構造層數 {artifact.structure.get('construction_layers')} != n-m = {n - m}")
    if not artifact.model.mpnn.is_single_layer_comb():
        problems.append("組合函數不是單層 trReLU")
    if artifact.structure.get("single_layer_comb") is not True:
        problems.append(f"結構摘要 single_layer_comb = {artifact.structure.get('single_layer_comb')}")
    if tuple(artifact.deviations) != RECURSIVE_DEVIATIONS:
        problems.append(f"偏離清單 {list(artifact.deviations)} 與記錄不符")
    return problems


def structural_check(artifact: CompilationArtifact) -> CheckReport:
    problems = structural_problems(artifact)
    return CheckReport(f"structure {format_formula(artifact.formula)}", not problems,
                       {"n": artifact.n, "m": artifact.m, "problems": len(problems)})


def audit_sweep(corpus_params: CorpusParams, seed: int = DEFAULT_SEED, formulas: int = 200,
                max_depth: int = FORMULA_MAX_DEPTH):
    """
    隨機公式的審計與結構檢查

    Returns:
        (AuditReport, CheckReport): 所有公式累加的審計報告與結構檢查摘要
    """
    params = FormulaParams(max_depth, corpus_params.colours)
    graphs = corpus_params.generate(seed)
    report = AuditReport(f"{formulas} random formulas", 0, seed)
    failing = []
    for i in range(formulas):
        phi = random_formula(params, derive_seed(seed, "formula", "recursive", i))
        artifact = compile_recursive(phi, corpus_params.colours)
        dimension_audit(artifact, graphs=graphs, seed=seed, report=report)
        if structural_problems(artifact):
            failing.append(format_formula(phi))
    structure = CheckReport("structure", not failing, {"artifacts": formulas, "failed": len(failing)})
    logger.info(f"{report.name}: {report.summary()}；結構檢查失敗 {len(failing)}")
    return report, structure
