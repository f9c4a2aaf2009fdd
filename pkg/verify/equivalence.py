"""
預言機等價檢查
編譯一次，在語料上執行模型，於每個 (節點, 時間) 比較二值化輸出與預言機真值
=============================================================================
"""
import logging
from typing import Iterable, Optional

from compiler import compile_formula
from compiler.artifact import CompilationArtifact
from config.settings import DEFAULT_SEED, FORMULA_MAX_DEPTH, SWEEP_FORMULAS
from logic.checker import SemanticsMode, check
from logic.formula import Formula, format_formula, contains_temporal
from logic.fragments import Fragment
from logic.generator import FormulaParams, random_formula
from tgnn.runtime import classify, run_model
from tgraph.graph import TemporalGraph, edge_sets_static
from tgraph.serialization import graph_digest
from utils.helpers import derive_seed
from verify.corpus import CorpusParams
from verify.reports import Discrepancy, EquivalenceReport, SweepReport

# 設置logger
logger = logging.getLogger(__name__)

# 各架構能編譯的片段
ARCH_FRAGMENTS = {
    'recursive': Fragment.ANY,
    'tandg': Fragment.L1,
    'global': Fragment.L2,
}


def has_semantics_gap(arch: str, mode: SemanticsMode, phi: Formula, graphs) -> bool:
    """全域架構在乘積語義下讀取過去快照的邊；只有邊會變化的圖上才可能不同"""
    if arch != "global" or mode is not SemanticsMode.PRODUCT or not contains_temporal(phi):
        return False
    return any(not edge_sets_static(tg) for tg in graphs)


def run_equivalence(artifact: CompilationArtifact, mode: SemanticsMode, graphs: Iterable[TemporalGraph],
                    corpus: Optional[dict] = None, seed: int = DEFAULT_SEED) -> EquivalenceReport:
    """
    在給定的圖上比較已編譯模型與預言機

    Args:
        artifact: 編譯產物
        mode: 預言機語義模式
        graphs: 離散時序圖
        corpus: 報告中的語料描述
        seed: 報告中的種子

    Returns:
        EquivalenceReport: 差異依 (圖摘要, 節點, 時間) 排序
    """
    graphs = list(graphs)
    report = EquivalenceReport(
        formula=format_formula(artifact.formula),
        arch=artifact.arch,
        mode=mode.value,
        corpus=corpus or {"count": len(graphs)},
        seed=seed,
        semantics_gap=has_semantics_gap(artifact.arch, mode, artifact.formula, graphs),
    )
    for tg in graphs:
        expected = check(tg, artifact.formula, mode, artifact.index).root_values()
        outputs = run_model(artifact.model, tg).outputs
        digest = None
        for v in range(tg.node_count):
            for t in range(tg.length):
                report.checked += 1
                got = classify(outputs[v, t])
                if got != int(expected[v, t]):
                    digest = digest or graph_digest(tg)
                    report.add(Discrepancy(digest, tg.node_name(v), t + 1, int(expected[v, t]), got))
    report.finalize()
    if report.discrepancy_count and report.semantics_gap:
        logger.warning(f"{report.name}: {report.discrepancy_count} 處差異屬於已知語義落差")
    else:
        logger.debug(f"{report.name}: {report.verdict}")
    return report


def equiv_sweep(phi: Formula, arch: str, mode: SemanticsMode, corpus_params: CorpusParams,
                seed: int = DEFAULT_SEED) -> EquivalenceReport:
    """
    單一公式的等價檢查

    Raises:
        FragmentViolation: 公式不屬於架構要求的片段
    """
    artifact = compile_formula(phi, arch, corpus_params.colours)
    graphs = corpus_params.generate(seed)
    return run_equivalence(artifact, mode, graphs, corpus_params.to_dict(), seed)


def formula_sweep(arch: str, mode: SemanticsMode, corpus_params: CorpusParams, seed: int = DEFAULT_SEED,
                  formulas: Optional[int] = None, max_depth: int = FORMULA_MAX_DEPTH, label: str = "") -> SweepReport:
    """
    隨機公式 × 隨機圖的等價檢查

    公式取自架構對應的片段，所有公式共用同一份語料

    Args:
        arch: recursive / tandg / global
        mode: 語義模式
        corpus_params: 語料參數
        seed: 主種子
        formulas: 公式數（缺省依架構取設定值）
        max_depth: 公式最大深度
        label: 報告名稱後綴

    Returns:
        SweepReport
    """
    count = SWEEP_FORMULAS[arch] if formulas is None else formulas
    params = FormulaParams(max_depth, corpus_params.colours, ARCH_FRAGMENTS[arch])
    graphs = corpus_params.generate(seed)
    corpus = corpus_params.to_dict()

    reports = []
    for i in range(count):
        phi = random_formula(params, derive_seed(seed, "formula", arch, i))
        artifact = compile_formula(phi, arch, corpus_params.colours)
        reports.append(run_equivalence(artifact, mode, graphs, corpus, seed))

    sweep = SweepReport(arch, mode.value, reports, len(graphs), seed, label)
    logger.info(f"{sweep.name}: {'pass' if sweep.passed else 'fail'} ({sweep.summary()})")
    return sweep
