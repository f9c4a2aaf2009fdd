"""
不可區分性抽樣
對一整類架構的不可能性結果只能以抽樣佐證：抽樣模型在不可區分對上的原始輸出必須完全相同；
同時確認預言機與其他架構的編譯模型確實能區分該對
=============================================================================
"""
import logging
from typing import Dict, Optional, Tuple

import numpy as np

from compiler import compile_formula
from config.settings import BATTERY_TRIALS, DEFAULT_SEED
from logic.checker import check
from logic.parser import parse_formula
from tgnn.runtime import classify, run_model
from tgnn.sampler import SamplerDims, sample_model
from tgraph.fixtures import fixture_figure2_pair, fixture_figure4_pair
from tgraph.graph import PointedTemporalGraph
from utils.helpers import derive_seed, format_truth
from verify.reports import CheckReport, IndistinguishabilityReport

# 設置logger
logger = logging.getLogger(__name__)

# 架構 -> (範例對名稱, 見證公式, 需要區分該對的編譯架構)
BATTERY_CASES = {
    'tandg': ("figure2", "<>(c1 & <>Y c2)", ("recursive", "global")),
    'global': ("figure4", "Y c1", ("recursive", "tandg")),
}

PAIRS = {
    'figure2': fixture_figure2_pair,
    'figure4': fixture_figure4_pair,
}


def same_vector(a: np.ndarray, b: np.ndarray) -> bool:
    """逐元素精確相等"""
    return a.shape == b.shape and bool(np.all(a == b))


def oracle_separation(formula: str, pair: Tuple[PointedTemporalGraph, PointedTemporalGraph]) -> Dict:
    phi = parse_formula(formula)
    left, right = (check(p.graph, phi).at(p) for p in pair)
    return {"formula": formula, "left": format_truth(left), "right": format_truth(right),
            "distinguishes": bool(left != right)}


def compiled_separation(formula: str, arch: str,
                        pair: Tuple[PointedTemporalGraph, PointedTemporalGraph]) -> Dict:
    """以某架構編譯見證公式，比較在兩個指向圖上的分類"""
    phi = parse_formula(formula)
    artifact = compile_formula(phi, arch, pair[0].graph.label_width)
    left, right = (classify(run_model(artifact.model, p.graph).output_at(p)) for p in pair)
    return {"formula": formula, "left": left, "right": right, "distinguishes": bool(left != right)}


def indistinguishability_battery(arch: str, trials: int = BATTERY_TRIALS,
                                 seed: int = DEFAULT_SEED) -> IndistinguishabilityReport:
    """
    抽樣 trials 個模型，比較在不可區分對上的最終嵌入與輸出

    Args:
        arch: tandg（圖2對）或 global（圖4對）
        trials: 抽樣模型數
        seed: 主種子

    Returns:
        IndistinguishabilityReport
    """
    if arch not in BATTERY_CASES:
        raise ValueError(f"不可區分性抽樣只支援 {', '.join(BATTERY_CASES)}，得到 {arch}")
    pair_name, witness, separating = BATTERY_CASES[arch]
    pair = PAIRS[pair_name]()
    report = IndistinguishabilityReport(arch, pair_name, trials, seed)

    a, b = pair
    dims = SamplerDims(colours=a.graph.label_width)
    for trial in range(trials):
        model = sample_model(arch, dims, derive_seed(seed, "battery", arch, trial))
        left, right = run_model(model, a.graph), run_model(model, b.graph)
        same = (same_vector(left.final_vector(a.node, a.time_index), right.final_vector(b.node, b.time_index))
                and left.output_at(a) == right.output_at(b))
        if not same:
            report.mismatches += 1
            report.mismatch_trials.append(trial)

    report.separations["oracle"] = oracle_separation(witness, pair)
    for other in separating:
        report.separations[other] = compiled_separation(witness, other, pair)

    logger.info(f"{report.name}: {report.summary()}")
    return report


def corollary_evidence(seed: int = DEFAULT_SEED, trials: int = BATTERY_TRIALS,
                       batteries: Optional[Dict[str, IndistinguishabilityReport]] = None) -> CheckReport:
    """
    兩種架構互不包含的抽樣證據

    全域架構編譯的 <>(c1 & <>Y c2) 能區分圖2對，而抽樣的時間與圖模型不能；
    時間與圖架構編譯的 Y c1 能區分圖4對，而抽樣的全域模型不能

    Args:
        seed: 主種子
        trials: 各架構抽樣數（batteries 未給時使用）
        batteries: 已執行的抽樣報告，鍵為 tandg / global

    Returns:
        CheckReport
    """
    batteries = batteries or {arch: indistinguishability_battery(arch, trials, seed) for arch in BATTERY_CASES}
    global_separates = batteries["tandg"].separations["global"]["distinguishes"]
    tandg_separates = batteries["global"].separations["tandg"]["distinguishes"]
    details = {
        "global_compiled_on_figure2": global_separates,
        "tandg_sampled_mismatches_on_figure2": batteries["tandg"].mismatches,
        "tandg_compiled_on_figure4": tandg_separates,
        "global_sampled_mismatches_on_figure4": batteries["global"].mismatches,
    }
    ok = (global_separates and tandg_separates
          and batteries["tandg"].mismatches == 0 and batteries["global"].mismatches == 0)
    return CheckReport("corollary", ok, details)
