"""
轉換差分測試
抽樣單層 Cell 的時間與圖模型，轉換為遞迴模型後在隨機離散圖上逐點比較原始輸出
=============================================================================
"""
import logging
from typing import Optional

from compiler.converter import tandg_to_recursive
from config.settings import CONVERTER_GRAPHS, CONVERTER_TRIALS, DEFAULT_SEED
from tgnn.runtime import classify, run_recursive, run_tandg
from tgnn.sampler import SamplerDims, sample_model
from tgraph.serialization import graph_digest
from utils.helpers import derive_seed, short_digest
from verify.corpus import CorpusParams
from verify.reports import ConverterReport

# 設置logger
logger = logging.getLogger(__name__)


def converter_differential(trials: int = CONVERTER_TRIALS, corpus_params: Optional[CorpusParams] = None,
                           seed: int = DEFAULT_SEED, dims: Optional[SamplerDims] = None) -> ConverterReport:
    """
    Args:
        trials: 抽樣模型數
        corpus_params: 語料參數，缺省為 CONVERTER_GRAPHS 張圖
        seed: 主種子
        dims: 抽樣尺寸，顏色寬度須與語料一致

    Returns:
        ConverterReport: 原始輸出不完全相同即記一次不符
    """
    corpus_params = corpus_params or CorpusParams(count=CONVERTER_GRAPHS)
    dims = dims or SamplerDims(colours=corpus_params.colours)
    graphs = corpus_params.generate(seed)
    report = ConverterReport(trials, len(graphs), seed, corpus_params.to_dict())

    for trial in range(trials):
        model = sample_model("tandg", dims, derive_seed(seed, "converter", trial))
        converted = tandg_to_recursive(model)
        for tg in graphs:
            expected = run_tandg(model, tg).outputs
            got = run_recursive(converted, tg).outputs
            for v in range(tg.node_count):
                for t in range(tg.length):
                    report.comparisons += 1
                    if expected[v, t] != got[v, t]:
                        report.add({"trial": trial, "graph": short_digest(graph_digest(tg)),
                                    "node": tg.node_name(v), "time": t + 1,
                                    "expected": str(expected[v, t]), "got": str(got[v, t]),
                                    "classify": [classify(expected[v, t]), classify(got[v, t])]})

    logger.info(f"轉換差分: {report.summary()}")
    return report
