# verify/__init__.py
# 驗證模組初始化檔案
# 預言機等價、逐維度審計、不可區分性抽樣、轉換差分與驗證套件

from .corpus import CorpusParams
from .reports import (
    Discrepancy, EquivalenceReport, SweepReport, CheckReport, IndistinguishabilityReport,
    ConverterReport, AuditReport, SuiteResult,
)
from .equivalence import equiv_sweep, run_equivalence, formula_sweep
from .audit import dimension_audit, structural_check, audit_sweep
from .battery import indistinguishability_battery, corollary_evidence
from .converter import converter_differential
from .suite import run_suite
