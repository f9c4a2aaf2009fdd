"""
驗證報告
所有報告皆可輸出為字典/JSON 與文字表格；passed 為 True 表示此項通過
=============================================================================
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np
from tabulate import tabulate

from config.settings import DISCREPANCY_CAP, EXIT_OK, EXIT_VERIFICATION_FAILED, get_config_summary
from utils.helpers import format_yes_no, short_digest
from utils.rational import format_rational


def to_plain(value):
    """把 numpy 純量與 Fraction 轉為可JSON序列化的Python值"""
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_plain(value.tolist())
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, Fraction):
        return format_rational(value)
    return value


class Report:
    """報告基底：子類別提供 name、passed、to_dict 與 render"""

    name = "report"
    mandatory = True

    @property
    def passed(self) -> bool:
        raise NotImplementedError

    def to_dict(self) -> Dict[str, Any]:
        raise NotImplementedError

    def to_json(self, indent=2) -> str:
        return json.dumps(to_plain(self.to_dict()), indent=indent, ensure_ascii=False)

    def render(self) -> str:
        raise NotImplementedError

    @property
    def flagged(self) -> bool:
        """非必要且未通過：只標記，不影響退出碼"""
        return not self.mandatory and not self.passed

    def summary_row(self):
        """套件總表中的一列"""
        if self.flagged:
            status = "FLAGGED"
        else:
            status = "PASS" if self.passed or not self.mandatory else "FAIL"
        return [self.name, status, self.summary()]

    def summary(self) -> str:
        return ""


@dataclass(frozen=True)
class Discrepancy:
    graph_digest: str
    node: str
    time: int
    expected: int
    got: int

    def to_dict(self):
        return {"graph": self.graph_digest, "node": self.node, "time": self.time,
                "expected": self.expected, "got": self.got}

    def sort_key(self):
        return (self.graph_digest, self.node, self.time)


@dataclass
class EquivalenceReport(Report):
    """
    單一公式的預言機等價報告

    semantics_gap 為 True 時（全域架構、乘積語義、邊隨時間變化的語料），
    差異屬於已知的語義落差，僅標記不計為失敗
    """

    formula: str
    arch: str
    mode: str
    corpus: Dict[str, Any]
    seed: int
    checked: int = 0
    discrepancy_count: int = 0
    discrepancies: List[Discrepancy] = field(default_factory=list)
    semantics_gap: bool = False
    cap: int = DISCREPANCY_CAP

    @property
    def name(self):
        return f"equiv[{self.arch}/{self.mode}] {self.formula}"

    @property
    def mandatory(self):
        return not self.semantics_gap

    @property
    def verdict(self) -> str:
        return "pass" if self.discrepancy_count == 0 else "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def add(self, discrepancy: Discrepancy):
        self.discrepancy_count += 1
        if len(self.discrepancies) < self.cap:
            self.discrepancies.append(discrepancy)

    def finalize(self):
        self.discrepancies.sort(key=Discrepancy.sort_key)
        return self

    def summary(self):
        return f"{self.checked} checked, {self.discrepancy_count} discrepancies"

    def to_dict(self):
        return {
            "formula": self.formula,
            "arch": self.arch,
            "mode": self.mode,
            "corpus": self.corpus,
            "seed": self.seed,
            "checked": self.checked,
            "verdict": self.verdict,
            "semantics_gap": self.semantics_gap,
            "discrepancy_count": self.discrepancy_count,
            "discrepancies": [d.to_dict() for d in self.discrepancies],
        }

    def render(self):
        head = f"{self.name}: {self.verdict} ({self.summary()}, seed={self.seed})"
        if self.semantics_gap and self.discrepancy_count:
            head += "\n  已知語義落差：<> 讀取過去快照的邊，與乘積語義在邊變化的圖上不同"
        if not self.discrepancies:
            return head
        rows = [[short_digest(d.graph_digest), d.node, d.time, d.expected, d.got] for d in self.discrepancies]
        return head + "\n" + tabulate(rows, headers=["graph", "node", "time", "expected", "got"], tablefmt="grid")


@dataclass
class SweepReport(Report):
    """多個公式的等價報告彙總"""

    arch: str
    mode: str
    reports: List[EquivalenceReport]
    graphs: int
    seed: int
    label: str = ""

    @property
    def name(self):
        return f"sweep[{self.arch}/{self.mode}{'/' + self.label if self.label else ''}]"

    @property
    def failures(self) -> List[EquivalenceReport]:
        return [r for r in self.reports if r.mandatory and not r.passed]

    @property
    def gaps(self) -> List[EquivalenceReport]:
        return [r for r in self.reports if r.flagged]

    @property
    def passed(self):
        return not self.failures

    @property
    def flagged(self):
        return self.passed and bool(self.gaps)

    def summary(self):
        total = sum(r.discrepancy_count for r in self.reports if r.mandatory)
        text = f"{len(self.reports)} formulas x {self.graphs} graphs, {total} discrepancies"
        if self.gaps:
            text += f", {len(self.gaps)} formulas flagged as semantics gap"
        return text

    def to_dict(self):
        return {
            "arch": self.arch,
            "mode": self.mode,
            "label": self.label,
            "seed": self.seed,
            "formulas": len(self.reports),
            "graphs": self.graphs,
            "passed": self.passed,
            "failures": [r.to_dict() for r in self.failures],
            "semantics_gap": [r.to_dict() for r in self.gaps],
        }

    def render(self):
        lines = [f"{self.name}: {'pass' if self.passed else 'fail'} ({self.summary()}, seed={self.seed})"]
        lines.extend(r.render() for r in self.failures)
        return "\n".join(lines)


@dataclass
class CheckReport(Report):
    """單項檢查：名稱、是否通過、細節"""

    check: str
    ok: bool
    details: Dict[str, Any] = field(default_factory=dict)
    required: bool = True

    def __post_init__(self):
        self.ok = bool(self.ok)

    @property
    def name(self):
        return self.check

    @property
    def mandatory(self):
        return self.required

    @property
    def passed(self):
        return self.ok

    def summary(self):
        return ", ".join(f"{k}={v}" for k, v in self.details.items())

    def to_dict(self):
        return to_plain({"check": self.check, "passed": self.ok, "details": self.details})

    def render(self):
        return f"{self.check}: {'pass' if self.ok else 'fail'}" + (f" ({self.summary()})" if self.details else "")


@dataclass
class IndistinguishabilityReport(Report):
    """
    抽樣證據（非證明）：抽樣模型在不可區分對上的原始輸出是否相同，
    並附上預言機與編譯模型確實能區分該對的檢查
    """

    arch: str
    pair: str
    trials: int
    seed: int
    mismatches: int = 0
    mismatch_trials: List[int] = field(default_factory=list)
    separations: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials 必須 >= 1")

    @property
    def name(self):
        return f"indist[{self.arch}/{self.pair}]"

    @property
    def passed(self):
        return self.mismatches == 0 and all(entry["distinguishes"] for entry in self.separations.values())

    def summary(self):
        return f"{self.trials} trials, {self.mismatches} mismatches"

    def to_dict(self):
        return {
            "arch": self.arch,
            "pair": self.pair,
            "trials": self.trials,
            "seed": self.seed,
            "mismatches": self.mismatches,
            "mismatch_trials": self.mismatch_trials,
            "separations": self.separations,
            "evidence": "sampled, not a proof",
        }

    def render(self):
        rows = [[key, entry["formula"], entry["left"], entry["right"], format_yes_no(entry["distinguishes"])]
                for key, entry in self.separations.items()]
        table = tabulate(rows, headers=["check", "formula", "left", "right", "distinguishes"], tablefmt="grid")
        return (f"{self.name}: {'pass' if self.passed else 'fail'} "
                f"({self.summary()}, seed={self.seed}; sampled evidence, not a proof)\n{table}")


@dataclass
class ConverterReport(Report):
    """時間與圖模型轉換為遞迴模型後的差分測試"""

    trials: int
    graphs: int
    seed: int
    corpus: Dict[str, Any]
    comparisons: int = 0
    mismatches: int = 0
    examples: List[Dict[str, Any]] = field(default_factory=list)
    cap: int = DISCREPANCY_CAP

    name = "converter"

    @property
    def passed(self):
        return self.mismatches == 0

    def add(self, example: Dict[str, Any]):
        self.mismatches += 1
        if len(self.examples) < self.cap:
            self.examples.append(example)

    def summary(self):
        return f"{self.trials} models x {self.graphs} graphs, {self.comparisons} comparisons, {self.mismatches} mismatches"

    def to_dict(self):
        return {
            "trials": self.trials,
            "graphs": self.graphs,
            "seed": self.seed,
            "corpus": self.corpus,
            "comparisons": self.comparisons,
            "mismatches": self.mismatches,
            "examples": self.examples,
        }

    def render(self):
        return f"converter: {'pass' if self.passed else 'fail'} ({self.summary()}, seed={self.seed})"


@dataclass
class AuditReport(Report):
    """遞迴編譯的逐維度審計：(a) 當下值、(b) 前一快照值、(c) 較早快照累積、以及所有隱藏值皆為0/1"""

    formula: str
    graphs: int
    seed: Optional[int]
    checked: Dict[str, int] = field(default_factory=lambda: {"a": 0, "b": 0, "c": 0, "binary": 0})
    failed: Dict[str, int] = field(default_factory=lambda: {"a": 0, "b": 0, "c": 0, "binary": 0})
    examples: List[Dict[str, Any]] = field(default_factory=list)
    cap: int = DISCREPANCY_CAP

    @property
    def name(self):
        return f"dims {self.formula}"

    @property
    def passed(self):
        return not any(self.failed.values())

    def add(self, statement: str, example: Dict[str, Any]):
        self.failed[statement] += 1
        if len(self.examples) < self.cap:
            self.examples.append(dict(example, statement=statement))

    def summary(self):
        return ", ".join(f"{k}: {self.failed[k]}/{self.checked[k]}" for k in self.checked)

    def to_dict(self):
        return {
            "formula": self.formula,
            "graphs": self.graphs,
            "seed": self.seed,
            "checked": self.checked,
            "failed": self.failed,
            "examples": self.examples,
        }

    def render(self):
        rows = [[k, self.checked[k], self.failed[k]] for k in self.checked]
        return (f"{self.name}: {'pass' if self.passed else 'fail'}\n"
                + tabulate(rows, headers=["statement", "checked", "failed"], tablefmt="grid"))


@dataclass
class SuiteResult:
    """套件結果：任一必要報告失敗時退出碼為1"""

    suite: str
    seed: int
    reports: List[Report] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports if r.mandatory)

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.passed else EXIT_VERIFICATION_FAILED

    def to_dict(self):
        return to_plain({
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "config": get_config_summary(),
            "reports": [dict(r.to_dict(), name=r.name, mandatory=r.mandatory) for r in self.reports],
        })

    def to_json(self, indent=2) -> str:
        return json.dumps(to_plain(self.to_dict()), indent=indent, ensure_ascii=False)

    def render(self) -> str:
        table = tabulate([r.summary_row() for r in self.reports], headers=["check", "status", "summary"],
                         tablefmt="grid")
        details = [r.render() for r in self.reports if not r.passed]
        verdict = "PASS" if self.passed else "FAIL"
        return "\n".join([f"suite={self.suite} seed={self.seed} verdict={verdict}", table] + details)
