"""
子公式列舉
原子在前，其後依拓撲序；重複的子樹共用同一位置。位置一律0起算
=============================================================================
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Tuple

from logic.formula import Formula, Atom, format_formula, iter_subformulas

# 設置logger
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubformulaIndex:
    """
    子公式的正規列舉 φ_1..φ_n（此處位置 0..n-1）

    Attributes:
        formulas: 互不相同的子公式，最後一個為根公式
        m: 原子個數，位置 0..m-1 恰為原子
        children: 每個位置的子公式位置
    """

    formulas: Tuple[Formula, ...]
    m: int
    children: Tuple[Tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.formulas)

    @property
    def root(self) -> Formula:
        return self.formulas[-1]

    @cached_property
    def positions(self) -> Dict[Formula, int]:
        return {phi: i for i, phi in enumerate(self.formulas)}

    def position(self, phi: Formula) -> int:
        """子公式的位置"""
        try:
            return self.positions[phi]
        except KeyError:
            raise KeyError(f"不是子公式: {format_formula(phi)}") from None

    def parents(self, i: int) -> Tuple[int, ...]:
        """以位置 i 為直接子公式的所有位置"""
        return tuple(j for j, kids in enumerate(self.children) if i in kids)

    def labels(self):
        """各位置的文字表示"""
        return [format_formula(phi) for phi in self.formulas]

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.formulas)


def enumerate_subformulas(phi: Formula) -> SubformulaIndex:
    """
    建立子公式列舉

    原子依顏色索引排序；非原子子公式依後序遍歷的首次出現排序，
    因此每個子公式都排在所有包含它的公式之前

    Args:
        phi: 根公式

    Returns:
        SubformulaIndex
    """
    atoms = sorted({f for f in iter_subformulas(phi) if isinstance(f, Atom)}, key=lambda a: a.colour)
    ordered = list(atoms)
    seen = set(atoms)
    for f in iter_subformulas(phi):
        if f not in seen:
            seen.add(f)
            ordered.append(f)

    positions = {f: i for i, f in enumerate(ordered)}
    children = tuple(tuple(positions[c] for c in f.children()) for f in ordered)
    index = SubformulaIndex(tuple(ordered), len(atoms), children)
    logger.debug(f"子公式列舉 n={index.n}, m={index.m}: {index.labels()}")
    return index
