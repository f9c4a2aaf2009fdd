# logic/__init__.py
# 邏輯模組初始化檔案
# 公式語法樹、解析器、子公式列舉、模型檢查與片段分類

from .formula import (
    Formula, Atom, Not, And, Diamond, Yesterday, Past,
    format_formula, colour_width, formula_depth,
)
from .parser import parse_formula
from .subformulas import SubformulaIndex, enumerate_subformulas
from .checker import SemanticsMode, TruthTable, check
from .fragments import Fragment, in_fragment_L1, in_fragment_L2, in_fragment, require_fragment
from .generator import FormulaParams, random_formula
