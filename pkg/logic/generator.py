"""
隨機公式產生器
依片段使用對應的文法產生，再以分類器把關；不通過時重抽，超過重試上限即拋錯
=============================================================================
"""
import logging
from dataclasses import dataclass

import numpy as np

from config.settings import SAMPLING_RETRY_BUDGET
from logic.formula import Formula, Atom, Not, And, Diamond, Yesterday, Past
from logic.fragments import Fragment, in_fragment
from utils.exceptions import SamplingBudgetExhausted

# 設置logger
logger = logging.getLogger(__name__)

# 各運算子的抽樣權重，原子另計
OPERATOR_WEIGHTS = {
    'not': 2,
    'and': 3,
    'diamond': 3,
    'yesterday': 2,
    'past': 2,
}
ATOM_WEIGHT = 2


@dataclass(frozen=True)
class FormulaParams:
    """隨機公式參數"""

    max_depth: int = 5
    colours: int = 3
    fragment: Fragment = Fragment.ANY

    def __post_init__(self):
        if self.max_depth < 0 or self.colours < 1:
            raise ValueError(f"公式參數無效: {self}")


class _Grammar:
    """
    依上下文產生公式

    上下文:
        any        - 完整文法
        no_temporal - 不含 Y/P
        guarded    - 不含「當下」原子（所有原子都在 Y/P 之下）
        l1         - L1 片段
        l2         - L2 片段
    """

    def __init__(self, rng, colours):
        self.rng = rng
        self.colours = colours

    def atom(self):
        return Atom(int(self.rng.integers(1, self.colours + 1)))

    def pick(self, options):
        weights = np.array([ATOM_WEIGHT if o == 'atom' else OPERATOR_WEIGHTS.get(o, 2) for o in options], dtype=float)
        return options[int(self.rng.choice(len(options), p=weights / weights.sum()))]

    def build(self, context, depth) -> Formula:
        return getattr(self, f"_{context}")(depth)

    def _any(self, d):
        if d == 0:
            return self.atom()
        op = self.pick(['atom', 'not', 'and', 'diamond', 'yesterday', 'past'])
        return self._boolean_or_modal(op, d, 'any', temporal_context='any', diamond_context='any')

    def _no_temporal(self, d):
        if d == 0:
            return self.atom()
        op = self.pick(['atom', 'not', 'and', 'diamond'])
        return self._boolean_or_modal(op, d, 'no_temporal', diamond_context='no_temporal')

    def _guarded(self, d):
        # 深度至少為1，否則無法避開當下原子
        if d <= 1:
            return self._temporal(self.pick(['yesterday', 'past']), self.atom())
        op = self.pick(['not', 'and', 'diamond', 'yesterday', 'past'])
        return self._boolean_or_modal(op, d, 'guarded', temporal_context='l1', diamond_context='guarded')

    def _l1(self, d):
        if d == 0:
            return self.atom()
        op = self.pick(['atom', 'not', 'and', 'diamond', 'yesterday', 'past'])
        if op == 'diamond':
            inner = 'guarded' if d >= 2 and self.rng.integers(2) else 'no_temporal'
            return Diamond(self.build(inner, d - 1))
        return self._boolean_or_modal(op, d, 'l1', temporal_context='l1')

    def _l2(self, d):
        if d == 0:
            return self.atom()
        options = ['atom', 'not', 'and', 'diamond']
        if d >= 2:
            options += ['yesterday', 'past']
        op = self.pick(options)
        if op in ('yesterday', 'past'):
            return Diamond(self._temporal(op, self._l2(d - 2)))
        return self._boolean_or_modal(op, d, 'l2', diamond_context='l2')

    @staticmethod
    def _temporal(op, operand):
        return Yesterday(operand) if op == 'yesterday' else Past(operand)

    def _boolean_or_modal(self, op, d, context, temporal_context=None, diamond_context=None):
        if op == 'atom':
            return self.atom()
        if op == 'not':
            return Not(self.build(context, d - 1))
        if op == 'and':
            return And(self.build(context, d - 1), self.build(context, d - 1))
        if op == 'diamond':
            return Diamond(self.build(diamond_context, d - 1))
        return self._temporal(op, self.build(temporal_context, d - 1))


FRAGMENT_CONTEXT = {
    Fragment.ANY: 'any',
    Fragment.L1: 'l1',
    Fragment.L2: 'l2',
}


def random_formula(params: FormulaParams, seed: int, retry_budget: int = SAMPLING_RETRY_BUDGET) -> Formula:
    """
    產生隨機公式

    Args:
        params: 最大深度、顏色數與目標片段
        seed: 隨機種子
        retry_budget: 重試上限

    Returns:
        Formula: 深度不超過 max_depth，且屬於目標片段

    Raises:
        SamplingBudgetExhausted: 重試用盡
    """
    rng = np.random.default_rng(seed)
    grammar = _Grammar(rng, params.colours)
    context = FRAGMENT_CONTEXT[params.fragment]
    for _ in range(retry_budget):
        depth = int(rng.integers(0, params.max_depth + 1))
        phi = grammar.build(context, depth)
        if in_fragment(phi, params.fragment):
            return phi
    raise SamplingBudgetExhausted(f"{retry_budget} 次內未能抽到 {params.fragment.value} 公式 (seed={seed})")
