"""
時序模態邏輯公式語法樹
核心文法: c_j | !φ | φ & φ | <>φ | Y φ | P φ
析取、蘊涵與等價在解析時即展開為核心文法
=============================================================================
"""
from dataclasses import dataclass
from typing import Iterator, Tuple


class Formula:
    """公式節點基底類別；子類別皆為不可變且可雜湊"""

    def children(self) -> Tuple["Formula", ...]:
        return ()

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    """顏色原子 c_j（j 從1起算）"""
    colour: int

    def __post_init__(self):
        if self.colour < 1:
            raise ValueError(f"顏色索引必須 >= 1: {self.colour}")

    def __repr__(self):
        return f"Atom({self.colour})"


@dataclass(frozen=True, repr=False)
class Not(Formula):
    operand: Formula

    def children(self):
        return (self.operand,)

    def __repr__(self):
        return f"Not({self.operand!r})"


@dataclass(frozen=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"And({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Diamond(Formula):
    """某個鄰居滿足"""
    operand: Formula

    def children(self):
        return (self.operand,)

    def __repr__(self):
        return f"Diamond({self.operand!r})"


@dataclass(frozen=True, repr=False)
class Yesterday(Formula):
    """前一個快照滿足"""
    operand: Formula

    def children(self):
        return (self.operand,)

    def __repr__(self):
        return f"Yesterday({self.operand!r})"


@dataclass(frozen=True, repr=False)
class Past(Formula):
    """某個嚴格較早的快照滿足"""
    operand: Formula

    def children(self):
        return (self.operand,)

    def __repr__(self):
        return f"Past({self.operand!r})"


TEMPORAL = (Yesterday, Past)


# =============================================================================
# 語法糖
# =============================================================================
def disjunction(a: Formula, b: Formula) -> Formula:
    """a | b 展開為 !(!a & !b)"""
    return Not(And(Not(a), Not(b)))


def implication(a: Formula, b: Formula) -> Formula:
    """a -> b 展開為 !(a & !b)"""
    return Not(And(a, Not(b)))


def equivalence(a: Formula, b: Formula) -> Formula:
    """a <-> b 展開為 (a -> b) & (b -> a)"""
    return And(implication(a, b), implication(b, a))


# =============================================================================
# 遍歷與度量
# =============================================================================
def iter_subformulas(phi: Formula) -> Iterator[Formula]:
    """後序遍歷所有子公式出現（含重複）"""
    for child in phi.children():
        yield from iter_subformulas(child)
    yield phi


def colour_width(phi: Formula) -> int:
    """公式使用的最大顏色索引"""
    return max((f.colour for f in iter_subformulas(phi) if isinstance(f, Atom)), default=0)


def formula_depth(phi: Formula) -> int:
    """運算子巢狀深度，原子為0"""
    if isinstance(phi, Atom):
        return 0
    return 1 + max(formula_depth(child) for child in phi.children())


def contains_temporal(phi: Formula) -> bool:
    """是否含有 Y 或 P 子公式"""
    return any(isinstance(f, TEMPORAL) for f in iter_subformulas(phi))


def _wrap(phi: Formula) -> str:
    text = format_formula(phi)
    return f"({text})" if isinstance(phi, And) else text


def format_formula(phi: Formula) -> str:
    """
    輸出可重新解析的最少括號表示

    Args:
        phi: 公式

    Returns:
        str: 例如 "c1 & P c2 & <>(c1 & Y c2)"
    """
    if isinstance(phi, Atom):
        return f"c{phi.colour}"
    if isinstance(phi, Not):
        return f"!{_wrap(phi.operand)}"
    if isinstance(phi, Diamond):
        return f"<>{_wrap(phi.operand)}"
    if isinstance(phi, Yesterday):
        return f"Y {_wrap(phi.operand)}"
    if isinstance(phi, Past):
        return f"P {_wrap(phi.operand)}"
    if isinstance(phi, And):
        return f"{format_formula(phi.left)} & {_wrap(phi.right)}"
    raise TypeError(f"未知公式節點: {phi!r}")
