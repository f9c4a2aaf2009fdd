"""
片段分類器
L1: 每個 <>ψ 中，時序運算子與「當下」原子不混用
L2: 每個 Y/P 出現都是某個 <> 的直接子公式
=============================================================================
"""
import logging
from enum import Enum
from typing import Optional

from logic.formula import Formula, Atom, Diamond, TEMPORAL, contains_temporal
from utils.exceptions import FragmentViolation

# 設置logger
logger = logging.getLogger(__name__)


class Fragment(Enum):
    ANY = "any"
    L1 = "L1"
    L2 = "L2"


def has_present_atom(phi: Formula) -> bool:
    """是否有不經過 Y/P 即可到達的原子出現"""
    if isinstance(phi, Atom):
        return True
    if isinstance(phi, TEMPORAL):
        return False
    return any(has_present_atom(child) for child in phi.children())


def l1_violation(phi: Formula) -> Optional[Formula]:
    """第一個違反 L1 的 <> 子公式（後序），沒有則為 None"""
    for child in phi.children():
        found = l1_violation(child)
        if found is not None:
            return found
    if isinstance(phi, Diamond) and contains_temporal(phi.operand) and has_present_atom(phi.operand):
        return phi
    return None


def l2_violation(phi: Formula, parent: Optional[Formula] = None) -> Optional[Formula]:
    """第一個不在 <> 正下方的 Y/P 出現，沒有則為 None"""
    if isinstance(phi, TEMPORAL) and not isinstance(parent, Diamond):
        return phi
    for child in phi.children():
        found = l2_violation(child, phi)
        if found is not None:
            return found
    return None


def in_fragment_L1(phi: Formula) -> bool:
    return l1_violation(phi) is None


def in_fragment_L2(phi: Formula) -> bool:
    return l2_violation(phi) is None


def in_fragment(phi: Formula, fragment: Fragment) -> bool:
    if fragment is Fragment.L1:
        return in_fragment_L1(phi)
    if fragment is Fragment.L2:
        return in_fragment_L2(phi)
    return True


def require_fragment(phi: Formula, fragment: Fragment):
    """
    要求公式屬於片段

    Raises:
        FragmentViolation: 附上違規的子公式
    """
    violation = None
    if fragment is Fragment.L1:
        violation = l1_violation(phi)
    elif fragment is Fragment.L2:
        violation = l2_violation(phi)
    if violation is not None:
        logger.info(f"片段檢查失敗 {fragment.value}: {violation}")
        raise FragmentViolation(fragment.value, violation)
