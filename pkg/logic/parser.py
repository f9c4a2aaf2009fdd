"""
公式解析器
遞迴下降，優先序由高到低: 一元(! <> Y P) > & > | > -> > <->，二元運算子皆左結合
=============================================================================
"""
import logging
import re
from dataclasses import dataclass
from typing import List

from logic.formula import (
    Formula, Atom, Not, And, Diamond, Yesterday, Past,
    disjunction, implication, equivalence,
)
from utils.exceptions import FormulaSyntaxError, UnknownToken

# 設置logger
logger = logging.getLogger(__name__)

# 長符號須排在前面
TOKEN_PATTERN = re.compile(r"""
    (?P<space>\s+)
  | (?P<atom>c\d+)
  | (?P<iff><->)
  | (?P<implies>->)
  | (?P<diamond><>)
  | (?P<not>!)
  | (?P<and>&)
  | (?P<or>\|)
  | (?P<yesterday>Y)
  | (?P<past>P)
  | (?P<lparen>\()
  | (?P<rparen>\))
""", re.VERBOSE)

UNARY = {
    'not': Not,
    'diamond': Diamond,
    'yesterday': Yesterday,
    'past': Past,
}

# 由低到高的二元運算層級
BINARY_LEVELS = [
    ('iff', equivalence),
    ('implies', implication),
    ('or', disjunction),
    ('and', And),
]


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    """切分符號；結尾附加 end 符號"""
    tokens = []
    position = 0
    while position < len(text):
        match = TOKEN_PATTERN.match(text, position)
        if match is None:
            raise UnknownToken(position, f"無法識別的符號 {text[position]!r}")
        if match.lastgroup != 'space':
            tokens.append(Token(match.lastgroup, match.group(), position))
        position = match.end()
    tokens.append(Token('end', '', len(text)))
    return tokens


class FormulaParser:
    """公式解析器"""

    def __init__(self, text: str):
        self._tokens = tokenize(text)
        self._index = 0

    @property
    def token(self) -> Token:
        return self._tokens[self._index]

    def advance(self) -> Token:
        token = self.token
        if token.kind != 'end':
            self._index += 1
        return token

    def expect(self, kind: str, description: str) -> Token:
        if self.token.kind != kind:
            raise FormulaSyntaxError(self.token.position,
                                     f"預期 {description}，得到 {self.token.text or '結尾'!r}")
        return self.advance()

    def parse(self) -> Formula:
        phi = self.binary(0)
        self.expect('end', '結尾')
        return phi

    def binary(self, level: int) -> Formula:
        if level == len(BINARY_LEVELS):
            return self.unary()
        kind, build = BINARY_LEVELS[level]
        left = self.binary(level + 1)
        while self.token.kind == kind:
            self.advance()
            left = build(left, self.binary(level + 1))
        return left

    def unary(self) -> Formula:
        token = self.token
        if token.kind in UNARY:
            self.advance()
            return UNARY[token.kind](self.unary())
        if token.kind == 'atom':
            self.advance()
            colour = int(token.text[1:])
            if colour < 1:
                raise FormulaSyntaxError(token.position, f"顏色索引必須 >= 1: {token.text}")
            return Atom(colour)
        if token.kind == 'lparen':
            self.advance()
            phi = self.binary(0)
            self.expect('rparen', "')'")
            return phi
        raise FormulaSyntaxError(token.position, f"預期公式，得到 {token.text or '結尾'!r}")


def parse_formula(text: str) -> Formula:
    """
    解析公式文字

    Args:
        text: 例如 "c1 & P c2 & <>((!c1 & c2) & Y(c1 & !c2))"

    Returns:
        Formula: 已展開語法糖的語法樹

    Raises:
        FormulaSyntaxError: 語法錯誤（含位置）
        UnknownToken: 無法識別的符號
    """
    phi = FormulaParser(text).parse()
    logger.debug(f"解析公式: {text!r} -> {phi!r}")
    return phi
