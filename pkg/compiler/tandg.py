"""
L1 公式 -> 時間與圖架構
子公式分三類：
    第1類 不含 Y/P                  -> 由 M1 在當前帶標籤快照上計算
    第2類 所有原子都在 Y/P 之下      -> 由 M2 在當前邊與上一步 Cell 狀態上計算
    第3類 其餘（L1 中必為 ! 或 &）  -> 由 Cell 計算
Cell 輸出 2n：前 n 為各子公式當下真值，後 n 為「某個較早的快照成立」；
M2 的首層把它與前一步真值合併，成為下一步的 P 讀值
=============================================================================
"""
import logging
from enum import IntEnum
from typing import Dict, List, Optional, Tuple

from compiler.artifact import (CompilationArtifact, DEVIATION_INPUT_LAYOUT, DEVIATION_MULTI_LAYER_CELL,
                              DEVIATION_PAST_IN_M2)
from compiler.layers import LayerBuilder, boolean_row
from compiler.recursive import resolve_colours, atom_layout_rows, root_output
from logic.formula import Formula, Atom, Not, And, Diamond, Yesterday, Past, contains_temporal
from logic.fragments import Fragment, require_fragment, has_present_atom
from logic.subformulas import SubformulaIndex, enumerate_subformulas
from nn.fnn import Fnn
from nn.mpnn import Mpnn, pad_identity
from tgnn.models import TandGTgnn

# 設置logger
logger = logging.getLogger(__name__)


class Category(IntEnum):
    STATIC = 1
    TEMPORAL = 2
    MIXED = 3


def categorize(f: Formula) -> Category:
    if not contains_temporal(f):
        return Category.STATIC
    if not has_present_atom(f):
        return Category.TEMPORAL
    return Category.MIXED


def _base(index: SubformulaIndex, i: int) -> int:
    """剝去外層否定後的子公式位置"""
    while isinstance(index.formulas[i], Not):
        i = index.children[i][0]
    return i


def mixed_depths(index: SubformulaIndex, categories: List[Category]) -> Dict[int, int]:
    """
    第3類子公式在 Cell 中正確的階段數

    否定併入相鄰的閘（整數 p 上 1 - trReLU(p) = trReLU(1 - p)），只有合取增加階段
    """
    depths = {}

    def stage(i):
        return depths.get(_base(index, i), 0)

    for i in range(index.n):
        if categories[i] is not Category.MIXED:
            continue
        f = index.formulas[i]
        if isinstance(f, Not):
            depths[i] = max(stage(index.children[i][0]), 1)
        else:
            depths[i] = 1 + max(stage(c) for c in index.children[i])
    return depths


def _add(total: Dict[int, int], terms: Dict[int, int]):
    for col, value in terms.items():
        total[col] = total.get(col, 0) + value


def _linear(index: SubformulaIndex, i: int, columns) -> Tuple[Dict[int, int], int]:
    """子公式的值寫成上一階段輸出的仿射式"""
    if isinstance(index.formulas[i], Not):
        terms, bias = _linear(index, index.children[i][0], columns)
        return {col: -value for col, value in terms.items()}, 1 - bias
    return dict(columns(i)), 0


def _pre_activation(index: SubformulaIndex, i: int, columns) -> Tuple[Dict[int, int], int]:
    """第3類列的 trReLU 輸入：合取為運算元仿射式之和減1，否定取 1 - 子公式的輸入"""
    f = index.formulas[i]
    if isinstance(f, Not):
        terms, bias = _pre_activation(index, index.children[i][0], columns)
        return {col: -value for col, value in terms.items()}, 1 - bias
    if isinstance(f, And):
        terms, bias = {}, -(len(index.children[i]) - 1)
        for c in index.children[i]:
            child_terms, child_bias = _linear(index, c, columns)
            _add(terms, child_terms)
            bias += child_bias
        return terms, bias
    return dict(columns(i)), 0


def _m1(index: SubformulaIndex, categories, k: int) -> Mpnn:
    n, m = index.n, index.m
    layout = LayerBuilder(n, k, k)
    atom_layout_rows(layout, index)

    builder = LayerBuilder(n, n, n)
    for i, f in enumerate(index.formulas):
        if categories[i] is not Category.STATIC:
            continue
        kids = index.children[i]
        if isinstance(f, Atom):
            builder.state(i, i)
        elif isinstance(f, (Not, And)):
            boolean_row(builder, i, f, kids)
        elif isinstance(f, Diamond):
            builder.agg(i, kids[0])
    return Mpnn((layout.mpnn_layer(),) + tuple(builder.mpnn_layer() for _ in range(n - m)))


def _m2(index: SubformulaIndex, categories) -> Mpnn:
    n, m = index.n, index.m
    # 前一步狀態 x ‖ y -> 0 ‖ x ‖ trReLU(x + y)：過去值在此累積，Cell 不必再等第3類算完
    prefix = LayerBuilder(3 * n, 2 * n, 2 * n)
    prefix.copy_rows(range(n, 3 * n), offset=-n)
    prefix.copy_rows(range(2 * n, 3 * n), offset=-2 * n)

    builder = LayerBuilder(3 * n, 3 * n, 3 * n)
    for i, f in enumerate(index.formulas):
        if categories[i] is not Category.TEMPORAL:
            continue
        kids = index.children[i]
        if isinstance(f, Yesterday):
            builder.state(i, n + kids[0])
        elif isinstance(f, Past):
            builder.state(i, 2 * n + kids[0])
        elif isinstance(f, (Not, And)):
            boolean_row(builder, i, f, kids)
        elif isinstance(f, Diamond):
            builder.agg(i, kids[0])
    builder.copy_rows(range(n, 3 * n))

    final = LayerBuilder(2 * n, 3 * n, 3 * n)
    final.copy_rows(range(n))
    final.copy_rows(range(n, 2 * n), offset=n)

    construction = tuple(builder.mpnn_layer() for _ in range(n - m))
    return Mpnn((prefix.mpnn_layer(),) + construction + (final.mpnn_layer(),))


def _cell(index: SubformulaIndex, categories, depths: Dict[int, int]) -> Fnn:
    """
    D 層（D 為第3類所需階段數，無第3類時為1）

    輸入 3n = M1 輸出 (n) ‖ M2 輸出 (當下第2類值 n ‖ 較早快照累積 n)；
    輸出 2n = 當下真值 ‖ 累積值原樣通過
    """
    n = index.n
    depth = max(depths.values(), default=1)

    def first_columns(c):
        return {c: 1, n + c: 1}

    def stage_columns(c):
        return {c: 1}

    layers = []
    for stage in range(1, depth + 1):
        columns = first_columns if stage == 1 else stage_columns
        builder = LayerBuilder(2 * n, 3 * n if stage == 1 else 2 * n)
        for j in range(n):
            if categories[j] is Category.MIXED:
                terms, bias = _pre_activation(index, j, columns)
                for col, value in terms.items():
                    builder.state(j, col, value)
                builder.bias(j, bias)
            else:
                for col in columns(j):
                    builder.state(j, col)
            builder.state(n + j, 2 * n + j if stage == 1 else n + j)
        layers.append(builder.layer())
    return Fnn(tuple(layers))


def compile_tandg(phi: Formula, colours: Optional[int] = None) -> CompilationArtifact:
    """
    編譯為時間與圖架構

    Args:
        phi: L1 公式
        colours: 顏色寬度 k

    Returns:
        CompilationArtifact

    Raises:
        FragmentViolation: 公式不屬於 L1
        ColourIndexOutOfRange: 原子顏色超出 k
    """
    require_fragment(phi, Fragment.L1)
    k = resolve_colours(phi, colours)
    index = enumerate_subformulas(phi)
    n, m = index.n, index.m
    categories = [categorize(f) for f in index.formulas]
    depths = mixed_depths(index, categories)

    m2 = _m2(index, categories)
    m1 = pad_identity(_m1(index, categories, k), m2.depth)
    cell = _cell(index, categories, depths)
    model = TandGTgnn(m1, m2, cell, root_output(n, 2 * n))

    dimension_map = {i: {"current": i, "yesterday": n + i, "past": 2 * n + i} for i in range(n)}
    layer_map = {}
    for i, category in enumerate(categories):
        if category is Category.STATIC:
            layer_map[i] = {"component": "m1", "layer": 1 if i < m else i - m + 2}
        elif category is Category.TEMPORAL:
            layer_map[i] = {"component": "m2", "layer": i - m + 2}
        else:
            layer_map[i] = {"component": "cell", "layer": depths[i]}

    deviations = (DEVIATION_INPUT_LAYOUT, DEVIATION_PAST_IN_M2)
    if cell.depth > 1:
        deviations += (DEVIATION_MULTI_LAYER_CELL,)
    structure = {
        "m1_layers": m1.depth,
        "m2_layers": m2.depth,
        "cell_layers": cell.depth,
        "cell_in_class_f": cell.depth == 1,
        "single_layer_comb": m1.is_single_layer_comb() and m2.is_single_layer_comb(),
        "categories": {str(c.value): sum(1 for x in categories if x is c) for c in Category},
        "working_width": 3 * n,
        "state_width": 2 * n,
    }
    logger.info(f"時間與圖編譯完成: n={n}, m={m}, Cell {cell.depth} 層")
    return CompilationArtifact("tandg", model, index, k, dimension_map, layer_map, deviations, structure)
