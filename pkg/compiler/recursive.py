"""
公式 -> 遞迴架構
工作版面寬 3n：維度 i 為 φ_i 當下真值，n+i 為前一快照真值，2n+i 為「某個較早快照成立」
=============================================================================
"""
import logging
from typing import Optional

from compiler.artifact import CompilationArtifact, RECURSIVE_DEVIATIONS
from compiler.layers import LayerBuilder, boolean_row
from logic.formula import Formula, Atom, Not, And, Diamond, Yesterday, Past, colour_width
from logic.subformulas import SubformulaIndex, enumerate_subformulas
from nn.fnn import single_layer
from nn.mpnn import Mpnn, MpnnLayer
from tgnn.models import RecursiveTgnn
from utils.exceptions import ColourIndexOutOfRange

# 設置logger
logger = logging.getLogger(__name__)


def resolve_colours(phi: Formula, colours: Optional[int]) -> int:
    """缺省時取公式使用的最大顏色；顯式給定時必須涵蓋所有原子"""
    used = colour_width(phi)
    if colours is None:
        return used
    if used > colours:
        raise ColourIndexOutOfRange(f"公式使用 c{used}，但顏色寬度只有 {colours}")
    return colours


def atom_layout_rows(builder: LayerBuilder, index: SubformulaIndex):
    """原子列 j 複製顏色 c_j 所在的標籤欄"""
    for j in range(index.m):
        builder.state(j, index.formulas[j].colour - 1)


def construction_layer(index: SubformulaIndex) -> MpnnLayer:
    """comb(x, y) = trReLU(Cx + Ay + b)，輸入輸出皆為 3n 寬"""
    n = index.n
    builder = LayerBuilder(3 * n, 3 * n, 3 * n)
    for i, f in enumerate(index.formulas):
        kids = index.children[i]
        if isinstance(f, Atom):
            builder.state(i, i)
        elif isinstance(f, (Not, And)):
            boolean_row(builder, i, f, kids)
        elif isinstance(f, Diamond):
            builder.agg(i, kids[0])
        elif isinstance(f, Yesterday):
            builder.state(i, n + kids[0])
        elif isinstance(f, Past):
            builder.state(i, 2 * n + kids[0])
    builder.copy_rows(range(n, 3 * n))
    return builder.mpnn_layer()


def shift_layer(n: int) -> MpnnLayer:
    """輸出 2n：前 n 列為當下真值，後 n 列為 trReLU(x_j + x_{n+j} + x_{2n+j})"""
    builder = LayerBuilder(2 * n, 3 * n, 3 * n)
    for j in range(n):
        builder.state(j, j)
        builder.state(n + j, j)
        builder.state(n + j, n + j)
        builder.state(n + j, 2 * n + j)
    return builder.mpnn_layer()


def root_output(n: int, width: int):
    """out(x) = trReLU(x_n)，即根公式的當下真值"""
    row = [0] * width
    row[n - 1] = 1
    return single_layer([row], [0])


def compile_recursive(phi: Formula, colours: Optional[int] = None) -> CompilationArtifact:
    """
    編譯為遞迴架構

    層次: 版面層 (k+2n -> 3n)、n-m 個相同的構造層、位移層 (3n -> 2n)

    Args:
        phi: 公式
        colours: 顏色寬度 k，缺省為公式使用的最大顏色

    Returns:
        CompilationArtifact

    Raises:
        ColourIndexOutOfRange: 原子顏色超出 k
    """
    k = resolve_colours(phi, colours)
    index = enumerate_subformulas(phi)
    n, m = index.n, index.m

    layout = LayerBuilder(3 * n, k + 2 * n, k + 2 * n)
    atom_layout_rows(layout, index)
    for j in range(2 * n):
        layout.state(n + j, k + j)

    construction = [construction_layer(index) for _ in range(n - m)]
    mpnn = Mpnn((layout.mpnn_layer(),) + tuple(construction) + (shift_layer(n),))
    model = RecursiveTgnn(mpnn, root_output(n, 2 * n))

    dimension_map = {i: {"current": i, "yesterday": n + i, "past": 2 * n + i} for i in range(n)}
    layer_map = {i: {"component": "mpnn", "layer": 1 if i < m else i - m + 2} for i in range(n)}
    structure = {
        "layout_layers": 1,
        "construction_layers": n - m,
        "shift_layers": 1,
        "input_width": k + 2 * n,
        "carried_width": 2 * n,
        "working_width": 3 * n,
        "shift_width": 2 * n,
        "single_layer_comb": mpnn.is_single_layer_comb(),
    }
    logger.info(f"遞迴編譯完成: n={n}, m={m}, 構造層 {n - m}, 工作寬度 {3 * n}")
    return CompilationArtifact("recursive", model, index, k, dimension_map, layer_map,
                               RECURSIVE_DEVIATIONS, structure)
