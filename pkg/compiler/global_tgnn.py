"""
L2 公式 -> 全域架構
狀態寬 n，每個非原子子公式占一層；<> 層以時間差過濾訊息：
    <>Y χ  只收 Δ = -1 的鄰居訊息（讀 χ）
    <>P χ  只收 Δ <= -1 的鄰居訊息（讀 χ）
    <>ψ    只收 Δ = 0 的鄰居訊息（讀 ψ）
單獨的 Y/P 子公式不計算（L2 保證它們只被外層 <> 讀取）
=============================================================================
"""
import logging
from typing import Optional

from compiler.artifact import CompilationArtifact, DEVIATION_INPUT_LAYOUT
from compiler.layers import LayerBuilder, boolean_row
from compiler.recursive import resolve_colours, atom_layout_rows, root_output
from logic.formula import Formula, Not, And, Diamond, Yesterday, Past, TEMPORAL
from logic.fragments import Fragment, require_fragment
from logic.subformulas import SubformulaIndex, enumerate_subformulas
from nn.fnn import Fnn
from nn.gadgets import eq_gate, leq_gate
from nn.mpnn import Mpnn, MpnnLayer, SumMsg
from nn.time2vec import affine_encoder
from tgnn.models import GlobalTgnn

# 設置logger
logger = logging.getLogger(__name__)

TIME_WIDTH = 1


def zero_msg(state_width: int) -> SumMsg:
    """不傳任何訊息"""
    return SumMsg(LayerBuilder(1, state_width + TIME_WIDTH).fnn())


def filtered_msg(state_width: int, source: int, target: int, cumulative: bool) -> SumMsg:
    """
    msg = x_source ∧ gate(Δ)

    gate 為 leq_gate(target) 或 eq_gate(target)；第一層並排放入 x_source 與閘的第一層，
    第二層做合取（兩層閘的第二層在 Δ 為整數時不會被截斷，可直接併入）
    """
    gate = leq_gate(target) if cumulative else eq_gate(target)
    head = gate.layers[0]
    first = LayerBuilder(1 + head.out_width, state_width + TIME_WIDTH)
    first.state(0, source)
    for r in range(head.out_width):
        first.state(1 + r, state_width, int(head.W[r, 0]))
        first.bias(1 + r, int(head.b[r]))

    second = LayerBuilder(1, 1 + head.out_width)
    second.state(0, 0)
    if gate.depth == 1:
        second.state(0, 1)
        second.bias(0, -1)
    else:
        tail = gate.layers[1]
        for r in range(head.out_width):
            second.state(0, 1 + r, int(tail.W[0, r]))
        second.bias(0, int(tail.b[0]) - 1)
    return SumMsg(Fnn((first.layer(), second.layer())))


def diamond_filter(f: Diamond, index: SubformulaIndex):
    """(讀取的子公式位置, 目標時間差, 是否為 <= 過濾)"""
    operand = f.operand
    if isinstance(operand, Yesterday):
        return index.position(operand.operand), -1, False
    if isinstance(operand, Past):
        return index.position(operand.operand), -1, True
    return index.position(operand), 0, False


def subformula_layer(index: SubformulaIndex, i: int) -> MpnnLayer:
    """只更新第 i 列，其餘列原樣通過"""
    n = index.n
    f = index.formulas[i]
    builder = LayerBuilder(n, n, 1)
    builder.copy_rows(j for j in range(n) if j != i)

    if isinstance(f, TEMPORAL):
        builder.state(i, i)
        return builder.mpnn_layer(zero_msg(n))
    if isinstance(f, (Not, And)):
        boolean_row(builder, i, f, index.children[i])
        return builder.mpnn_layer(zero_msg(n))
    if isinstance(f, Diamond):
        source, target, cumulative = diamond_filter(f, index)
        builder.agg(i, 0)
        return builder.mpnn_layer(filtered_msg(n, source, target, cumulative))
    raise TypeError(f"未知公式節點: {f!r}")


def compile_global(phi: Formula, colours: Optional[int] = None) -> CompilationArtifact:
    """
    編譯為全域架構

    目標圖必須是離散的，時間差才會是整數

    Args:
        phi: L2 公式
        colours: 顏色寬度 k

    Returns:
        CompilationArtifact

    Raises:
        FragmentViolation: 公式不屬於 L2
        ColourIndexOutOfRange: 原子顏色超出 k
    """
    require_fragment(phi, Fragment.L2)
    k = resolve_colours(phi, colours)
    index = enumerate_subformulas(phi)
    n, m = index.n, index.m

    layout = LayerBuilder(n, k, 1)
    atom_layout_rows(layout, index)
    layers = [layout.mpnn_layer(zero_msg(k))]
    layers.extend(subformula_layer(index, i) for i in range(m, n))

    model = GlobalTgnn(Mpnn(tuple(layers)), affine_encoder(), root_output(n, n))

    bare = {i for i, f in enumerate(index.formulas) if isinstance(f, TEMPORAL)}
    dimension_map = {i: {"current": None if i in bare else i, "yesterday": None, "past": None}
                     for i in range(n)}
    layer_map = {i: {"component": "mpnn", "layer": 1 if i < m else i - m + 2} for i in range(n)}
    structure = {
        "layers": len(layers),
        "state_width": n,
        "time_width": TIME_WIDTH,
        "identity_layers": len(bare),
    }
    logger.info(f"全域編譯完成: n={n}, m={m}, {len(layers)} 層")
    return CompilationArtifact("global", model, index, k, dimension_map, layer_map,
                               (DEVIATION_INPUT_LAYOUT,), structure)
