"""
布林閘網路
輸入為位元時輸出恰為0或1；eq/leq 閘作用於整數時間差
=============================================================================
"""
from nn.fnn import Fnn, FnnLayer, single_layer


def not_gate() -> Fnn:
    """1 - x"""
    return single_layer([[-1]], [1])


def and_gate(arity: int = 2) -> Fnn:
    """trReLU(Σx - (arity-1))"""
    return single_layer([[1] * arity], [-(arity - 1)])


def or_threshold(arity: int = 2) -> Fnn:
    """trReLU(Σx)"""
    return single_layer([[1] * arity], [0])


def eq_gate(target: int) -> Fnn:
    """
    整數 Δ 等於 target 時輸出1，否則0

    trReLU(Δ - target + 1) - trReLU(Δ - target)，以兩層實現
    """
    return Fnn((
        FnnLayer.build([[1], [1]], [1 - target, -target]),
        FnnLayer.build([[1, -1]], [0]),
    ))


def leq_gate(threshold: int) -> Fnn:
    """整數 Δ <= threshold 時輸出1：trReLU(threshold - Δ + 1)"""
    return single_layer([[-1]], [threshold + 1])
