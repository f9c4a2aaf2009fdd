"""
精確有理數運算模組
整數資料使用 int64 陣列，出現非整數有理數時升級為持有 Fraction 的 object 陣列
=============================================================================
"""
from fractions import Fraction
from numbers import Rational

import numpy as np

def to_rational(value):
    """
    將輸入轉為 Fraction

    Args:
        value: 整數、Fraction、"p/q" 字串或有限小數

    Returns:
        Fraction: 精確值
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, np.integer):
        return Fraction(int(value))
    if isinstance(value, Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, (float, np.floating)):
        return Fraction(repr(float(value)))
    raise TypeError(f"無法轉換為有理數: {value!r}")


def format_rational(value):
    """
    有理數序列化：整數輸出為數字，其餘輸出為 "p/q" 字串

    Args:
        value: 有理數（int、np.integer 或 Fraction）

    Returns:
        int | str
    """
    fraction = to_rational(value)
    if fraction.denominator == 1:
        return int(fraction.numerator)
    return f"{fraction.numerator}/{fraction.denominator}"


def rational_array(values):
    """
    由巢狀列表建立精確陣列

    Args:
        values: 巢狀列表或陣列

    Returns:
        np.ndarray: 全為整數時為 int64，否則為 Fraction 的 object 陣列
    """
    shaped = np.array(values, dtype=object)
    flat = [to_rational(v) for v in shaped.flat]
    if all(f.denominator == 1 for f in flat):
        return np.array([int(f) for f in flat], dtype=np.int64).reshape(shaped.shape)
    return np.array(flat, dtype=object).reshape(shaped.shape)


def zeros(shape):
    """整數零陣列"""
    return np.zeros(shape, dtype=np.int64)


def tr_relu(z):
    """trReLU(x) = max(0, min(x, 1))，逐元素且保持精確"""
    return np.minimum(np.maximum(z, 0), 1)


def is_bit_array(array):
    """陣列元素是否全為0或1"""
    array = np.asarray(array)
    if array.dtype != object:
        return bool(np.all((array == 0) | (array == 1)))
    return all(v == 0 or v == 1 for v in np.asarray(array, dtype=object).flat)
