"""
time2vec 時間編碼
槽0為仿射 w_0·Δ + b_0，其餘槽為 sin(w_j·Δ + b_j)
=============================================================================
"""
from dataclasses import dataclass

import numpy as np

from utils.rational import rational_array


@dataclass(frozen=True, eq=False)
class Time2Vec:
    w: np.ndarray
    b: np.ndarray

    @classmethod
    def build(cls, w, b) -> "Time2Vec":
        if len(w) != len(b) or not len(w):
            raise ValueError(f"time2vec 權重與偏置長度不一致或為空: {len(w)} / {len(b)}")
        return cls(rational_array(list(w)), rational_array(list(b)))

    @property
    def width(self) -> int:
        return len(self.w)


def affine_encoder() -> Time2Vec:
    """編譯器使用的編碼器：單一仿射槽，w_0=1、b_0=0"""
    return Time2Vec.build([1], [0])


def encode_many(enc: Time2Vec, deltas: np.ndarray) -> np.ndarray:
    """
    批次編碼

    Args:
        enc: 編碼器
        deltas: 時間差陣列，形狀 (K,)

    Returns:
        np.ndarray: 形狀 (K, width)；只有週期槽會是浮點數
    """
    z = np.outer(deltas, enc.w) + enc.b
    if enc.width == 1:
        return z
    encoded = z.astype(object)
    encoded[:, 1:] = np.sin(z[:, 1:].astype(object).astype(float))
    return encoded


def time2vec(enc: Time2Vec, delta) -> np.ndarray:
    """單一時間差的編碼"""
    return encode_many(enc, rational_array([delta]))[0]
