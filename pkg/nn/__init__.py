# nn/__init__.py
# 神經網路模組初始化檔案
# 精確前饋網路、布林閘、訊息傳遞網路與 time2vec

from .fnn import Activation, Fnn, FnnLayer, eval_fnn, identity, single_layer
from .gadgets import not_gate, and_gate, or_threshold, eq_gate, leq_gate
from .mpnn import Mpnn, MpnnLayer, Sum, SumMsg, run_mpnn, serial_compose, parallel_compose, pad_identity
from .time2vec import Time2Vec, time2vec, affine_encoder
