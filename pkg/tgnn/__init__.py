# tgnn/__init__.py
# 時序圖神經網路模組初始化檔案
# 三種架構的模型、執行器、隨機抽樣與JSON序列化

from .models import RecursiveTgnn, TandGTgnn, GlobalTgnn, DeltaConvention, TgnnModel
from .runtime import TgnnRun, run_recursive, run_tandg, run_global, run_model, classify
from .sampler import SamplerDims, sample_model
from .serialization import model_to_dict, model_from_dict, serialize_model, parse_model
