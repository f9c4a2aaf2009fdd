"""
模型JSON序列化
{"arch": "recursive"|"tandg"|"global", "components": {...}, "delta_convention": "past_minus_current"}
=============================================================================
"""
import json
import logging

from nn.serialization import (
    fnn_to_dict, fnn_from_dict, mpnn_to_dict, mpnn_from_dict, time2vec_to_dict, time2vec_from_dict,
)
from tgnn.models import RecursiveTgnn, TandGTgnn, GlobalTgnn, DeltaConvention, TgnnModel
from utils.exceptions import JsonSyntax, SchemaViolation, DimensionMismatch

# 設置logger
logger = logging.getLogger(__name__)


def model_to_dict(model: TgnnModel):
    if isinstance(model, RecursiveTgnn):
        components = {"mpnn": mpnn_to_dict(model.mpnn), "out": fnn_to_dict(model.out)}
        convention = None
    elif isinstance(model, TandGTgnn):
        components = {
            "m1": mpnn_to_dict(model.m1),
            "m2": mpnn_to_dict(model.m2),
            "cell": fnn_to_dict(model.cell),
            "out": fnn_to_dict(model.out),
        }
        convention = None
    elif isinstance(model, GlobalTgnn):
        components = {
            "mpnn": mpnn_to_dict(model.mpnn),
            "enc": time2vec_to_dict(model.enc),
            "out": fnn_to_dict(model.out),
        }
        convention = model.delta_convention
    else:
        raise TypeError(f"未知模型類型: {type(model).__name__}")

    data = {"arch": model.arch, "components": components}
    if convention is not None:
        data["delta_convention"] = convention.value
    return data


def model_from_dict(data) -> TgnnModel:
    """
    由JSON結構建立模型

    Raises:
        SchemaViolation: 結構錯誤或寬度不變量不成立
    """
    if not isinstance(data, dict):
        raise SchemaViolation("$", "應為物件")
    arch = data.get("arch")
    components = data.get("components")
    if not isinstance(components, dict):
        raise SchemaViolation("$.components", "缺少必要欄位")

    def part(name, loader):
        if name not in components:
            raise SchemaViolation(f"$.components.{name}", "缺少必要欄位")
        return loader(components[name], f"$.components.{name}")

    try:
        if arch == "recursive":
            return RecursiveTgnn(part("mpnn", mpnn_from_dict), part("out", fnn_from_dict))
        if arch == "tandg":
            return TandGTgnn(part("m1", mpnn_from_dict), part("m2", mpnn_from_dict),
                             part("cell", fnn_from_dict), part("out", fnn_from_dict))
        if arch == "global":
            try:
                convention = DeltaConvention(data.get("delta_convention", DeltaConvention.PAST_MINUS_CURRENT.value))
            except ValueError:
                raise SchemaViolation("$.delta_convention", f"未知時間差方向: {data.get('delta_convention')!r}") from None
            return GlobalTgnn(part("mpnn", mpnn_from_dict), part("enc", time2vec_from_dict),
                              part("out", fnn_from_dict), convention)
    except DimensionMismatch as e:
        raise SchemaViolation("$.components", str(e)) from e
    raise SchemaViolation("$.arch", f"未知架構: {arch!r}")


def serialize_model(model: TgnnModel, indent=None) -> str:
    return json.dumps(model_to_dict(model), indent=indent, ensure_ascii=False)


def parse_model(text: str) -> TgnnModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise JsonSyntax(f"JSON語法錯誤: 第{e.lineno}行第{e.colno}列 {e.msg}") from e
    return model_from_dict(data)
