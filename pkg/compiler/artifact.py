"""
編譯產物
模型、子公式列舉、維度對應、層對應、偏離清單與結構摘要
=============================================================================
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from logic.formula import format_formula
from logic.subformulas import SubformulaIndex
from tgnn.models import TgnnModel
from tgnn.serialization import model_to_dict
from utils.helpers import write_json_file

# 設置logger
logger = logging.getLogger(__name__)

# 遞迴編譯的偏離（相對於三塊版面的原始矩陣構造）
DEVIATION_INPUT_LAYOUT = "input_layout_layer"
DEVIATION_SHIFT_CURRENT = "shift_layer_current_column"
DEVIATION_CARRIED_IDENTITY = "carried_block_identity_rows"
DEVIATION_MULTI_LAYER_CELL = "multi_layer_cell"
DEVIATION_PAST_IN_M2 = "past_accumulator_in_m2"

RECURSIVE_DEVIATIONS = (DEVIATION_INPUT_LAYOUT, DEVIATION_SHIFT_CURRENT, DEVIATION_CARRIED_IDENTITY)


@dataclass(frozen=True, eq=False)
class CompilationArtifact:
    """
    Attributes:
        arch: recursive / tandg / global
        model: 編譯出的模型
        index: 子公式列舉（位置0起算）
        colours: 顏色寬度 k
        dimension_map: 位置 -> {"current", "yesterday", "past"} 工作版面中的維度（不存在時為 None）
        layer_map: 位置 -> {"component", "layer"}，layer 為軌跡索引（0 為輸入狀態）
        deviations: 偏離清單
        structure: 結構摘要（層數、寬度等）
    """

    arch: str
    model: TgnnModel
    index: SubformulaIndex
    colours: int
    dimension_map: Dict[int, Dict[str, Optional[int]]]
    layer_map: Dict[int, Dict[str, Any]]
    deviations: Tuple[str, ...] = ()
    structure: Dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.index.n

    @property
    def m(self) -> int:
        return self.index.m

    @property
    def formula(self):
        return self.index.root

    def sidecar(self) -> Dict[str, Any]:
        return {
            "arch": self.arch,
            "formula": format_formula(self.formula),
            "subformulas": self.index.labels(),
            "index_base": 0,
            "n": self.n,
            "m": self.m,
            "colours": self.colours,
            "dimension_map": {str(i): dims for i, dims in self.dimension_map.items()},
            "layer_map": {str(i): entry for i, entry in self.layer_map.items()},
            "deviations": list(self.deviations),
            "structure": self.structure,
        }

    def summary_rows(self):
        """CLI 摘要表格的列"""
        rows = [("arch", self.arch), ("formula", format_formula(self.formula)),
                ("n", self.n), ("m", self.m), ("colours", self.colours)]
        rows.extend((key, value) for key, value in self.structure.items())
        rows.append(("deviations", ", ".join(self.deviations) or "-"))
        return rows


def sidecar_path(model_path) -> Path:
    """model.json -> model.sidecar.json"""
    return Path(model_path).with_suffix(".sidecar.json")


def write_artifact(artifact: CompilationArtifact, model_path) -> Path:
    """寫出模型JSON與附屬說明檔，回傳附屬檔路徑"""
    write_json_file(model_path, model_to_dict(artifact.model))
    side = sidecar_path(model_path)
    write_json_file(side, artifact.sidecar())
    return side
