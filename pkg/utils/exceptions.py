"""
例外類別模組
所有錯誤皆繼承 WorkbenchError（ValueError 的子類），命令列依類別映射退出碼
=============================================================================
"""


class WorkbenchError(ValueError):
    """工作台錯誤基類"""


# =============================================================================
# 時序圖錯誤
# =============================================================================

class GraphValidationError(WorkbenchError):
    """時序圖驗證失敗"""


class EmptySequence(GraphValidationError):
    """快照序列為空"""


class MismatchedNodeSets(GraphValidationError):
    """各快照的節點數不一致"""


class MismatchedLabelWidth(GraphValidationError):
    """標籤寬度不一致"""


class NonIncreasingTimestamps(GraphValidationError):
    """時間戳未嚴格遞增"""


class NodeOutOfRange(GraphValidationError):
    """節點索引超出範圍"""


class InvalidEdge(GraphValidationError):
    """邊的端點相同或超出範圍"""


class DuplicateEdge(GraphValidationError):
    """重複的邊"""


class JsonSyntax(WorkbenchError):
    """JSON 語法錯誤"""


class SchemaViolation(WorkbenchError):
    """JSON 結構不符，path 指出出錯位置"""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


# =============================================================================
# 邏輯錯誤
# =============================================================================

class FormulaSyntaxError(WorkbenchError):
    """公式語法錯誤，position 為出錯字元位置"""

    def __init__(self, position, message):
        self.position = position
        super().__init__(f"位置 {position}: {message}")


class UnknownToken(FormulaSyntaxError):
    """無法識別的符號"""


class CheckError(WorkbenchError):
    """模型檢查前置條件不成立"""


class NonDiscreteGraph(CheckError):
    """時序圖不是離散的"""


class NonBitLabels(CheckError):
    """標籤不是0/1位元"""


class ColourIndexOutOfRange(CheckError):
    """公式使用的顏色超出標籤寬度"""


class SamplingBudgetExhausted(WorkbenchError):
    """拒絕抽樣超出重試上限"""


# =============================================================================
# 網路與編譯錯誤
# =============================================================================

class DimensionMismatch(WorkbenchError):
    """網路維度不一致"""


class UnsupportedAggregation(WorkbenchError):
    """組合運算不支援的聚合方式"""


class FragmentViolation(WorkbenchError):
    """公式不屬於所需片段，subformula 為違規的子公式"""

    def __init__(self, fragment, subformula, message=None):
        self.fragment = fragment
        self.subformula = subformula
        super().__init__(message or f"公式不屬於片段 {fragment}，違規子公式: {subformula}")


class UnsupportedCell(WorkbenchError):
    """Cell 不是單層FNN，無法轉換"""
