"""
工作台配置文件
集中管理語料規模、隨機種子、抽樣網格與退出碼等所有配置參數
=============================================================================
"""
import os
import logging
from fractions import Fraction
from dotenv import load_dotenv

# =============================================================================
# 環境變量載入
# =============================================================================

# 載入環境變量
load_dotenv()

# 如果存在.env.local文件，優先使用它的設定
if os.path.exists('.env.local'):
    load_dotenv('.env.local', override=True)


def _env_int(name, default):
    """讀取整數型環境變量，缺省時使用默認值"""
    value = os.getenv(name)
    return int(value) if value not in (None, '') else default


def _env_fraction(name, default):
    """讀取有理數型環境變量，支援 "p/q" 寫法"""
    value = os.getenv(name)
    return Fraction(value) if value not in (None, '') else default


# =============================================================================
# 隨機種子
# =============================================================================

# 所有命令的默認種子，`--seed` 可覆蓋
DEFAULT_SEED = _env_int("TGL_SEED", 20240607)

# =============================================================================
# 日誌設定
# =============================================================================

LOG_DIRECTORY = os.getenv("TGL_LOG_DIR", "logs")
LOG_FILENAME = "workbench.log"
LOG_LEVEL = os.getenv("TGL_LOG_LEVEL", "INFO")

# =============================================================================
# 語料配置（等價掃描、維度審計）
# =============================================================================

CORPUS_MAX_NODES = _env_int("TGL_CORPUS_MAX_NODES", 6)
CORPUS_MAX_SNAPSHOTS = _env_int("TGL_CORPUS_MAX_SNAPSHOTS", 5)
CORPUS_COLOURS = _env_int("TGL_CORPUS_COLOURS", 3)
CORPUS_GRAPHS = _env_int("TGL_CORPUS_GRAPHS", 50)
CORPUS_EDGE_DENSITY = _env_fraction("TGL_CORPUS_EDGE_DENSITY", Fraction(1, 2))

# 隨機公式最大深度
FORMULA_MAX_DEPTH = _env_int("TGL_FORMULA_MAX_DEPTH", 5)

# 片段拒絕抽樣的重試上限
SAMPLING_RETRY_BUDGET = _env_int("TGL_SAMPLING_RETRY_BUDGET", 2000)

# 報告中保留的差異筆數上限
DISCREPANCY_CAP = _env_int("TGL_DISCREPANCY_CAP", 100)

# =============================================================================
# 驗證套件規模
# =============================================================================

# 完整套件 (verify --suite all) 的公式數與圖數
SWEEP_FORMULAS = {
    'recursive': 200,
    'tandg': 100,
    'global': 100,
}
SWEEP_GRAPHS = 20

# 不可區分性測試的抽樣模型數
BATTERY_TRIALS = _env_int("TGL_BATTERY_TRIALS", 1000)

# 轉換器差分測試
CONVERTER_TRIALS = _env_int("TGL_CONVERTER_TRIALS", 200)
CONVERTER_GRAPHS = _env_int("TGL_CONVERTER_GRAPHS", 20)

# =============================================================================
# 模型抽樣配置
# =============================================================================

# 權重抽樣網格
SAMPLER_WEIGHT_GRID = (
    Fraction(-2), Fraction(-1), Fraction(-1, 2), Fraction(0),
    Fraction(1, 2), Fraction(1), Fraction(2),
)

# 抽樣模型的默認尺寸
SAMPLER_HIDDEN_WIDTH = 3
SAMPLER_LAYERS = 2
SAMPLER_PERIODIC_SLOTS = 1

# 任意模型的二值化門檻（編譯模型輸出本身即為0或1）
CLASSIFY_THRESHOLD = Fraction(1, 2)

# =============================================================================
# 退出碼
# =============================================================================

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_FRAGMENT_VIOLATION = 3

# =============================================================================
# 驗證套件名稱
# =============================================================================

SUPPORTED_SUITES = ['all', 'equiv', 'dims', 'indist', 'converter']

# 支援的架構縮寫
ARCH_ALIASES = {
    'rec': 'recursive',
    'recursive': 'recursive',
    'tandg': 'tandg',
    'glob': 'global',
    'global': 'global',
}

# =============================================================================
# 版本信息
# =============================================================================

VERSION = "1.0.0"
VERSION_NAME = "時序圖神經網路邏輯編譯與驗證工作台"

# =============================================================================
# 驗證配置
# =============================================================================

def validate_config():
    """驗證配置完整性"""
    errors = []

    if CORPUS_MAX_NODES <= 0:
        errors.append(f"語料最大節點數無效: {CORPUS_MAX_NODES}，應該大於0")

    if CORPUS_MAX_SNAPSHOTS <= 0:
        errors.append(f"語料最大快照數無效: {CORPUS_MAX_SNAPSHOTS}，應該大於0")

    if CORPUS_COLOURS <= 0:
        errors.append(f"顏色數無效: {CORPUS_COLOURS}，應該大於0")

    if not (0 <= CORPUS_EDGE_DENSITY <= 1):
        errors.append(f"邊密度無效: {CORPUS_EDGE_DENSITY}，應該在0-1之間")

    if FORMULA_MAX_DEPTH < 0:
        errors.append(f"公式最大深度無效: {FORMULA_MAX_DEPTH}")

    if SAMPLING_RETRY_BUDGET <= 0:
        errors.append(f"抽樣重試上限無效: {SAMPLING_RETRY_BUDGET}")

    if DISCREPANCY_CAP <= 0:
        errors.append(f"差異筆數上限無效: {DISCREPANCY_CAP}")

    for name, trials in (('battery', BATTERY_TRIALS), ('converter', CONVERTER_TRIALS)):
        if trials <= 0:
            errors.append(f"{name} 抽樣次數無效: {trials}")

    # 如果有錯誤，拋出異常
    if errors:
        raise ValueError("配置驗證失敗:\n" + "\n".join(f"- {error}" for error in errors))

    return True


def get_config_summary():
    """獲取配置摘要信息"""
    return {
        "version": VERSION,
        "version_name": VERSION_NAME,
        "default_seed": DEFAULT_SEED,
        "corpus": {
            "max_nodes": CORPUS_MAX_NODES,
            "max_snapshots": CORPUS_MAX_SNAPSHOTS,
            "colours": CORPUS_COLOURS,
            "graphs": CORPUS_GRAPHS,
            "edge_density": str(CORPUS_EDGE_DENSITY),
        },
        "formula_max_depth": FORMULA_MAX_DEPTH,
        "battery_trials": BATTERY_TRIALS,
        "converter_trials": CONVERTER_TRIALS,
        "discrepancy_cap": DISCREPANCY_CAP,
    }

# =============================================================================
# 配置初始化
# =============================================================================

# 在導入時驗證配置
try:
    validate_config()
except ValueError as e:
    logging.error(f"配置驗證失敗: {e}")
    raise
