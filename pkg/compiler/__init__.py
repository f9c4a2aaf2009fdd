# compiler/__init__.py
# 編譯器模組初始化檔案
# 公式編譯為三種時序圖神經網路，以及時間與圖架構到遞迴架構的轉換

from .artifact import CompilationArtifact, write_artifact, sidecar_path, RECURSIVE_DEVIATIONS
from .recursive import compile_recursive
from .tandg import compile_tandg
from .global_tgnn import compile_global
from .converter import tandg_to_recursive

COMPILERS = {
    'recursive': compile_recursive,
    'tandg': compile_tandg,
    'global': compile_global,
}


def compile_formula(phi, arch, colours=None):
    """依架構名稱分派編譯"""
    if arch not in COMPILERS:
        raise ValueError(f"未知架構: {arch}")
    return COMPILERS[arch](phi, colours)
