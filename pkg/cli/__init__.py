# cli/__init__.py
# 命令列模組初始化檔案
# argparse 子命令、退出碼對應與範例重現

from .parser import build_parser
from .commands import run_command, COMMANDS
from .demos import WorkbenchDemo
