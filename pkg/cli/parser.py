"""
命令列參數定義
=============================================================================
"""
import argparse

from config.settings import ARCH_ALIASES, DEFAULT_SEED, SUPPORTED_SUITES, VERSION, VERSION_NAME
from tgraph.fixtures import FIXTURE_SOURCES

DEMO_NAMES = ['figure1', 'figure2', 'figure4', 'corollary1']


def build_parser() -> argparse.ArgumentParser:
    """建立含全部子命令的解析器"""
    parser = argparse.ArgumentParser(prog='main.py', description=VERSION_NAME)
    parser.add_argument('--version', action='version', version=f'%(prog)s {VERSION}')
    parser.add_argument('--seed', type=int, default=DEFAULT_SEED,
                        help=f'隨機種子 (預設: {DEFAULT_SEED})')
    parser.add_argument('--log-level', default=None,
                        help='日誌級別 DEBUG/INFO/WARNING/ERROR (預設: 配置中的 LOG_LEVEL)')
    parser.add_argument('--no-log-file', action='store_true',
                        help='不寫入日誌檔案')
    parser.add_argument('--config', action='store_true',
                        help='顯示配置摘要後結束')

    sub = parser.add_subparsers(dest='command')

    check = sub.add_parser('check', help='以模型檢查器計算公式真值')
    check.add_argument('--graph', required=True, help='時序圖JSON檔案')
    check.add_argument('--formula', required=True, help='公式字串')
    check.add_argument('--mode', choices=['product', 'temporal'], default='product',
                       help='<> 的語義 (預設: product)')
    check.add_argument('--at', metavar='NODE[,TIME]',
                       help='指向節點與時間（1起算，缺省為最後一個快照）')
    check.add_argument('--all', action='store_true', help='輸出完整真值表JSON')
    check.add_argument('--reindex', action='store_true', help='先將時間戳重新編號為 1..n')

    compile_ = sub.add_parser('compile', help='將公式編譯為時序圖神經網路')
    compile_.add_argument('--formula', required=True, help='公式字串')
    compile_.add_argument('--arch', required=True, choices=sorted(ARCH_ALIASES),
                          help='rec / tandg / glob')
    compile_.add_argument('--colours', type=int, default=None, help='顏色寬度 k (預設: 公式使用的最大顏色)')
    compile_.add_argument('-o', '--output', help='模型JSON輸出路徑（附屬檔寫在同目錄）')

    run = sub.add_parser('run', help='在時序圖上執行模型')
    run.add_argument('--model', required=True, help='模型JSON檔案')
    run.add_argument('--graph', required=True, help='時序圖JSON檔案')
    run.add_argument('--at', metavar='NODE[,TIME]', help='只輸出該位置的分類')
    run.add_argument('--trace', action='store_true', help='輸出所有層狀態的JSON')

    classify = sub.add_parser('classify', help='判斷公式所屬片段')
    classify.add_argument('--formula', required=True, help='公式字串')

    verify = sub.add_parser('verify', help='執行驗證套件')
    verify.add_argument('--suite', choices=SUPPORTED_SUITES, default='all', help='套件名稱 (預設: all)')
    verify.add_argument('--trials', type=int, default=None, help='抽樣模型數（indist、converter）')
    verify.add_argument('--formulas', type=int, default=None, help='每個架構的隨機公式數（equiv、dims）')
    verify.add_argument('--graphs', type=int, default=None, help='每次掃描的圖數（equiv、dims）')
    verify.add_argument('--seed', dest='verify_seed', type=int, default=None, help='覆寫全域種子')
    verify.add_argument('-o', '--output', help='報告JSON輸出路徑')

    demo = sub.add_parser('demo', help='重現範例')
    demo.add_argument('name', choices=DEMO_NAMES)
    demo.add_argument('--trials', type=int, default=None, help='抽樣模型數')

    fixture = sub.add_parser('fixture', help='輸出內建範例時序圖')
    fixture.add_argument('name', choices=list(FIXTURE_SOURCES))
    fixture.add_argument('-o', '--output', help='輸出路徑（缺省印到標準輸出）')

    return parser
