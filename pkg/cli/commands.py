"""
子命令實作
每個命令回傳退出碼；函式庫例外在 run_command 統一轉換為退出碼
=============================================================================
"""
import json
import logging
from typing import Callable, Dict, Optional, Tuple

from tabulate import tabulate

from cli.demos import WorkbenchDemo
from compiler import compile_formula, write_artifact
from config.settings import (
    ARCH_ALIASES, EXIT_OK, EXIT_INPUT_ERROR, EXIT_FRAGMENT_VIOLATION, SWEEP_FORMULAS, SWEEP_GRAPHS,
)
from logic.checker import SemanticsMode, check
from logic.formula import format_formula
from logic.fragments import in_fragment_L1, in_fragment_L2
from logic.parser import parse_formula
from tgnn.runtime import TgnnRun, classify, run_model
from tgnn.serialization import parse_model
from tgraph.fixtures import fixture
from tgraph.graph import PointedTemporalGraph, TemporalGraph, reindex_discrete
from tgraph.serialization import parse_json, serialize_json, to_dict
from utils.exceptions import FragmentViolation, WorkbenchError
from utils.helpers import format_truth, format_yes_no, read_text_file, write_json_file
from utils.rational import format_rational
from verify.suite import run_suite

# 設置logger
logger = logging.getLogger(__name__)


def load_graph(path) -> TemporalGraph:
    return parse_json(read_text_file(path))


def parse_position(tg: TemporalGraph, text: str) -> PointedTemporalGraph:
    """
    解析 NODE[,TIME]

    TIME 為1起算的快照位置，缺省指向最後一個快照

    Raises:
        NodeOutOfRange: 節點名稱未知或時間超出範圍
    """
    name, _, time = text.partition(',')
    node = tg.node_index(name.strip())
    if not time.strip():
        return PointedTemporalGraph(tg, node)
    try:
        position = int(time)
    except ValueError:
        raise WorkbenchError(f"時間必須是整數: {time}") from None
    return PointedTemporalGraph(tg, node, position - 1)


def _value(x):
    return x if isinstance(x, float) else format_rational(x)


def trace_to_dict(run: TgnnRun, tg: TemporalGraph) -> Dict:
    """執行軌跡轉為JSON結構：layers[t][層][節點] 為狀態向量"""
    def states(trace):
        return [[[[_value(x) for x in row] for row in H] for H in per_time] for per_time in trace]

    data = {
        "arch": run.arch,
        "nodes": list(tg.node_names),
        "layers": states(run.layers),
        "outputs": [[_value(x) for x in row] for row in run.outputs],
    }
    for name, trace in run.auxiliary.items():
        data[name] = states(trace)
    return data


# =============================================================================
# 子命令
# =============================================================================
def cmd_check(args) -> int:
    tg = load_graph(args.graph)
    if args.reindex:
        tg = reindex_discrete(tg)
    phi = parse_formula(args.formula)
    table = check(tg, phi, SemanticsMode.parse(args.mode))

    if args.all:
        print(table.to_json(indent=2))
        return EXIT_OK
    if args.at:
        print(format_truth(table.at(parse_position(tg, args.at))))
        return EXIT_OK

    rows = [[tg.node_name(v)] + [format_truth(x) for x in table.root_values()[v]] for v in range(tg.node_count)]
    headers = ["node"] + [f"t{i + 1}" for i in range(tg.length)]
    print(tabulate(rows, headers=headers, tablefmt="grid"))
    return EXIT_OK


def cmd_compile(args) -> int:
    phi = parse_formula(args.formula)
    artifact = compile_formula(phi, ARCH_ALIASES[args.arch], args.colours)
    print(tabulate(artifact.summary_rows(), headers=["field", "value"], tablefmt="grid"))
    if args.output:
        side = write_artifact(artifact, args.output)
        print(f"model: {args.output}")
        print(f"sidecar: {side}")
    return EXIT_OK


def cmd_run(args) -> int:
    model = parse_model(read_text_file(args.model))
    tg = load_graph(args.graph)
    run = run_model(model, tg)

    if args.trace:
        print(json.dumps(trace_to_dict(run, tg), ensure_ascii=False))
        return EXIT_OK
    if args.at:
        print(run.classify_at(parse_position(tg, args.at)))
        return EXIT_OK

    rows = [[tg.node_name(v)] + [classify(x) for x in run.outputs[v]] for v in range(tg.node_count)]
    headers = ["node"] + [f"t{i + 1}" for i in range(tg.length)]
    print(tabulate(rows, headers=headers, tablefmt="grid"))
    return EXIT_OK


def cmd_classify(args) -> int:
    phi = parse_formula(args.formula)
    print(f"L1: {format_yes_no(in_fragment_L1(phi))}, L2: {format_yes_no(in_fragment_L2(phi))}")
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = args.seed if args.verify_seed is None else args.verify_seed
    formulas = None if args.formulas is None else {arch: args.formulas for arch in SWEEP_FORMULAS}
    graphs = SWEEP_GRAPHS if args.graphs is None else args.graphs
    result = run_suite(args.suite, args.trials, seed, formulas, graphs)
    print(result.render())
    if args.output:
        write_json_file(args.output, result.to_dict())
    return result.exit_code


def cmd_fixture(args) -> int:
    tg = fixture(args.name).graph
    if args.output:
        write_json_file(args.output, to_dict(tg))
    else:
        print(serialize_json(tg, indent=2))
    return EXIT_OK


def cmd_demo(args) -> int:
    return WorkbenchDemo(args.seed, args.trials).run(args.name)


COMMANDS: Dict[str, Callable] = {
    'check': cmd_check,
    'compile': cmd_compile,
    'run': cmd_run,
    'classify': cmd_classify,
    'verify': cmd_verify,
    'demo': cmd_demo,
    'fixture': cmd_fixture,
}


def error_exit_code(error: Exception) -> Optional[Tuple[int, str]]:
    """例外對應的 (退出碼, 訊息)；非預期例外回傳 None"""
    if isinstance(error, FragmentViolation):
        return EXIT_FRAGMENT_VIOLATION, f"{error}\nviolating subformula: {format_formula(error.subformula)}"
    if isinstance(error, (WorkbenchError, OSError)):
        return EXIT_INPUT_ERROR, str(error)
    return None


def run_command(args) -> int:
    """執行子命令並將函式庫例外轉換為退出碼"""
    try:
        return COMMANDS[args.command](args)
    except Exception as e:
        mapped = error_exit_code(e)
        if mapped is None:
            raise
        code, message = mapped
        logger.error(f"{args.command} 失敗: {type(e).__name__}: {e}")
        print(f"error: {message}")
        return code
