import os
import sys

import pytest

# 添加專案根目錄到Python路徑
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from logic.parser import parse_formula  # noqa: E402
from verify.suite import FIGURE1_FORMULA  # noqa: E402
from tgraph.fixtures import (  # noqa: E402
    fixture_figure1, fixture_figure2_pair, fixture_figure4_pair, divergence_witness,
)
from verify.corpus import CorpusParams  # noqa: E402


@pytest.fixture
def figure1():
    return fixture_figure1()


@pytest.fixture
def figure1_formula():
    return parse_formula(FIGURE1_FORMULA)


@pytest.fixture
def figure2_pair():
    return fixture_figure2_pair()


@pytest.fixture
def figure4_pair():
    return fixture_figure4_pair()


@pytest.fixture
def witness():
    return divergence_witness()


@pytest.fixture
def small_corpus():
    """縮小的語料：8 張圖、至多 4 節點、4 快照"""
    return CorpusParams(max_nodes=4, max_snapshots=4, colours=2, count=8)


@pytest.fixture
def small_static_corpus(small_corpus):
    return small_corpus.with_static_edges(True)
