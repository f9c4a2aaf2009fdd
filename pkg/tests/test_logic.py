import pytest

from logic.checker import SemanticsMode, check
from logic.formula import (
    And, Atom, Diamond, Not, Past, Yesterday, colour_width, disjunction, format_formula, formula_depth,
)
from logic.fragments import (
    Fragment, in_fragment, in_fragment_L1, in_fragment_L2, require_fragment,
)
from logic.generator import FormulaParams, random_formula
from logic.parser import parse_formula
from logic.subformulas import enumerate_subformulas
from tgraph.graph import StaticGraph, new_temporal_graph
from utils.exceptions import (
    ColourIndexOutOfRange, FormulaSyntaxError, FragmentViolation, NonBitLabels, NonDiscreteGraph, UnknownToken,
)

c1, c2, c3 = Atom(1), Atom(2), Atom(3)


# =============================================================================
# 解析
# =============================================================================
@pytest.mark.parametrize("text, expected", [
    ("c1", c1),
    ("!c1 & c2", And(Not(c1), c2)),
    ("<>Y c1", Diamond(Yesterday(c1))),
    ("P c1 & c2", And(Past(c1), c2)),
    ("c1 & c2 & c3", And(And(c1, c2), c3)),
    ("c1 | c2 & c3", Not(And(Not(c1), Not(And(c2, c3))))),
    ("c1 -> c2", Not(And(c1, Not(c2)))),
    ("((c1))", c1),
])
def test_parser_precedence(text, expected):
    assert parse_formula(text) == expected


def test_equivalence_sugar_expands_to_two_implications():
    phi = parse_formula("c1 <-> c2")
    assert phi == And(Not(And(c1, Not(c2))), Not(And(c2, Not(c1))))


@pytest.mark.parametrize("text, position", [
    ("c1 &", 4),
    ("c1 c2", 3),
    ("(c1", 3),
    ("c0", 0),
])
def test_syntax_errors_report_position(text, position):
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula(text)
    assert info.value.position == position


def test_unknown_token():
    with pytest.raises(UnknownToken) as info:
        parse_formula("c1 # c2")
    assert info.value.position == 3


def test_format_reparses(figure1_formula):
    text = format_formula(figure1_formula)
    assert text == "c1 & P c2 & <>(!c1 & c2 & Y (c1 & !c2))"
    assert parse_formula(text) == figure1_formula
    assert colour_width(figure1_formula) == 2
    assert formula_depth(figure1_formula) == 6


# =============================================================================
# 子公式列舉
# =============================================================================
def test_figure1_subformula_index(figure1_formula):
    index = enumerate_subformulas(figure1_formula)
    assert index.n == 12
    assert index.m == 2
    assert index.formulas[:2] == (c1, c2)
    assert index.root == figure1_formula
    # 每個子公式排在包含它的公式之前
    for i, kids in enumerate(index.children):
        assert all(k < i for k in kids)


def test_shared_subtrees_share_a_position():
    index = enumerate_subformulas(parse_formula("<> Y c1"))
    assert (index.n, index.m) == (3, 1)
    assert index.labels() == ["c1", "Y c1", "<>Y c1"]
    index = enumerate_subformulas(parse_formula("Y c1 & !Y c1"))
    assert index.n == 4
    assert index.parents(index.position(Yesterday(c1))) == (2, 3)
    with pytest.raises(KeyError):
        index.position(c2)


# =============================================================================
# 模型檢查
# =============================================================================
def test_figure1_holds_at_v_t4(figure1, figure1_formula):
    table = check(figure1.graph, figure1_formula)
    assert table.at(figure1)
    v = figure1.node
    assert table.holds(parse_formula("P c2"), v, 3)
    assert not table.holds(parse_formula("P c2"), v, 0)
    assert table.holds(c1, v, 3)
    assert not table.root_values()[v, :3].any()


def test_yesterday_on_figure4_pair(figure4_pair):
    left, right = figure4_pair
    phi = parse_formula("Y c1")
    assert check(left.graph, phi).at(left)
    assert not check(right.graph, phi).at(right)
    # 第一個快照沒有昨天
    assert not check(left.graph, phi).holds(phi, 0, 0)


def test_figure2_witness_separates_pair(figure2_pair):
    left, right = figure2_pair
    phi = parse_formula("<>(c1 & <>Y c2)")
    assert check(left.graph, phi).at(left)
    assert not check(right.graph, phi).at(right)


def test_semantics_modes_diverge_on_witness(witness):
    phi = parse_formula("<>P c1")
    assert not check(witness.graph, phi, SemanticsMode.PRODUCT).at(witness)
    assert check(witness.graph, phi, SemanticsMode.TEMPORAL_NEIGHBOURHOOD).at(witness)


def test_modes_agree_without_temporal_diamond(figure1, figure1_formula):
    product = check(figure1.graph, figure1_formula, SemanticsMode.PRODUCT)
    temporal = check(figure1.graph, figure1_formula, SemanticsMode.TEMPORAL_NEIGHBOURHOOD)
    assert (product.values == temporal.values).all()


def test_modes_agree_on_static_edges_for_l2(small_static_corpus):
    graphs = small_static_corpus.generate(13)
    params = FormulaParams(max_depth=4, colours=2, fragment=Fragment.L2)
    for seed in range(8):
        phi = random_formula(params, seed)
        for tg in graphs:
            product = check(tg, phi, SemanticsMode.PRODUCT)
            temporal = check(tg, phi, SemanticsMode.TEMPORAL_NEIGHBOURHOOD)
            assert (product.values == temporal.values).all(), format_formula(phi)


def test_double_negation_is_transparent(small_corpus):
    graphs = small_corpus.generate(11)
    for seed in range(6):
        phi = random_formula(FormulaParams(max_depth=4, colours=2), seed)
        for tg in graphs:
            for mode in SemanticsMode:
                doubled = check(tg, Not(Not(phi)), mode).root_values()
                assert doubled.tolist() == check(tg, phi, mode).root_values().tolist(), format_formula(phi)


def test_past_unfolds_one_step(small_corpus):
    graphs = small_corpus.generate(12)
    for seed in range(6):
        phi = random_formula(FormulaParams(max_depth=3, colours=2), seed)
        # P 為嚴格過去：P φ ≡ Y(φ | P φ)；含當下的 φ | P φ 滿足 X ≡ φ | Y X
        once = disjunction(phi, Past(phi))
        for tg in graphs:
            past = check(tg, Past(phi)).root_values().tolist()
            assert past == check(tg, Yesterday(once)).root_values().tolist(), format_formula(phi)
            unfolded = check(tg, disjunction(phi, Yesterday(once))).root_values().tolist()
            assert check(tg, once).root_values().tolist() == unfolded, format_formula(phi)


def test_semantics_mode_parse():
    assert SemanticsMode.parse("temporal") is SemanticsMode.TEMPORAL_NEIGHBOURHOOD
    with pytest.raises(ValueError):
        SemanticsMode.parse("global")


def test_truth_table_json(figure4_pair):
    left, _ = figure4_pair
    data = check(left.graph, parse_formula("Y c1")).to_dict()
    assert data["subformulas"] == ["c1", "Y c1"]
    assert data["mode"] == "product"
    assert data["truth"] == [[[True, True]], [[False, True]]]


def test_check_preconditions():
    g = StaticGraph.build(1, [], [[1]])
    with pytest.raises(NonDiscreteGraph):
        check(new_temporal_graph([(g, 1), (g, 3)]), c1)
    half = StaticGraph.build(1, [], [["1/2"]])
    with pytest.raises(NonBitLabels):
        check(new_temporal_graph([(half, 1)]), c1)
    with pytest.raises(ColourIndexOutOfRange):
        check(new_temporal_graph([(g, 1)]), c2)


# =============================================================================
# 片段
# =============================================================================
@pytest.mark.parametrize("text, l1, l2", [
    ("c1 & <>c2", True, True),
    ("<>P c1", True, True),
    ("Y c1", True, False),
    ("<>(c1 & <>Y c2)", False, True),
    ("<>(P c1 & c2)", False, False),
    ("<>!Y c1", True, False),
])
def test_fragment_classifiers(text, l1, l2):
    phi = parse_formula(text)
    assert in_fragment_L1(phi) is l1
    assert in_fragment_L2(phi) is l2


def test_require_fragment_names_the_violation():
    with pytest.raises(FragmentViolation) as info:
        require_fragment(parse_formula("c2 & <>(P c1 & c2)"), Fragment.L1)
    assert info.value.subformula == parse_formula("<>(P c1 & c2)")
    with pytest.raises(FragmentViolation) as info:
        require_fragment(parse_formula("<>c1 & P c1"), Fragment.L2)
    assert info.value.subformula == Past(c1)
    require_fragment(parse_formula("P c1"), Fragment.ANY)


# =============================================================================
# 隨機公式
# =============================================================================
@pytest.mark.parametrize("fragment", list(Fragment))
def test_random_formulas_stay_in_fragment(fragment):
    params = FormulaParams(max_depth=5, colours=2, fragment=fragment)
    for seed in range(40):
        phi = random_formula(params, seed)
        assert in_fragment(phi, fragment)
        assert formula_depth(phi) <= 5
        assert colour_width(phi) <= 2


def test_random_formula_is_reproducible():
    params = FormulaParams(max_depth=4, colours=3)
    assert random_formula(params, 11) == random_formula(params, 11)


def test_formula_params_validation():
    with pytest.raises(ValueError):
        FormulaParams(colours=0)
