import pytest

from aspexplain import nodes
from aspexplain.aspif import parse_aspif
from aspexplain.constraints import (
    NEG_BODY,
    POS_BODY,
    classify_choice_support,
    constraint_preprocessing,
)
from aspexplain.errors import NotApplicable, UnviolableConstraint
from aspexplain.ground import reconstruct


def build(body: str):
    return reconstruct(parse_aspif("asp 1 0 0\n" + body + "0\n"))


def atom(name):
    return nodes.atom_node(name)


def neg(name):
    return nodes.neg_atom_node(name)


def tc(name, positive=True):
    return nodes.constraint_node(name, positive)


@pytest.fixture(scope="module")
def p1_ec(p1, p1_answer):
    return constraint_preprocessing(p1, p1_answer)


def test_p1_ec_keys_in_order(p1_ec):
    rendered = [k.render() for k in p1_ec]
    assert rendered == [
        "m(1)",
        "triggered_constraint(m(1))",
        "c",
        "triggered_constraint(c)",
        "1<={(m(1), n(1)), (m(2), n(2))}<=1",
        "(m(1), n(1))",
    ]


def test_p1_plain_constraint(p1_ec):
    assert p1_ec[atom("m(1)")] == [frozenset({tc("m(1)")})]
    assert p1_ec[tc("m(1)")] == [frozenset({neg("b")})]


def test_p1_choice_constraint(p1_ec, p1):
    choice_node = p1.spec_node(p1.choice_specs[0])
    assert p1_ec[atom("c")] == [frozenset({tc("c")})]
    assert p1_ec[tc("c")] == [frozenset({choice_node})]
    t = nodes.tuple_node((("m(1)", True), ("n(1)", True)))
    assert p1_ec[choice_node] == [frozenset({t})]
    assert p1_ec[t] == [frozenset({nodes.star_true_node()})]


def test_classify_neg_side_in_bounds(p1, p1_answer):
    spec = p1.choice_specs[0]
    node = classify_choice_support(p1, spec, NEG_BODY, p1_answer)
    assert node.kind == nodes.CHOICE
    assert node.render() == "1<={(m(1), n(1)), (m(2), n(2))}<=1"


def test_classify_pos_side_out_of_bounds(p1):
    spec = p1.choice_specs[0]
    A = p1.answer_from_names({"n(1)", "n(2)", "a"})
    node = classify_choice_support(p1, spec, POS_BODY, A)
    assert node.kind == nodes.NEG_CHOICE
    assert node.render() == "~(1<={(m(1), n(1)), (m(2), n(2))}<=1)"


def test_classify_not_applicable(p1, p1_answer):
    spec = p1.choice_specs[0]
    with pytest.raises(NotApplicable):
        classify_choice_support(p1, spec, POS_BODY, p1_answer)
    A = p1.answer_from_names({"n(1)", "n(2)", "a"})
    with pytest.raises(NotApplicable):
        classify_choice_support(p1, spec, NEG_BODY, A)


def test_no_constraints_empty_table():
    gp = build("1 0 1 1 0 0\n4 1 p 1 1\n")
    assert constraint_preprocessing(gp, gp.answer_from_names({"p"})) == {}


def test_two_atom_constraint():
    gp = build("1 0 1 1 0 0\n1 0 0 0 2 1 2\n4 1 p 1 1\n4 1 q 1 2\n")
    ec = constraint_preprocessing(gp, gp.answer_from_names({"p"}))
    assert ec[atom("p")] == [frozenset({tc("p")})]
    assert ec[tc("p")] == [frozenset({neg("q")})]
    assert atom("q") not in ec and neg("q") not in ec


def test_violated_constraint_raises():
    gp = build("1 0 1 1 0 0\n1 0 0 0 1 1\n4 1 p 1 1\n")
    with pytest.raises(UnviolableConstraint):
        constraint_preprocessing(gp, gp.answer_from_names({"p"}))


def test_negative_violation_literal():
    # ":- not p, q" with p false and q false: ~p holds, savior is ~q.
    gp = build("1 0 0 0 2 -1 2\n4 1 p 1 1\n4 1 q 1 2\n")
    ec = constraint_preprocessing(gp, gp.answer_from_names(set()))
    assert ec[neg("p")] == [frozenset({tc("p", positive=False)})]
    assert ec[tc("p", positive=False)] == [frozenset({neg("q")})]
    assert list(ec[tc("p", positive=False)][0])[0] == neg("q")


def test_multiple_constraints_same_violation_compose():
    # Both constraints blame p; their saviors conjoin in one entry.
    gp = build(
        "1 0 1 1 0 0\n"
        "1 0 0 0 2 1 2\n"
        "1 0 0 0 2 1 3\n"
        "4 1 p 1 1\n4 1 q 1 2\n4 1 r 1 3\n"
    )
    ec = constraint_preprocessing(gp, gp.answer_from_names({"p"}))
    assert ec[atom("p")] == [frozenset({tc("p")})]
    assert ec[tc("p")] == [frozenset({neg("q"), neg("r")})]


def test_multiple_saviors_stay_alternatives():
    gp = build(
        "1 0 1 1 0 0\n"
        "1 0 0 0 3 1 2 3\n"
        "4 1 p 1 1\n4 1 q 1 2\n4 1 r 1 3\n"
    )
    ec = constraint_preprocessing(gp, gp.answer_from_names({"p"}))
    assert ec[tc("p")] == [frozenset({neg("q")}), frozenset({neg("r")})]


def test_aux_alternatives_act_as_separate_constraints():
    # aux 3 is q or r; ":- p, aux" must be saved against both alternatives.
    gp = build(
        "1 0 1 1 0 0\n"
        "1 0 1 4 0 1 2\n"
        "1 0 1 4 0 1 3\n"
        "1 0 0 0 2 1 4\n"
        "4 1 p 1 1\n4 1 q 1 2\n4 1 r 1 3\n"
    )
    ec = constraint_preprocessing(gp, gp.answer_from_names({"p"}))
    assert ec[atom("p")] == [frozenset({tc("p")})]
    assert ec[tc("p")] == [frozenset({neg("q"), neg("r")})]


def test_coloring_edge_constraints(coloring, coloring_answer):
    ec = constraint_preprocessing(coloring, coloring_answer)
    key = atom("colored(1,red)")
    node = tc("colored(1,red)")
    assert ec[key] == [frozenset({node})]
    assert ec[node] == [
        frozenset({neg("colored(2,red)"), neg("colored(3,red)")})]


def test_coloring_bound_constraints(coloring, coloring_answer):
    ec = constraint_preprocessing(coloring, coloring_answer)
    node = tc("node(1)")
    [entry] = ec[tc("node(1)")]
    [savior] = list(entry)
    assert savior.kind == nodes.CHOICE
    assert savior.render().startswith("1<={")
    assert ec[atom("node(1)")] == [frozenset({node})]
