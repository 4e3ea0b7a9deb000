import random

import pytest

from autostruct.errors import FormulaSyntaxError
from autostruct.logic import (
    And,
    Atom,
    Const,
    Equal,
    Exists,
    ExistsInf,
    ExistsMod,
    Forall,
    Iff,
    Implies,
    Not,
    Or,
    Var,
    free_variables,
    parse_formula,
    render,
)
from autostruct.logic.syntax import rename_bound
from oracles import random_formula


def test_parse_commutativity_has_free_z():
    f = parse_formula("A x. A y. (Add(x,y,z) -> Add(y,x,z))")
    assert isinstance(f, Forall) and isinstance(f.body, Forall)
    assert isinstance(f.body.body, Implies)
    assert free_variables(f) == ("z",)


def test_parse_counting_quantifiers():
    f = parse_formula("EI y. Le(x,y)")
    assert isinstance(f, ExistsInf) and f.var == "y"
    g = parse_formula("E[2,0] z. Between(x,z,y)")
    assert isinstance(g, ExistsMod) and (g.n, g.m, g.var) == (2, 0, "z")
    assert free_variables(g) == ("x", "y")


def test_precedence():
    f = parse_formula("~ P(x) & Q(x) | R(x) -> S(x) -> T(x) <-> U(x)")
    assert isinstance(f, Iff)
    imp = f.left
    assert isinstance(imp, Implies) and isinstance(imp.right, Implies)  # right associative
    assert isinstance(imp.left, Or)
    assert isinstance(imp.left.left, And) and isinstance(imp.left.left.left, Not)


def test_quantifier_scope_is_a_unary():
    f = parse_formula("E x. P(x) & Q(x)")
    assert isinstance(f, And)
    assert free_variables(f) == ("x",)


def test_constants_and_equality():
    f = parse_formula('x = "101" & R("", y)')
    assert f.left == Equal(Var("x"), Const("101"))
    assert f.right.args == (Const(""), Var("y"))
    assert parse_formula(r'x = "a\"b"').right == Const('a"b')


def test_free_variables_first_occurrence_order():
    assert free_variables(parse_formula("R(y, x) & E y. S(z, y)")) == ("y", "x", "z")


def test_shadowed_binders_are_renamed():
    f = parse_formula("E x. (P(x) & E x. Q(x))")
    inner = f.body.right
    assert isinstance(inner, Exists) and inner.var != f.var
    assert inner.body == Atom("Q", (Var(inner.var),))


def test_bound_name_clashing_with_free_is_renamed():
    f = parse_formula("P(x) & E x. Q(x)")
    assert f.right.var != "x"
    assert free_variables(f) == ("x",)


@pytest.mark.parametrize(
    "text, column",
    [
        ("P(x) & ", 8),
        ("P(x) $ Q(x)", 6),
        ("E x P(x)", 3),
        ("P(x", 4),
        ("B x. P(x)", 1),
        ("P(x) Q(x)", 6),
    ],
)
def test_syntax_errors_report_column(text, column):
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula(text)
    assert info.value.position == column - 1
    assert f"column {column}" in str(info.value)


def test_unknown_quantifier_is_named():
    with pytest.raises(FormulaSyntaxError, match="unknown quantifier 'B'"):
        parse_formula("B x. P(x)")


@pytest.mark.parametrize("text", ["E[2,2] x. P(x)", "E[0,0] x. P(x)", "E[3,5] x. P(x)"])
def test_malformed_counting_pair(text):
    with pytest.raises(FormulaSyntaxError, match="counting quantifier"):
        parse_formula(text)


def test_exists_mod_validates_on_construction():
    with pytest.raises(FormulaSyntaxError):
        ExistsMod(2, -1, "x", Atom("P", (Var("x"),)))


def test_render_examples():
    f = parse_formula("A x. (P(x) -> E[2,1] y. ~ R(x, y))")
    assert parse_formula(render(f)) == f
    assert render(parse_formula("(a = b | c = d) & e = f")).count("(") == 1


SIG = [("P", 1), ("R", 2), ("T", 3)]


def test_render_round_trip_random():
    rng = random.Random(11)
    for _ in range(300):
        f = random_formula(rng, SIG, free=("x", "y"), depth=4, consts=("01", ""))
        assert parse_formula(render(f)) == rename_bound(f)
        assert set(free_variables(f)) <= {"x", "y"}
