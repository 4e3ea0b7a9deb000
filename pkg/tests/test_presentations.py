import itertools
import random

import pytest

from autostruct import automata as fa
from autostruct.automata import Automaton
from autostruct.errors import AutostructError, FormatError, PreconditionError
from autostruct.logic import compile_formula, decide
from autostruct.orders import analyze_order
from autostruct.presentations import (
    BUILTINS,
    Presentation,
    apply_function,
    builtin,
    disjoint_union,
    encode_config,
    growth_check,
    is_functional,
    ordered_sum,
    pair_word,
    parse_tm,
    product_presentation,
    quotient,
    read_structure,
    step_config,
    tm_config_space,
    write_structure,
)
from autostruct.relations import RegularRelation, relation_from_function
from oracles import all_words, llex_least_reps, random_kernel_equivalence

BIN = ("0", "1")


def enc(n):
    return bin(n)[2:][::-1]


# -- builtins ----------------------------------------------------------------------

AXIOMS = {
    "presburger": [
        "A x. A y. A z. (Add(x,y,z) -> Add(y,x,z))",
        "A x. A y. A z. A u. A v. ((Add(x,y,u) & Add(y,z,v)) -> E w. (Add(u,z,w) & Add(x,v,w)))",
        "A x. A y. E z. Add(x,y,z)",
        "A x. A y. A u. A v. ((Add(x,y,u) & Le(x,v)) -> E w. (Add(v,y,w) & Le(u,w)))",
        "A x. A y. (Le(x,y) <-> E z. Add(x,z,y))",
        "E z. A x. Add(z,x,x)",
    ],
    "weak_div": [
        "A x. A y. (Div(x,y) -> Div(x,x))",
        "A x. A y. A z. ((Div(x,y) & Div(y,z)) -> Div(x,z))",
    ],
    "word_tree": [
        "A x. Le(x,x)",
        "A x. A y. ((Le(x,y) & Le(y,x)) -> x = y)",
        "A x. A y. A z. ((Le(x,y) & Le(y,z)) -> Le(x,z))",
        'A x. Le("", x)',
        "A x. E y. (Left(x,y) & Le(x,y) & EqL(y,y))",
        "A x. A y. A z. ((Left(x,y) & Right(x,z)) -> (EqL(y,z) & ~ y = z))",
    ],
    "rationals": [
        "A x. A y. ((Le(x,y) & ~ x = y) -> E z. (Le(x,z) & Le(z,y) & ~ z = x & ~ z = y))",
        "A x. E y. (Le(x,y) & ~ x = y)",
        "A x. E y. (Le(y,x) & ~ x = y)",
        "A x. A y. (Le(x,y) | Le(y,x))",
    ],
    "unary_order": [
        "A x. A y. (Le(x,y) | Le(y,x))",
        "A x. E y. S(x,y)",
        "A x. A y. (S(x,y) <-> (Le(x,y) & ~ x = y & A z. ((Le(x,z) & ~ z = x) -> Le(y,z))))",
        'A x. Le("", x)',
    ],
    "bomega": [
        "A x. E y. Compl(x,y)",
        "A x. A y. A z. (Join(x,y,z) -> Join(y,x,z))",
        "E z. (Zero(z) & A x. Join(z,x,x))",
    ],
    "reverse_omega": ["A x. A y. (Le(x,y) | Le(y,x))", "E x. A y. Le(y,x)", "~ E x. A y. Le(x,y)"],
    "zeta": ["A x. A y. (Le(x,y) | Le(y,x))", "A x. E y. (Le(x,y) & ~ x = y)", "A x. E y. (Le(y,x) & ~ x = y)"],
    "two_branch": ["A x. Le(\"\", x)", "E x. E y. ~ (Le(x,y) | Le(y,x))"],
    "tree_omega": ["A x. Le(\"\", x)", "A x. A y. A z. ((Le(x,y) & Le(y,z)) -> Le(x,z))"],
    "qinterleaved": [
        "A x. A y. (Le(x,y) | Le(y,x))",
        "~ E x. A y. Le(x,y)",
        "E x. E y. (Le(x,y) & ~ x = y & ~ E z. (Le(x,z) & Le(z,y) & ~ z = x & ~ z = y))",
    ],
}


def test_every_builtin_has_axioms():
    assert set(AXIOMS) | {"unary_mod", "bomega_power", "ordinal"} == set(BUILTINS)


@pytest.mark.parametrize("name", sorted(AXIOMS))
def test_builtin_self_check(name):
    p = builtin(name)
    assert fa.is_infinite(p.domain)
    for rname, rel in p.relations.items():
        outside = fa.product(rel.acceptor, p.universe(rel.arity), "minus")
        assert fa.is_empty(outside)[0], rname
    for sentence in AXIOMS[name]:
        assert decide(p, sentence), sentence


def test_presburger_add_example():
    add = builtin("presburger").relations["Add"]
    assert add.contains("01", "11", "101")
    for a, b in itertools.product(range(16), repeat=2):
        assert add.contains(enc(a), enc(b), enc(a + b))


def test_presburger_has_zero_and_no_trailing_zeros():
    p = builtin("presburger")
    assert p.in_domain("0") and p.in_domain("1") and p.in_domain("01")
    assert not p.in_domain("") and not p.in_domain("10") and not p.in_domain("00")


def test_word_tree_examples():
    p = builtin("word_tree")
    assert p.relations["Le"].contains("01", "011")
    assert not p.relations["Le"].contains("01", "001")
    assert apply_function(p, "Left", ["01"]) == "010"
    assert apply_function(p, "Right", ["01"]) == "011"


def test_weak_div_examples():
    div = builtin("weak_div").relations["Div"]
    for a in range(1, 20):
        for b in range(1, 20):
            power = a & (a - 1) == 0
            assert div.contains(enc(a), enc(b)) == (power and b % a == 0), (a, b)


def test_unary_mod_cong():
    p = builtin("unary_mod(3)")
    for x, y in itertools.product(["1" * k for k in range(7)], repeat=2):
        assert p.relations["Cong"].contains(x, y) == ((len(x) - len(y)) % 3 == 0)


def test_builtin_errors():
    with pytest.raises(AutostructError, match="unknown builtin"):
        builtin("nonsense")
    with pytest.raises(AutostructError, match="leading coefficient"):
        builtin("ordinal(1,0)")
    with pytest.raises(AutostructError):
        builtin("ordinal(-1)")


def test_builtin_name_forms_agree():
    assert builtin("ordinal(3,2)").relations["Le"] == builtin("ordinal", 3, 2).relations["Le"]
    assert builtin("ordinal([3, 2])").relations["Le"] == builtin("ordinal(3,2)").relations["Le"]


def test_finite_ordinal_has_n_elements():
    for n in range(1, 5):
        assert builtin("ordinal", n).domain_size() == n


# -- products and unions ---------------------------------------------------------------


def test_product_of_unary_orders_is_componentwise():
    u = builtin("unary_order").restrict(["Le"])
    pp = product_presentation(u, u)
    le = pp.relations["Le"]
    ones = ["1" * k for k in range(4)]
    pairs = [pair_word(u.base, u.base, x, y) for x in ones for y in ones]
    assert all(pp.in_domain(w) for w in pairs)
    for (a, b), (c, d) in itertools.product(itertools.product(range(4), repeat=2), repeat=2):
        x = pair_word(u.base, u.base, ones[a], ones[b])
        y = pair_word(u.base, u.base, ones[c], ones[d])
        assert le.contains(x, y) == (a <= c and b <= d)
    assert not decide(pp, "A x. A y. (Le(x,y) | Le(y,x))")


def one_point(signature):
    dom = Automaton.from_words(BIN, [""])
    rels = {name: RegularRelation.from_tuples(BIN, k, [("",) * k]) for name, k in signature}
    return Presentation(BIN, dom, rels, name="1")


def test_product_with_one_point_structure():
    u = builtin("unary_order")
    pp = product_presentation(u, one_point(u.signature))
    for name, k in u.signature:
        for t in itertools.product(["", "1", "11", "111"], repeat=k):
            paired = [pair_word(u.base, BIN, x, "") for x in t]
            assert pp.relations[name].contains(*paired) == u.relations[name].contains(*t)
    for sentence in AXIOMS["unary_order"][:3]:
        assert decide(pp, sentence)
    assert analyze_order(pp.restrict(["Le"]))["cnf"] == [0, 1]


def test_product_signature_mismatch():
    with pytest.raises(PreconditionError, match="signature"):
        product_presentation(builtin("unary_order"), builtin("rationals"))


def test_disjoint_union_omega_and_three():
    p = disjoint_union(builtin("ordinal(0,1)"), builtin("ordinal(3)"))
    ta, tb = p.tags
    elements = p.elements(40)
    assert sum(1 for w in elements if w.startswith(tb)) == 3
    assert fa.is_infinite(p.domain)
    # the parts are incomparable
    assert decide(p, "E x. E y. ~ (Le(x,y) | Le(y,x))")
    for x, y in itertools.product(elements[:12], repeat=2):
        if x[0] != y[0]:
            assert not p.relations["Le"].contains(x, y)


def test_ordered_sum_is_omega_plus_three():
    p = ordered_sum(builtin("ordinal(0,1)"), builtin("ordinal(3)"))
    assert analyze_order(p)["cnf"] == [3, 1]
    q = ordered_sum(builtin("ordinal(3)"), builtin("ordinal(0,1)"))
    assert analyze_order(q)["cnf"] == [0, 1]


# -- quotients -------------------------------------------------------------------------


def kernel_relation(delta, base=BIN):
    def step(state, col):
        q1, q2 = state
        a, b = col
        return (q1 if a is None else delta[q1, a], q2 if b is None else delta[q2, b])

    return relation_from_function(base, 2, (0, 0), step, lambda s: s[0] == s[1])


def test_quotient_by_equality_is_identity():
    p = builtin("word_tree")
    q = quotient(p, compile_formula(p, "x = y").relation)
    assert fa.equivalent(q.domain, p.domain)
    for name in p.relations:
        assert q.relations[name] == p.relations[name]
    assert fa.equivalent(quotient(q, compile_formula(q, "x = y").relation).domain, q.domain)


def test_quotient_of_unary_by_parity():
    p = builtin("unary_mod(2)")
    q = quotient(p, "Cong")
    assert q.elements(10) == ["", "1"]
    assert set(q.relations["Le"].tuples(10)) == {("", ""), ("", "1"), ("1", "1")}


def test_quotient_rep_property_random():
    words = all_words(BIN, 6)
    rng = random.Random(7)
    for _ in range(5):
        delta, same = random_kernel_equivalence(rng, BIN, rng.randint(2, 4))
        p = Presentation(BIN, Automaton.universal(BIN), {"E": kernel_relation(delta)})
        q = quotient(p, "E")
        reps = [w for w in words if q.in_domain(w)]
        assert reps == llex_least_reps(words, same, BIN)[: len(reps)]
        for w in words:
            assert sum(1 for r in reps if same(w, r)) == 1


def test_quotient_rejects_non_equivalences():
    p = builtin("presburger")
    with pytest.raises(PreconditionError, match="symmetry") as info:
        quotient(p, "Le")
    assert info.value.failed == "symmetry"
    lt = compile_formula(p, "Le(x,y) & ~ x = y").relation
    with pytest.raises(PreconditionError, match="reflexivity"):
        quotient(p, lt)
    near = compile_formula(p, 'x = y | (Add(x,"1",y) | Add(y,"1",x))').relation
    with pytest.raises(PreconditionError, match="transitivity"):
        quotient(p, near)


def test_quotient_lift_versus_restrict():
    p = builtin("word_tree").restrict(["Le", "Right", "EqL"])
    restricted = quotient(p, "EqL", mode="restrict")
    lifted = quotient(p, "EqL", mode="lift")
    reps = restricted.elements(5)
    assert reps == ["", "0", "00", "000", "0000"]
    for a, b in itertools.product(range(5), repeat=2):
        x, y = "0" * a, "0" * b
        assert lifted.relations["Right"].contains(x, y) == (b == a + 1)
        assert not restricted.relations["Right"].contains(x, y)
        assert lifted.relations["Le"].contains(x, y) == (a <= b)
    with pytest.raises(PreconditionError, match="congruence for Le"):
        quotient(p, "EqL", congruence=True)


def test_quotient_mode_validation():
    with pytest.raises(ValueError):
        quotient(builtin("unary_mod(2)"), "Cong", mode="other")


# -- Turing machine configuration spaces --------------------------------------------

WRITER = """
tape: b 1
states: q h
initial: q
halting: h
trans q b -> h 1 R
"""

RIGHT_MOVER = """
# walks right over 1s, then steps back onto the last 1 and halts
tape: b 1
states: p q h
initial: p
halting: h
trans p 1 -> q 1 R
trans q 1 -> p 1 R
trans p b -> h b L
trans q b -> h b L
"""


def test_writer_machine_edge():
    tm = parse_tm(WRITER)
    p = tm_config_space(tm)
    start = encode_config(tm, "", "q", "b", "")
    halted = encode_config(tm, "1", "h", "b", "")
    assert (start, halted) == ("Ab", "1Bb")
    assert p.relations["Edge"].contains(start, halted)
    assert not decide(p, f'E y. Edge("{halted}", y)')


def test_right_mover_chain():
    tm = parse_tm(RIGHT_MOVER)
    p = tm_config_space(tm)
    chain = [encode_config(tm, "", "p", "1", "11")]
    while (nxt := step_config(tm, chain[-1])) is not None:
        chain.append(nxt)
    assert chain == ["A111", "1B11", "11A1", "111Bb", "11C1"]
    edge = p.relations["Edge"]
    for c, d in zip(chain, chain[1:]):
        assert edge.contains(c, d)
        assert compile_formula(p, f'Edge("{c}", y)').relation.tuples(3) == [(d,)]
    assert decide(p, "A x. A y. A z. ((Edge(x,y) & Edge(x,z)) -> y = z)")


def test_edge_matches_simulator_on_all_short_configs():
    tm = parse_tm(RIGHT_MOVER)
    p = tm_config_space(tm)
    configs = p.elements(400)
    checked = 0
    for c in configs:
        if len(c) > 5:
            break
        expected = step_config(tm, c)
        got = compile_formula(p, f'Edge("{c}", y)').relation.tuples(3)
        assert got == ([] if expected is None else [(expected,)])
        checked += 1
    assert checked > 100


def test_tm_format_errors():
    with pytest.raises(FormatError, match="deterministic"):
        parse_tm(WRITER + "trans q b -> q 1 L\n")
    with pytest.raises(FormatError, match="move"):
        parse_tm(WRITER.replace("h 1 R", "h 1 S"))
    with pytest.raises(FormatError, match="missing field"):
        parse_tm("tape: b 1\n")
    with pytest.raises(FormatError, match="undeclared state"):
        parse_tm(WRITER.replace("-> h", "-> r"))


# -- growth ----------------------------------------------------------------------------


@pytest.mark.parametrize("name, fname", [("unary_order", "S"), ("word_tree", "Left"), ("word_tree", "Right")])
def test_growth_bound(name, fname):
    report = growth_check(builtin(name), fname, samples=60)
    assert report.ok and report.checked == 60
    assert report.max_excess <= report.constant


def test_successor_growth_is_exactly_one():
    p = builtin("unary_order")
    for k in range(6):
        assert apply_function(p, "S", ["1" * k]) == "1" * (k + 1)
    assert growth_check(p, "S", samples=30).max_excess == 1


def test_non_functional_relation_is_rejected():
    p = builtin("presburger")
    assert not is_functional(p, "Le")
    with pytest.raises(PreconditionError, match="total function"):
        growth_check(p, "Le", samples=5)


# -- manifests -------------------------------------------------------------------------


def test_manifest_round_trip(tmp_path):
    p = builtin("presburger")
    path = write_structure(p, tmp_path)
    q = read_structure(path)
    assert q.base == p.base
    assert fa.equivalent(q.domain, p.domain)
    for name in p.relations:
        assert q.relations[name] == p.relations[name]


def test_manifest_builtin_reference():
    assert read_structure("builtin:unary_order").signature == builtin("unary_order").signature


def test_manifest_errors(tmp_path):
    path = write_structure(builtin("unary_order"), tmp_path, stem="u")
    text = path.read_text(encoding="utf-8")
    broken = tmp_path / "broken.astruct"
    broken.write_text(text.replace("domain:", "dom:"), encoding="utf-8")
    with pytest.raises(FormatError):
        read_structure(broken)
    missing = tmp_path / "missing.astruct"
    missing.write_text(text + "rel T 2 nowhere.aut\n", encoding="utf-8")
    with pytest.raises((FormatError, OSError)):
        read_structure(missing)
