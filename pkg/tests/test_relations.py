import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autostruct import automata as fa
from autostruct.automata import Automaton
from autostruct.errors import AlphabetMismatch, ArityError, SymbolError
from autostruct.presentations import builtin
from autostruct.relations import (
    PAD,
    RegularRelation,
    convolve,
    cylindrify,
    equality_relation,
    instantiate,
    intersect,
    link,
    llex_relation,
    project_exists,
    project_forall,
    rearrange,
    relation_from_function,
    track_alphabet,
    valid_convolutions,
)
from oracles import all_words, llex_key, random_dfa

BIN = ("0", "1")
SIGMA = Automaton.universal(BIN)
W4 = all_words(BIN, 4)


def members(r, words=W4):
    return {t for t in itertools.product(words, repeat=r.arity) if r.contains(*t)}


def unary(r):
    return {t[0] for t in r.tuples(10_000)}


def zero_star():
    return Automaton(BIN, 1, 0, [0], [(0, "0", 0)])


def append_one():
    """{(x, y) : y = x1}."""

    def step(q, col):
        a, b = col
        if q == "eq":
            if a is not None and a == b:
                return "eq"
            if a is None and b == "1":
                return "done"
        return None

    return relation_from_function(BIN, 2, "eq", step, lambda q: q == "done")


# -- convolution -------------------------------------------------------------------


def test_convolve_examples():
    assert convolve(["01", "1"]) == [("0", "1"), ("1", PAD)]
    assert convolve(["", ""]) == []
    cols = convolve(["a", "ab", "abc"])
    assert len(cols) == 3
    assert cols[2] == (PAD, PAD, "c") and cols[1] == (PAD, "b", "b")


def test_convolve_rejects_foreign_characters():
    with pytest.raises(SymbolError):
        convolve(["01", "2"], base=BIN)
    with pytest.raises(SymbolError):
        llex_relation(BIN).contains("0", "2")


def test_track_alphabet_layout():
    t = track_alphabet(BIN, 2)
    assert t.size == 8  # 3**2 minus the all-pad column
    assert "_|_" not in t.names
    assert t.names[0] == "0|0" and t.names[-1] == "_|1"
    assert t.decode(t.encode(("01", "1"))) == ("01", "1")


def test_track_alphabet_rejects_ambiguous_names():
    with pytest.raises(SymbolError):
        track_alphabet(("a|b", "c"), 2)
    with pytest.raises(SymbolError):
        track_alphabet(("_", "c"), 2)
    assert track_alphabet(("_", "c"), 1).names == ("_", "c")


def test_valid_convolutions_examples():
    assert fa.equivalent(valid_convolutions(track_alphabet(BIN, 1)), SIGMA)
    v = valid_convolutions(track_alphabet(BIN, 2))
    assert v.accepts(["0|1", "1|_"])
    assert not v.accepts(["0|_", "1|1"])


def test_valid_convolutions_brute_force():
    t = track_alphabet(BIN, 2)
    v = valid_convolutions(t)
    for n in range(4):
        for word in itertools.product(t.names, repeat=n):
            cols = [name.split("|") for name in word]
            ok = all(
                all(c[k] == "_" for c in cols[i:]) for k in range(2) for i, c in enumerate(cols) if c[k] == "_"
            )
            assert v.accepts(list(word)) == ok


# -- cylindrification and projection ------------------------------------------------


def test_cylindrify_examples():
    zero = RegularRelation.from_automaton(zero_star())
    cyl = cylindrify(zero, SIGMA)
    assert cyl.arity == 2
    assert members(cyl) == {(x, y) for x in W4 for y in W4 if set(x) <= {"0"}}
    assert cyl.contains("00", "1")
    assert cylindrify(zero, Automaton.empty(BIN)).is_empty()


def test_cylindrify_alphabet_mismatch():
    zero = RegularRelation.from_automaton(zero_star())
    with pytest.raises(AlphabetMismatch):
        cylindrify(zero, Automaton.universal(("a",)))


def test_project_exists_examples():
    full = project_exists(equality_relation(BIN), 2, SIGMA)
    assert fa.equivalent(full.as_language(), SIGMA)
    # witnesses are longer than x: exercises the pad-tail closure
    assert fa.equivalent(project_exists(append_one(), 2, SIGMA).as_language(), SIGMA)
    # projecting the other track: y ends in 1
    ys = project_exists(append_one(), 1, SIGMA)
    assert unary(ys) >= {w for w in W4 if w.endswith("1")}
    assert project_exists(equality_relation(BIN), 2, Automaton.empty(BIN)).is_empty()


def test_project_exists_arity_one_is_a_truth_value():
    assert project_exists(RegularRelation.from_automaton(zero_star()), 1, SIGMA) is True
    assert project_exists(RegularRelation.from_automaton(zero_star()), 1, Automaton.from_words(BIN, ["1"])) is False


def test_project_index_out_of_range():
    with pytest.raises(ArityError):
        project_exists(equality_relation(BIN), 3, SIGMA)
    with pytest.raises(ArityError):
        project_forall(equality_relation(BIN), 0, SIGMA)


def test_project_forall_examples():
    llex = llex_relation(BIN)
    total = RegularRelation(llex.tracks, fa.product(llex.acceptor, rearrange(llex, (2, 1)).acceptor, "or"))
    assert fa.equivalent(project_forall(total, 2, SIGMA).as_language(), SIGMA)
    assert project_forall(llex, 2, SIGMA).tuples(5) == [("",)]
    vacuous = project_forall(llex, 2, Automaton.empty(BIN))
    assert fa.equivalent(vacuous.as_language(), SIGMA)


def test_project_forall_brute_force():
    # x such that every y of length <= 2 ... is not expressible; use all of Σ*
    # and check ∀y (x ≤llex y or |y| < 2) against a direct characterisation
    short = Automaton.from_words(BIN, all_words(BIN, 1))
    llex = llex_relation(BIN)
    r = RegularRelation(llex.tracks, fa.product(llex.acceptor, cylindrify(RegularRelation.from_automaton(SIGMA), short).acceptor, "or"))
    got = unary(project_forall(r, 2, SIGMA))
    # y ranges over Σ*: x must be ≤ every y with |y| >= 2, so |x| <= 2 and x ≤ "00"
    expected = {x for x in all_words(BIN, 3) if llex_key(x, BIN) <= llex_key("00", BIN)}
    assert got == expected


# -- instantiation, rearrangement, linkage -------------------------------------------


def test_instantiate_examples():
    llex = llex_relation(BIN)
    assert fa.equivalent(instantiate(llex, 1, "").as_language(), SIGMA)
    assert instantiate(equality_relation(BIN), 2, "01").tuples(5) == [("01",)]
    s = builtin("unary_order").relations["S"]
    assert instantiate(s, 2, "111").tuples(5) == [("11",)]


def test_instantiate_errors():
    with pytest.raises(ArityError):
        instantiate(equality_relation(BIN), 3, "0")
    with pytest.raises(SymbolError):
        instantiate(equality_relation(BIN), 1, "2")


def test_instantiate_arity_one_is_membership():
    r = RegularRelation.from_automaton(zero_star())
    assert instantiate(r, 1, "00") is True
    assert instantiate(r, 1, "01") is False


def test_rearrange_examples():
    llex = llex_relation(BIN)
    assert rearrange(llex, (1, 2)) == llex
    swapped = rearrange(llex, (2, 1))
    pairs = [("1", "00"), ("00", "1"), ("10", "01"), ("01", "10"), ("", "0"), ("0", ""), ("11", "11"), ("0", "1"), ("1", "0"), ("010", "10")]
    for x, y in pairs:
        assert swapped.contains(x, y) == llex.contains(y, x)
    assert rearrange(swapped, (2, 1)) == llex


def test_rearrange_rejects_non_permutation():
    with pytest.raises(ArityError):
        rearrange(llex_relation(BIN), (1, 1))


def random_relation(rng, arity, n_states=3, base=BIN):
    t = track_alphabet(base, arity)
    trans, acc = random_dfa(rng, t.names, n_states, p_accept=0.5)
    a = Automaton(t.names, n_states, 0, acc, trans)
    return RegularRelation(t, intersect(fa.determinize(a), valid_convolutions(t)))


def test_link_membership_matches_definition():
    rng = random.Random(3)
    r = random_relation(rng, 3)
    s = random_relation(rng, 4)
    out = link(r, s, 2)
    assert out.arity == 5
    words = all_words(BIN, 1)
    for t in itertools.product(words, repeat=5):
        expected = r.contains(*t[:3]) and s.contains(*t[1:])
        assert out.contains(*t) == expected


def test_link_with_full_relation_is_cylindrification():
    rng = random.Random(5)
    r = random_relation(rng, 2)
    full = RegularRelation(track_alphabet(BIN, 3), valid_convolutions(track_alphabet(BIN, 3)))
    assert link(r, full, 1) == r or link(r, full, 1).arity == 3
    out = link(r, full, 1)
    assert out == cylindrify(r, SIGMA)


def test_link_with_empty_relation():
    empty = RegularRelation(track_alphabet(BIN, 3), Automaton.empty(track_alphabet(BIN, 3).names))
    assert link(empty, equality_relation(BIN), 2).is_empty()


def test_link_arity_errors():
    with pytest.raises(ArityError):
        link(equality_relation(BIN), equality_relation(BIN), 2)
    r3 = random_relation(random.Random(1), 3)
    with pytest.raises(ArityError):
        link(r3, equality_relation(BIN), 1)


# -- equality and llex ----------------------------------------------------------------


def test_equality_and_llex_examples():
    assert equality_relation(BIN).contains("01", "01")
    assert not equality_relation(BIN).contains("01", "0")
    llex = llex_relation(BIN)
    assert llex.contains("1", "00")
    assert not llex.contains("10", "01")
    assert llex.contains("01", "01")


def test_llex_brute_force():
    llex = llex_relation(BIN)
    for x in W4:
        for y in W4:
            assert llex.contains(x, y) == (llex_key(x, BIN) <= llex_key(y, BIN))


# -- randomized properties -------------------------------------------------------------


seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 3))
def test_relations_stay_inside_valid_convolutions(seed, arity):
    r = random_relation(random.Random(seed), arity)
    assert fa.is_empty(fa.product(r.acceptor, valid_convolutions(r.tracks), "minus"))[0]


@settings(max_examples=40, deadline=None)
@given(seeds, st.permutations([1, 2, 3]))
def test_rearrange_inverse(seed, perm):
    r = random_relation(random.Random(seed), 3)
    inverse = [0] * 3
    for j, p in enumerate(perm):
        inverse[p - 1] = j + 1
    assert rearrange(rearrange(r, perm), inverse) == r
    for t in itertools.product(all_words(BIN, 2), repeat=3):
        moved = tuple(t[p - 1] for p in perm)
        assert rearrange(r, perm).contains(*moved) == r.contains(*t)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 2))
def test_project_exists_matches_witness_search(seed, track):
    r = random_relation(random.Random(seed), 2)
    proj = project_exists(r, track, SIGMA)
    bound = r.acceptor.n_states
    for x in all_words(BIN, 3):
        witnesses = all_words(BIN, len(x) + bound)
        if track == 2:
            expected = any(r.contains(x, y) for y in witnesses)
        else:
            expected = any(r.contains(y, x) for y in witnesses)
        assert proj.contains(x) == expected


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_project_forall_is_dual_of_exists(seed):
    r = random_relation(random.Random(seed), 2)
    t = r.tracks
    neg = RegularRelation(t, fa.product(valid_convolutions(t), r.acceptor, "minus"))
    forall = project_forall(r, 2, SIGMA)
    exists_neg = project_exists(neg, 2, SIGMA)
    for x in all_words(BIN, 4):
        assert forall.contains(x) == (not exists_neg.contains(x))


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from(all_words(BIN, 2)))
def test_instantiate_matches_membership(seed, c):
    r = random_relation(random.Random(seed), 2)
    inst = instantiate(r, 1, c)
    for y in all_words(BIN, 4):
        assert inst.contains(y) == r.contains(c, y)
