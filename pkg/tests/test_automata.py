import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autostruct import automata as fa
from autostruct.automata import Automaton
from autostruct.errors import AlphabetMismatch, SymbolError
from oracles import all_words, llex_key, random_dfa, random_nfa, run_nfa

BIN = ("0", "1")
WORDS8 = all_words(BIN, 8)


def lang(a, words=WORDS8):
    return {w for w in words if a.accepts(w)}


def ends_in_one_nfa():
    # (0|1)*1: state 0 loops, guesses the final 1
    return Automaton(BIN, 2, 0, [1], [(0, "0", 0), (0, "1", 0), (0, "1", 1)])


def zero_star():
    return Automaton(BIN, 1, 0, [0], [(0, "0", 0)])


def zero_star_one():
    return Automaton(BIN, 2, 0, [1], [(0, "0", 0), (0, "1", 1)])


# -- construction ------------------------------------------------------------------


def test_nfa_detection_and_membership():
    a = ends_in_one_nfa()
    assert not a.deterministic
    assert a.accepts("0101")
    assert not a.accepts("10")
    assert not a.accepts("")


def test_unknown_symbol_rejected():
    with pytest.raises(SymbolError):
        Automaton(BIN, 1, 0, [0], [(0, "2", 0)])
    with pytest.raises(SymbolError):
        zero_star().accepts("02")


def test_bad_indices_rejected():
    with pytest.raises(ValueError):
        Automaton(BIN, 2, 5, [], [])
    with pytest.raises(ValueError):
        Automaton(BIN, 2, 0, [3], [])
    with pytest.raises(ValueError):
        Automaton(BIN, 0, 0, [], [])


def test_from_words_is_minimal_and_exact():
    a = Automaton.from_words(BIN, ["0", "01", "1", "0"])
    assert lang(a) == {"0", "01", "1"}
    assert fa.minimize(a) == a


# -- determinize -------------------------------------------------------------------


def test_determinize_ends_in_one():
    d = fa.determinize(ends_in_one_nfa())
    assert d.deterministic
    assert fa.minimize(d).n_states == 2
    assert lang(d) == {w for w in WORDS8 if w.endswith("1")}


def test_determinize_deterministic_input_keeps_language():
    a = zero_star_one()
    assert lang(fa.determinize(a)) == lang(a)


def test_determinize_no_accepting_states():
    a = Automaton(BIN, 3, 0, [], [(0, "0", 1), (1, "1", 2)])
    assert fa.is_empty(fa.determinize(a)) == (True, None)


# -- minimize ----------------------------------------------------------------------


def residual_classes(a, max_len=8):
    """Myhill-Nerode classes of reachable prefixes, by comparing residuals on short suffixes."""
    suffixes = all_words(a.alphabet, max_len)
    seen = set()
    for prefix in all_words(a.alphabet, max_len):
        seen.add(tuple(a.accepts(prefix + s) for s in suffixes[:127]))
    return len(seen)


def test_minimize_zero_star_one_with_junk():
    # states 3 and 4 are unreachable; 2 duplicates 1
    trans = [
        (0, "0", 0), (0, "1", 1),
        (1, "0", 5), (1, "1", 5),
        (2, "0", 5), (2, "1", 5),
        (3, "0", 2), (3, "1", 4),
        (4, "0", 4), (4, "1", 3),
        (5, "0", 5), (5, "1", 5),
    ]
    a = Automaton(BIN, 6, 0, [1, 2], trans)
    m = fa.minimize(a)
    assert m.n_states == 3 == residual_classes(a)
    assert lang(m) == {"0" * k + "1" for k in range(8)}


def test_minimize_idempotent_and_canonical_numbering():
    m = fa.minimize(zero_star_one())
    assert fa.minimize(m) == m
    assert m.initial == 0
    # breadth-first numbering: start, then the targets of 0 and 1 in order
    assert m.table.tolist() == [[0, 1], [2, 2], [2, 2]]


def test_minimize_empty_language_is_single_sink():
    m = fa.minimize(Automaton(BIN, 4, 0, [], [(0, "0", 1), (1, "0", 2)]))
    assert m.n_states == 1
    assert not m.accepting


# -- products and complement ---------------------------------------------------------


def test_product_examples():
    assert fa.is_empty(fa.product(zero_star(), zero_star_one(), "and"))[0]
    empty = Automaton.empty(BIN)
    a = zero_star_one()
    assert fa.equivalent(fa.product(a, empty, "or"), a)
    assert fa.is_empty(fa.product(a, a, "minus"))[0]


def test_product_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        fa.product(zero_star(), Automaton.universal(("a", "b")), "and")
    with pytest.raises(AlphabetMismatch):
        fa.complement(zero_star(), Automaton.universal(("a", "b")))


def test_complement_examples():
    sigma = Automaton.universal(BIN)
    assert fa.equivalent(fa.complement(Automaton.empty(BIN), sigma), sigma)
    c = fa.complement(zero_star(), sigma)
    assert lang(c, all_words(BIN, 6)) == {w for w in all_words(BIN, 6) if "1" in w}
    assert fa.equivalent(fa.complement(c, sigma), zero_star())


# -- queries -----------------------------------------------------------------------


def test_is_empty_examples():
    assert fa.is_empty(zero_star_one()) == (False, "1")
    assert fa.is_empty(Automaton(BIN, 2, 0, [], [(0, "1", 1)])) == (True, None)
    assert fa.is_empty(zero_star()) == (False, "")


def test_is_infinite_examples():
    assert fa.is_infinite(zero_star())
    assert not fa.is_infinite(Automaton.from_words(BIN, ["0", "01"]))
    assert not fa.is_infinite(Automaton.empty(BIN))


def test_equivalent_examples():
    a = zero_star_one()
    assert fa.equivalent(a, a)
    other = Automaton(BIN, 2, 0, [1], [(0, "0", 0), (0, "1", 1), (1, "0", 0), (1, "1", 1)])
    assert fa.equivalent(ends_in_one_nfa(), other)
    assert not fa.equivalent(zero_star(), zero_star_one())


def test_enumerate_examples():
    assert fa.enumerate_words(Automaton.universal(BIN), 4) == ["", "0", "1", "00"]
    assert fa.enumerate_words(Automaton.empty(BIN), 5) == []
    one_sigma = Automaton(BIN, 2, 0, [1], [(0, "1", 1), (1, "0", 1), (1, "1", 1)])
    assert fa.enumerate_words(one_sigma, 3) == ["1", "10", "11"]
    assert fa.enumerate_words(one_sigma, 0) == []


def test_enumerate_finite_language_exhausts():
    words = ["", "1", "0110", "11", "000"]
    a = Automaton.from_words(BIN, words)
    assert fa.enumerate_words(a, 100) == sorted(words, key=lambda w: llex_key(w, BIN))
    assert fa.count_words(a) == 5
    assert fa.count_words(zero_star()) is None


def test_symbol_id_order_breaks_ties():
    a = Automaton.universal(("b", "a"))
    assert fa.enumerate_words(a, 3) == ["", "b", "a"]


def test_random_word_lengths_and_membership():
    rng = np.random.default_rng(0)
    a = zero_star_one()
    for n in range(1, 6):
        w = fa.random_word(a, n, rng)
        assert w == "0" * (n - 1) + "1"
    assert fa.random_word(a, 0, rng) is None


# -- randomized properties ----------------------------------------------------------


@st.composite
def automata(draw, alphabet=BIN, max_states=5):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(1, max_states))
    rng = random.Random(seed)
    if draw(st.booleans()):
        trans, acc = random_nfa(rng, alphabet, n)
    else:
        trans, acc = random_dfa(rng, alphabet, n)
    return Automaton(alphabet, n, 0, acc, trans), trans, acc


WORDS6 = all_words(BIN, 6)


@settings(max_examples=60, deadline=None)
@given(automata())
def test_determinize_agrees_with_subset_simulation(case):
    a, trans, acc = case
    d = fa.determinize(a)
    assert d.deterministic
    for w in WORDS6:
        assert d.accepts(w) == run_nfa(trans, 0, acc, w)


@settings(max_examples=60, deadline=None)
@given(automata(), automata(), st.sampled_from(["and", "or", "minus"]))
def test_product_is_boolean_combination(c1, c2, mode):
    a, t1, acc1 = c1
    b, t2, acc2 = c2
    p = fa.product(a, b, mode)
    op = {"and": lambda x, y: x and y, "or": lambda x, y: x or y, "minus": lambda x, y: x and not y}[mode]
    for w in WORDS6:
        assert p.accepts(w) == op(run_nfa(t1, 0, acc1, w), run_nfa(t2, 0, acc2, w))


@settings(max_examples=40, deadline=None)
@given(automata(), automata())
def test_complement_partitions_universe(c1, c2):
    a, u = c1[0], c2[0]
    c = fa.complement(a, u)
    assert fa.is_empty(fa.product(a, c, "and"))[0]
    assert fa.equivalent(fa.product(a, c, "or"), fa.product(u, a, "or"))
    assert fa.equivalent(fa.complement(c, u), fa.product(a, u, "and"))


@settings(max_examples=60, deadline=None)
@given(automata())
def test_minimize_idempotent_and_language_preserving(case):
    a = case[0]
    m = fa.minimize(a)
    assert fa.minimize(m) == m
    for w in WORDS6:
        assert m.accepts(w) == a.accepts(w)


@settings(max_examples=40, deadline=None)
@given(automata())
def test_language_equal_automata_have_identical_minimal_forms(case):
    a = case[0]
    # an unminimized equivalent: product with the universal automaton
    b = fa.product(fa.determinize(a), Automaton.universal(BIN), "and")
    assert fa.minimize(a) == fa.minimize(b)


@settings(max_examples=40, deadline=None)
@given(automata())
def test_enumeration_is_strictly_llex_increasing(case):
    a, trans, acc = case
    words = fa.enumerate_words(a, 40)
    keys = [llex_key(w, BIN) for w in words]
    assert keys == sorted(keys) and len(set(map(str, keys))) == len(keys)
    expected = [w for w in WORDS6 if run_nfa(trans, 0, acc, w)]
    assert words[: len(expected)] == expected[: len(words)]


@settings(max_examples=40, deadline=None)
@given(automata())
def test_is_empty_witness_is_llex_least(case):
    a, trans, acc = case
    empty, w = fa.is_empty(a)
    members = [v for v in all_words(BIN, 5) if run_nfa(trans, 0, acc, v)]
    if members:
        assert not empty and w == members[0]
    elif empty:
        assert w is None


@settings(max_examples=40, deadline=None)
@given(automata())
def test_is_infinite_matches_pumping_window(case):
    a, trans, acc = case
    n = fa.minimize(a).n_states
    # infinite iff some word with length in [n, 2n) is accepted
    window = [w for w in all_words(BIN, 2 * n - 1) if len(w) >= n]
    assert fa.is_infinite(a) == any(run_nfa(trans, 0, acc, w) for w in window)
