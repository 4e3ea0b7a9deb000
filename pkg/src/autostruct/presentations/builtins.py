"""Registry of example presentations.

Encodings:

* ``presburger``: naturals in binary, least significant bit first, no
  trailing zeros; zero is ``"0"``.  Relations ``Add`` (x + y = z), ``Le``.
* ``weak_div``: same domain with ``Add`` and ``Div`` (x is a power of two
  dividing y).
* ``word_tree``: all of ``{0,1}*`` with prefix order ``Le``, ``Left``
  (y = x0), ``Right`` (y = x1) and ``EqL`` (equal length).
* ``rationals``: ``{0,1}*·1`` under lexicographic order (dyadic rationals in
  (0, 1)); relation ``Le``.
* ``unary_order``: ``1*`` with ``Le`` and successor ``S``;
  ``unary_mod(n)`` adds ``Cong`` (lengths congruent mod n).
* ``bomega``: finite and cofinite subsets of ω.  A finite set is its
  characteristic word over ``0/1`` without trailing ``0`` (the empty set is
  ``""``).  A cofinite set is written over ``2/3`` with ``3`` marking absent
  positions and no trailing ``2``; ω itself is ``"2"``.  Relations are
  operation graphs ``Join``, ``Meet``, ``Compl`` and singletons ``Zero``,
  ``One``.
* ``bomega_power(n)``: n-tuples of such sets over ``{0,1}``: an n-bit header
  of types (1 = cofinite) followed by the interleaved characteristic words,
  each XOR its type, without trailing ``0``.
* ``ordinal(a0, ..., am)``: the ordinal ω^m·am + ... + ω·a1 + a0.  Each copy
  of ω^j has its own header letter; its elements are j-tuples of naturals
  written ``1^n1 # 1^n2 # ... # 1^nj`` after the letter.  ``Le`` compares
  letters by block (higher powers first), then lexicographically with
  ``#`` < ``1`` and proper prefixes smaller.
* ``tree_omega``: ω^{<ω} as ``{ε} ∪ {0,1}*·1`` (a sequence n1..nk is
  ``0^n1 1 ... 0^nk 1``) under prefix order ``Le``.
* ``two_branch``: ``0* ∪ 1*`` under prefix order ``Le``.
* ``reverse_omega``: ``1*`` with ``Le(x, y)`` iff ``|x| >= |y|``.
* ``zeta``: the integers as ``0·1*`` (negatives, reversed) then ``1·1*``.
* ``qinterleaved``: Σ over n in ω of (ℚ + 2): ``1^n 0 q`` for q in
  ``{0,1}*·1`` and ``1^n 2``, ``1^n 21``; lexicographic with 0 < 2 < 1.
"""
from __future__ import annotations

import re
from functools import lru_cache

from ..automata import Automaton
from ..errors import AutostructError
from ..relations import relation_from_function
from .core import Presentation

__all__ = ["builtin", "BUILTINS", "ordinal", "bomega", "bomega_power"]

BIN = ("0", "1")


def _language(base, start, step, accept=lambda q: True):
    names = tuple(base)
    return Automaton.from_function(names, start, lambda q, a: step(q, names[a]), accept)


def _binary_naturals():
    # "0" or a word ending in 1
    def step(q, a):
        if q == "start":
            return "zero" if a == "0" else "one"
        if q == "zero":
            return "tail0" if a == "0" else "one"
        return "one" if a == "1" else "tail0"

    return _language(BIN, "start", step, lambda q: q in ("zero", "one"))


def _bit(c):
    return 0 if c is None else int(c)


def _add():
    def step(carry, col):
        a, b, c = (_bit(x) for x in col)
        s = a + b + carry
        if s % 2 != c:
            return None
        return s // 2

    return relation_from_function(BIN, 3, 0, step, lambda q: q == 0)


def _le_binary():
    def step(q, col):
        a, b = (_bit(x) for x in col)
        if a < b:
            return "le"
        if a > b:
            return "gt"
        return q

    return relation_from_function(BIN, 2, "le", step, lambda q: q == "le")


def presburger():
    return Presentation(BIN, _binary_naturals(), {"Add": _add(), "Le": _le_binary()}, name="presburger")


def weak_div():
    def step(q, col):
        w, v = col
        if q == "low":
            if w == "0":
                return "low" if v in ("0", None) else None
            if w == "1":
                return "done"
            return None
        return "done" if w is None else None

    div = relation_from_function(BIN, 2, "low", step, lambda q: q == "done")
    return Presentation(BIN, _binary_naturals(), {"Add": _add(), "Div": div}, name="weak_div")


def _prefix(base):
    def step(q, col):
        a, b = col
        if q == "same":
            if a is None:
                return "below"
            return "same" if a == b else None
        return "below" if a is None else None

    return relation_from_function(base, 2, "same", step, lambda q: True)


def _append(base, letter):
    def step(q, col):
        a, b = col
        if q == "copy":
            if a is None:
                return "done" if b == letter else None
            return "copy" if a == b else None
        return None

    return relation_from_function(base, 2, "copy", step, lambda q: q == "done")


def word_tree():
    eql = relation_from_function(BIN, 2, 0, lambda q, col: 0 if None not in col else None, lambda q: True)
    rels = {"Le": _prefix(BIN), "Left": _append(BIN, "0"), "Right": _append(BIN, "1"), "EqL": eql}
    return Presentation(BIN, Automaton.universal(BIN), rels, name="word_tree")


def _lex_order(base, rank):
    """Lexicographic order, symbols compared by ``rank``, proper prefixes smaller."""

    def step(q, col):
        a, b = col
        if q != "eq":
            return q
        if a is None:
            return "lt"
        if b is None:
            return "gt"
        if a == b:
            return "eq"
        return "lt" if rank[a] < rank[b] else "gt"

    return relation_from_function(base, 2, "eq", step, lambda q: q in ("eq", "lt"))


def _ends_in_one():
    return _language(BIN, 0, lambda q, a: 1 if a == "1" else 0, lambda q: q == 1)


def rationals():
    le = _lex_order(BIN, {"0": 0, "1": 1})
    return Presentation(BIN, _ends_in_one(), {"Le": le}, name="rationals")


def _unary_le(reverse=False):
    def step(q, col):
        a, b = col
        if q == "eq":
            if a is None:
                return "short"
            if b is None:
                return "long"
            return "eq"
        if q == "short":
            return "short" if a is None else None
        return "long" if b is None else None

    good = ("eq", "long") if reverse else ("eq", "short")
    return relation_from_function(("1",), 2, "eq", step, lambda q: q in good)


def unary_order():
    def succ(q, col):
        a, b = col
        if q == 0:
            if a is None:
                return 1 if b is not None else None
            return 0 if b is not None else None
        return None

    s = relation_from_function(("1",), 2, 0, succ, lambda q: q == 1)
    return Presentation(("1",), Automaton.universal(("1",)), {"Le": _unary_le(), "S": s}, name="unary_order")


def unary_mod(n):
    n = int(n)
    if n < 1:
        raise AutostructError("unary_mod needs a positive modulus")

    def cong(q, col):
        a, b = col
        return (q + (a is not None) - (b is not None)) % n

    base = unary_order()
    rels = dict(base.relations)
    rels["Cong"] = relation_from_function(("1",), 2, 0, cong, lambda q: q == 0)
    return Presentation(("1",), base.domain, rels, name=f"unary_mod({n})")


def reverse_omega():
    return Presentation(("1",), Automaton.universal(("1",)), {"Le": _unary_le(reverse=True)}, name="reverse_omega")


def zeta():
    # 0·1^n is -(n+1), 1·1^n is n
    def step(q, col):
        a, b = col
        if q == "start":
            if a == b:
                return "neg" if a == "0" else "pos"
            return "lt" if a == "0" else None
        if q in ("lt", "xlong", "ylong"):
            if q == "xlong" and a is None or q == "ylong" and b is None:
                return None
            return q
        if a is not None and b is not None:
            return q
        longer = "xlong" if b is None else "ylong"
        # among negatives the longer one is smaller
        if (q == "neg") == (longer == "xlong"):
            return longer
        return None

    base = ("0", "1")
    domain = _language(base, "start", lambda q, a: "body" if q == "start" or a == "1" else None, lambda q: q == "body")
    le = relation_from_function(base, 2, "start", step, lambda q: q != "start")
    return Presentation(base, domain, {"Le": le}, name="zeta")


def qinterleaved():
    base = ("0", "1", "2")

    def dom(q, a):
        if q == "blk":
            return {"1": "blk", "0": "q0", "2": "two"}[a]
        if q in ("q0", "q1"):
            return "q1" if a == "1" else ("q0" if a == "0" else None)
        if q == "two":
            return "twoone" if a == "1" else None
        return None

    domain = _language(base, "blk", dom, lambda q: q in ("q1", "two", "twoone"))
    le = _lex_order(base, {"0": 0, "2": 1, "1": 2})
    return Presentation(base, domain, {"Le": le}, name="qinterleaved")


def tree_omega():
    def dom(q, a):
        return 1 if a == "1" else 0

    domain = _language(BIN, 1, dom, lambda q: q == 1)
    return Presentation(BIN, domain, {"Le": _prefix(BIN)}, name="tree_omega")


def two_branch():
    def dom(q, a):
        if q == "root":
            return a
        return q if q == a else None

    domain = _language(BIN, "root", dom)
    return Presentation(BIN, domain, {"Le": _prefix(BIN)}, name="two_branch")


# -- Boolean algebras --------------------------------------------------------

_BA_OPS = {
    "Join": (3, lambda x, y: x | y),
    "Meet": (3, lambda x, y: x & y),
    "Compl": (2, lambda x: 1 - x),
}


def _bomega_bits(types, col):
    """Membership bits of one column of the tagged encoding, or ``None`` if malformed."""
    kinds = list(types)
    bits = []
    for t, c in enumerate(col):
        if kinds[t] is None:
            kinds[t] = "cof" if c in ("2", "3") else "fin"
        if kinds[t] == "fin":
            if c not in (None, "0", "1"):
                return None
            bits.append(1 if c == "1" else 0)
        else:
            if c not in (None, "2", "3"):
                return None
            bits.append(0 if c == "3" else 1)
    return tuple(kinds), bits


def _bomega_op(fn, arity):
    def step(types, col):
        got = _bomega_bits(types, col)
        if got is None:
            return None
        kinds, bits = got
        if fn(*bits[:-1]) != bits[-1]:
            return None
        return kinds

    def accept(types):
        tails = [0 if k in (None, "fin") else 1 for k in types]
        return fn(*tails[:-1]) == tails[-1]

    return relation_from_function(("0", "1", "2", "3"), arity, (None,) * arity, step, accept)


@lru_cache(maxsize=None)
def bomega():
    base = ("0", "1", "2", "3")

    def dom(q, a):
        if q == "start":
            return {"0": "f0", "1": "f1", "2": "two", "3": "c3"}[a]
        if q in ("f0", "f1"):
            return {"0": "f0", "1": "f1"}.get(a)
        if q in ("two", "c2", "c3"):
            return {"2": "c2", "3": "c3"}.get(a)
        return None

    domain = _language(base, "start", dom, lambda q: q in ("start", "f1", "two", "c3"))
    rels = {name: _bomega_op(fn, k) for name, (k, fn) in _BA_OPS.items()}
    rels["Zero"] = relation_from_function(base, 1, 0, lambda q, col: None, lambda q: True)
    rels["One"] = relation_from_function(base, 1, 0, lambda q, col: 1 if q == 0 and col == ("2",) else None, lambda q: q == 1)
    return Presentation(base, domain, rels, name="bomega")


@lru_cache(maxsize=None)
def bomega_power(n):
    n = int(n)
    if n < 1:
        raise AutostructError("bomega_power needs n >= 1")

    def op(fn, arity):
        # state: (position, per-track type bits); header first, then body j = position mod n
        def step(q, col):
            pos, types = q
            if pos < n:
                if None in col:
                    return None
                return pos + 1, types + (tuple(int(c) for c in col),)
            j = (pos - n) % n
            bits = [_bit(c) ^ types[j][t] for t, c in enumerate(col)]
            if fn(*bits[:-1]) != bits[-1]:
                return None
            return n + (j + 1) % n, types

        def accept(q):
            pos, types = q
            if pos < n:
                return False
            return all(fn(*types[j][:-1]) == types[j][-1] for j in range(n))

        return relation_from_function(BIN, arity, (0, ()), step, accept)

    def dom(q, a):
        if q < n:
            return q + 1
        return n + 1 if a == "1" else n + 2

    domain = _language(BIN, 0, dom, lambda q: q in (n, n + 1))
    rels = {name: op(fn, k) for name, (k, fn) in _BA_OPS.items()}
    rels["Zero"] = relation_from_function(BIN, 1, 0, lambda q, col: q + 1 if q < n and col == ("0",) else None, lambda q: q == n)
    rels["One"] = relation_from_function(BIN, 1, 0, lambda q, col: q + 1 if q < n and col == ("1",) else None, lambda q: q == n)
    return Presentation(BIN, domain, rels, name=f"bomega_power({n})")


# -- ordinals ----------------------------------------------------------------

_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


@lru_cache(maxsize=None)
def ordinal(*cnf):
    """Presentation of ω^m·a_m + ... + a_0 from ``cnf = (a_0, ..., a_m)``."""
    if len(cnf) == 1 and isinstance(cnf[0], (list, tuple)):
        cnf = tuple(cnf[0])
    cnf = tuple(int(a) for a in cnf)
    if not cnf or any(a < 0 for a in cnf):
        raise AutostructError("ordinal coefficients must be a nonempty list of non-negative integers")
    if len(cnf) > 1 and cnf[-1] == 0:
        raise AutostructError(f"leading coefficient of {list(cnf)} is zero")
    blocks = []  # (letter, exponent) from most to least significant
    for j in range(len(cnf) - 1, -1, -1):
        for _ in range(cnf[j]):
            blocks.append(j)
    if len(blocks) > len(_LETTERS):
        raise AutostructError("too many blocks for the ordinal encoding")
    letters = _LETTERS[: len(blocks)]
    base = ("#", "1") + tuple(letters)
    exponent = dict(zip(letters, blocks))
    rank = {c: i for i, c in enumerate(letters)}

    def dom(q, a):
        if q == "start":
            if a not in exponent:
                return None
            j = exponent[a]
            return ("num", j - 1) if j > 0 else ("end",)
        if q[0] == "num":
            if a == "1":
                return q
            if a == "#" and q[1] > 0:
                return ("num", q[1] - 1)
        return None

    domain = _language(base, "start", dom, lambda q: q != "start")

    def le(q, col):
        a, b = col
        if q == "start":
            if a not in rank or b not in rank:
                return None
            if rank[a] == rank[b]:
                return "eq"
            return "lt" if rank[a] < rank[b] else None
        if q == "lt":
            return "lt"
        if a is None:
            return "lt"
        if b is None or (a, b) == ("1", "#"):
            return None
        if a == b:
            return "eq"
        return "lt"

    rel = relation_from_function(base, 2, "start", le, lambda q: q in ("eq", "lt"))
    return Presentation(base, domain, {"Le": rel}, name=f"ordinal({','.join(map(str, cnf))})")


BUILTINS = {
    "presburger": presburger,
    "weak_div": weak_div,
    "word_tree": word_tree,
    "rationals": rationals,
    "unary_order": unary_order,
    "unary_mod": unary_mod,
    "bomega": bomega,
    "bomega_power": bomega_power,
    "ordinal": ordinal,
    "tree_omega": tree_omega,
    "two_branch": two_branch,
    "reverse_omega": reverse_omega,
    "zeta": zeta,
    "qinterleaved": qinterleaved,
}

_CALL = re.compile(r"^\s*([A-Za-z_]+)\s*(?:\((.*)\))?\s*$")


def builtin(name: str, *args) -> Presentation:
    """Look up a builtin by name, e.g. ``builtin("ordinal(3,2)")`` or ``builtin("unary_mod", 2)``."""
    m = _CALL.match(name)
    if m is None:
        raise AutostructError(f"cannot parse builtin name {name!r}")
    key, inner = m.group(1), m.group(2)
    if inner is not None:
        inner = inner.strip().strip("[]")
        args = tuple(int(x) for x in re.split(r"[,\s]+", inner) if x) + args
    factory = BUILTINS.get(key)
    if factory is None:
        raise AutostructError(f"unknown builtin {key!r}; known: {', '.join(sorted(BUILTINS))}")
    return factory(*args)
