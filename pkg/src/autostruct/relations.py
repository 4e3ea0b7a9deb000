"""Regular relations: automata over padded k-track convolutions.

A column of a k-track string is a tuple of base-symbol ids or the pad
``◇``.  Columns are numbered in mixed radix ``len(base) + 1`` with track 1
most significant and the pad as the largest digit, so the all-pad column
is exactly the largest code and is dropped from the track alphabet.

Track indices in the public calculus are 1-based, as in ``∃x_i R``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from . import automata as fa
from .automata import Automaton
from .errors import AlphabetMismatch, ArityError, SymbolError

PAD = "◇"
PAD_NAME = "_"

__all__ = [
    "PAD",
    "TrackAlphabet",
    "track_alphabet",
    "RegularRelation",
    "convolve",
    "valid_convolutions",
    "cylindrify",
    "project_exists",
    "project_forall",
    "instantiate",
    "rearrange",
    "link",
    "equality_relation",
    "llex_relation",
    "relation_from_function",
]


class TrackAlphabet:
    """Symbols of the ``arity``-fold padded convolution over ``base``."""

    def __init__(self, base, arity):
        base = tuple(base)
        if arity < 1:
            raise ArityError("track arity must be at least 1")
        if not base:
            raise ValueError("base alphabet must be nonempty")
        if arity > 1 and any("|" in a or a == PAD_NAME for a in base):
            raise SymbolError(f"symbols containing '|' or equal to {PAD_NAME!r} cannot be used on several tracks")
        self.base = base
        self.arity = int(arity)
        self.radix = len(base) + 1
        self.pad = len(base)
        self.size = self.radix**self.arity - 1
        self.weights = self.radix ** np.arange(self.arity - 1, -1, -1, dtype=np.int64)
        self._digits = None
        self._names = None
        self._index = {ch: i for i, ch in enumerate(base)}

    @property
    def digits(self) -> np.ndarray:
        """``(size, arity)`` array of per-track digits for every code."""
        if self._digits is None:
            codes = np.arange(self.size, dtype=np.int64)
            d = (codes[:, None] // self.weights[None, :]) % self.radix
            d.flags.writeable = False
            self._digits = d
        return self._digits

    @property
    def names(self) -> tuple:
        if self._names is None:
            if self.arity == 1:
                self._names = self.base
            else:
                label = list(self.base) + [PAD_NAME]
                self._names = tuple("|".join(label[x] for x in row) for row in self.digits.tolist())
        return self._names

    def code(self, column) -> int:
        return int(sum(int(d) * int(w) for d, w in zip(column, self.weights)))

    def pad_code_except(self, i: int) -> int:
        """Code of the column padded everywhere except 0-based track ``i`` (digit 0)."""
        return int(self.pad * (self.weights.sum() - self.weights[i]))

    def encode(self, strings) -> list:
        """Convolution of ``strings`` as a list of column codes."""
        if len(strings) != self.arity:
            raise ArityError(f"expected {self.arity} strings, got {len(strings)}")
        length = max((len(s) for s in strings), default=0)
        cols = [0] * length
        for t, s in enumerate(strings):
            w = int(self.weights[t])
            for pos in range(length):
                if pos < len(s):
                    d = self._index.get(s[pos])
                    if d is None:
                        raise SymbolError(f"character {s[pos]!r} not in alphabet {self.base}")
                else:
                    d = self.pad
                cols[pos] += d * w
        return cols

    def decode(self, codes) -> tuple:
        out = [[] for _ in range(self.arity)]
        digits = self.digits
        for c in codes:
            for t, d in enumerate(digits[c].tolist()):
                if d != self.pad:
                    out[t].append(self.base[d])
        return tuple("".join(x) for x in out)

    def __eq__(self, other):
        return isinstance(other, TrackAlphabet) and self.base == other.base and self.arity == other.arity

    def __hash__(self):
        return hash((self.base, self.arity))

    def __repr__(self):
        return f"TrackAlphabet(base={''.join(self.base)!r}, arity={self.arity})"


@lru_cache(maxsize=256)
def track_alphabet(base, arity) -> TrackAlphabet:
    return TrackAlphabet(tuple(base), arity)


def _wrap(tracks: TrackAlphabet, table, accept, initial=0, canonical=True) -> Automaton:
    if canonical:
        table, accept, _ = fa.canonical_table(np.asarray(table), np.asarray(accept, dtype=bool), initial)
        initial = 0
    return Automaton.from_table(tracks.names, table, accept, initial)


# -- table-level building blocks (shared with the compiler) -----------------


def reindex(a: Automaton, src: TrackAlphabet, arity: int, mapping) -> Automaton:
    """Rewire tracks: source track ``t`` is read from destination track ``mapping[t]``.

    ``mapping`` may repeat destinations (diagonal) and need not be onto
    (cylindrification).  Columns that are all-pad on the source tracks keep
    the state.  The result is not intersected with any universe.
    """
    dst = track_alphabet(src.base, arity)
    t = a.table
    n = t.shape[0]
    sd = dst.digits[:, list(mapping)]
    stay = (sd == src.pad).all(axis=1)
    codes = sd @ src.weights
    codes[stay] = 0
    table = t[:, codes]
    if stay.any():
        table[:, stay] = np.arange(n, dtype=np.int32)[:, None]
    return Automaton.from_table(dst.names, table, a.accept_mask, a.initial)


def track_member(tracks: TrackAlphabet, i: int, lang: Automaton) -> Automaton:
    """Strings whose 0-based track ``i`` is well padded and lies in ``L(lang)``."""
    lang = fa.determinize(lang)
    if lang.alphabet != tracks.base:
        raise AlphabetMismatch("track language must be over the base alphabet")
    n = lang.n_states
    lt = lang.table
    d = tracks.digits[:, i]
    is_pad = d == tracks.pad
    dead = 2 * n
    # states: s (running), n + s (track ended in s), dead
    table = np.full((2 * n + 1, tracks.size), dead, dtype=np.int32)
    safe_d = np.where(is_pad, 0, d)
    running = lt[:, safe_d]
    table[:n] = np.where(is_pad[None, :], np.arange(n, 2 * n)[:, None], running)
    table[n : 2 * n] = np.where(is_pad[None, :], np.arange(n, 2 * n)[:, None], dead)
    accept = np.concatenate([lang.accept_mask, lang.accept_mask, [False]])
    return _wrap(tracks, table, accept, lang.initial)


def intersect(a: Automaton, b: Automaton) -> Automaton:
    table, accept = fa.product_table(a.table, a.accept_mask, a.initial, b.table, b.accept_mask, b.initial, np.logical_and)
    table, accept, _ = fa.canonical_table(table, accept, 0)
    return Automaton.from_table(a.alphabet, table, accept, 0)


def combine(a: Automaton, b: Automaton, op) -> Automaton:
    table, accept = fa.product_table(a.table, a.accept_mask, a.initial, b.table, b.accept_mask, b.initial, op)
    table, accept, _ = fa.canonical_table(table, accept, 0)
    return Automaton.from_table(a.alphabet, table, accept, 0)


def _eps_targets(a: Automaton, tracks: TrackAlphabet, i: int) -> np.ndarray:
    """Targets of columns padded on every track but ``i`` (which carries a symbol)."""
    base_code = tracks.pad_code_except(i)
    w = int(tracks.weights[i])
    cols = [base_code + c * w for c in range(tracks.pad)]
    return a.table[:, cols]


def _closure_back(eps: np.ndarray, seed: np.ndarray) -> np.ndarray:
    mark = seed.copy()
    while True:
        nxt = mark | mark[eps].any(axis=1)
        if np.array_equal(nxt, mark):
            return mark
        mark = nxt


def _infinite_residual(eps: np.ndarray, accept: np.ndarray) -> np.ndarray:
    """States with infinitely many pad-tail continuations into acceptance."""
    alive = _closure_back(eps, accept)
    while True:
        nxt = alive & alive[eps].any(axis=1)
        if np.array_equal(nxt, alive):
            break
        alive = nxt
    return _closure_back(eps, alive)


def _drop_track_codes(tracks: TrackAlphabet, i: int):
    """For each code of the (k-1)-track alphabet: old code with digit 0 at ``i``, and the weight of ``i``."""
    new = track_alphabet(tracks.base, tracks.arity - 1)
    keep = [t for t in range(tracks.arity) if t != i]
    base_codes = new.digits @ tracks.weights[keep]
    return new, base_codes, int(tracks.weights[i])


def project(a: Automaton, tracks: TrackAlphabet, i: int):
    """Existential projection of 0-based track ``i``; arity 1 gives a bool."""
    if tracks.arity == 1:
        return not fa.is_empty(a)[0]
    n = a.n_states
    eps = _eps_targets(a, tracks, i)
    final = _closure_back(eps, a.accept_mask)
    new, base_codes, w = _drop_track_codes(tracks, i)
    k = new.size
    targets = np.stack([a.table[:, base_codes + c * w] for c in range(tracks.radix)], axis=2)
    src = np.broadcast_to(np.arange(n)[:, None, None], targets.shape)
    sym = np.broadcast_to(np.arange(k)[None, :, None], targets.shape)
    succ = fa.successor_bits(n, k, src.ravel(), sym.ravel(), targets.ravel())
    table, accept = fa.subset_table(succ, fa.bitset([a.initial], n), fa.bitset(np.flatnonzero(final), n))
    return _wrap(new, table, accept)


def project_infinite(a: Automaton, tracks: TrackAlphabet, i: int):
    """Tuples with infinitely many witnesses on 0-based track ``i``.

    A witness longer than the other tracks runs on pad-tail columns after
    them; there are infinitely many witnesses iff some full-length witness
    prefix reaches a state with an infinite pad-tail residual.
    """
    if tracks.arity == 1:
        return fa.is_infinite(a)
    n = a.n_states
    eps = _eps_targets(a, tracks, i)
    marked = _infinite_residual(eps, a.accept_mask)
    new, base_codes, w = _drop_track_codes(tracks, i)
    k = new.size
    targets = np.stack([a.table[:, base_codes + c * w] for c in range(tracks.pad)], axis=2)
    src = np.broadcast_to(np.arange(n)[:, None, None], targets.shape)
    sym = np.broadcast_to(np.arange(k)[None, :, None], targets.shape)
    succ = fa.successor_bits(n, k, src.ravel(), sym.ravel(), targets.ravel())
    table, accept = fa.subset_table(succ, fa.bitset([a.initial], n), fa.bitset(np.flatnonzero(marked), n))
    return _wrap(new, table, accept)


def _tail_counts(eps: np.ndarray, accept: np.ndarray, modulus: int) -> np.ndarray:
    """Per state: number (mod ``modulus``) of nonempty pad-tail words into acceptance."""
    n = eps.shape[0]
    layer = accept.astype(np.int64)
    total = np.zeros(n, dtype=np.int64)
    for _ in range(n):
        layer = layer[eps].sum(axis=1) % modulus
        total = (total + layer) % modulus
    return total


def project_mod(a: Automaton, tracks: TrackAlphabet, i: int, modulus: int, residue: int):
    """Tuples whose witness set on track ``i`` is finite with size ≡ residue."""
    if tracks.arity == 1:
        size = fa.count_words(a)
        return size is not None and size % modulus == residue
    n = a.n_states
    eps = _eps_targets(a, tracks, i)
    marked = _infinite_residual(eps, a.accept_mask)
    tail = _tail_counts(eps, a.accept_mask, modulus)
    weight = (a.accept_mask.astype(np.int64) + tail) % modulus
    new, base_codes, w = _drop_track_codes(tracks, i)
    k = new.size
    cols = np.stack([base_codes + c * w for c in range(tracks.radix)], axis=1)  # (k, radix)
    table = a.table

    start = (np.zeros(n, dtype=bool), np.zeros(n, dtype=np.int64))
    start[0][a.initial] = True
    start[1][a.initial] = 1 % modulus

    def key(state):
        return state[0].tobytes() + state[1].tobytes()

    states = [start]
    ids = {key(start): 0}
    rows = []
    idx = 0
    while idx < len(states):
        reach, cnt = states[idx]
        live = np.flatnonzero(reach)
        row = np.empty(k, dtype=np.int32)
        sub = table[live]  # (m, size)
        for j in range(k):
            tg = sub[:, cols[j]].ravel()
            wts = np.repeat(cnt[live], tracks.radix)
            nr = np.zeros(n, dtype=bool)
            nr[tg] = True
            nc = np.bincount(tg, weights=wts, minlength=n).astype(np.int64) % modulus
            st = (nr, nc)
            kk = key(st)
            sid = ids.get(kk)
            if sid is None:
                sid = ids[kk] = len(states)
                states.append(st)
            row[j] = sid
        rows.append(row)
        idx += 1
    accept = []
    for reach, cnt in states:
        if (reach & marked).any():
            accept.append(False)
        else:
            accept.append(int((cnt * weight)[reach].sum() % modulus) == residue)
    return _wrap(new, np.stack(rows), accept)


def instantiate_table(a: Automaton, tracks: TrackAlphabet, i: int, const: str):
    """Fix 0-based track ``i`` to the string ``const``; arity 1 gives a bool."""
    ids = [tracks._index.get(ch) for ch in const]
    if any(d is None for d in ids):
        raise SymbolError(f"constant {const!r} uses characters outside {tracks.base}")
    table = a.table
    if tracks.arity == 1:
        q = a.initial
        for d in ids:
            q = table[q, d]
        return bool(a.accept_mask[q])
    n = a.n_states
    L = len(ids)
    w = int(tracks.weights[i])
    tail_base = tracks.pad_code_except(i)
    # acceptance of (s, pos): feed const[pos:] on track i, pads elsewhere
    fin = np.zeros((L + 1, n), dtype=bool)
    fin[L] = a.accept_mask
    for pos in range(L - 1, -1, -1):
        fin[pos] = fin[pos + 1][table[:, tail_base + ids[pos] * w]]
    new, base_codes, _ = _drop_track_codes(tracks, i)
    big = np.empty(((L + 1) * n, new.size), dtype=np.int32)
    for pos in range(L + 1):
        digit = ids[pos] if pos < L else tracks.pad
        nxt = min(pos + 1, L)
        big[pos * n : (pos + 1) * n] = nxt * n + table[:, base_codes + digit * w]
    return _wrap(new, big, fin.ravel(), a.initial)


def valid_table(tracks: TrackAlphabet) -> Automaton:
    return valid_convolutions(tracks)


# -- public relation type ---------------------------------------------------


class RegularRelation:
    """A k-ary relation on base-alphabet strings, stored as a canonical DFA."""

    __slots__ = ("tracks", "acceptor")

    def __init__(self, tracks: TrackAlphabet, acceptor: Automaton, canonical: bool = False):
        if acceptor.alphabet != tracks.names:
            raise AlphabetMismatch("acceptor alphabet does not match the track alphabet")
        if not canonical:
            acceptor = fa.minimize(acceptor)
        self.tracks = tracks
        self.acceptor = acceptor

    @property
    def arity(self) -> int:
        return self.tracks.arity

    @property
    def base(self) -> tuple:
        return self.tracks.base

    def contains(self, *strings) -> bool:
        codes = self.tracks.encode(strings)
        t = self.acceptor.table
        q = self.acceptor.initial
        for c in codes:
            q = t[q, c]
        return bool(self.acceptor.accept_mask[q])

    def __contains__(self, item) -> bool:
        if isinstance(item, str):
            item = (item,)
        return self.contains(*item)

    def tuples(self, max_count: int) -> list:
        """Members in length-lexicographic order of their convolutions."""
        return [self.tracks.decode(ids) for ids in fa.enumerate_ids(self.acceptor, max_count)]

    def is_empty(self) -> bool:
        return fa.is_empty(self.acceptor)[0]

    def __eq__(self, other):
        if not isinstance(other, RegularRelation):
            return NotImplemented
        return self.tracks == other.tracks and self.acceptor == other.acceptor

    def __hash__(self):
        return hash((self.tracks, self.acceptor))

    def __repr__(self):
        return f"<RegularRelation arity={self.arity} states={self.acceptor.n_states}>"

    @classmethod
    def from_automaton(cls, a: Automaton, base=None) -> "RegularRelation":
        """View an automaton over a base alphabet as a unary relation."""
        tracks = track_alphabet(tuple(base) if base is not None else a.alphabet, 1)
        d = fa.determinize(a)
        return cls(tracks, Automaton.from_table(tracks.names, d.table, d.accept_mask, d.initial))

    @classmethod
    def from_tuples(cls, base, arity, tuples) -> "RegularRelation":
        tracks = track_alphabet(tuple(base), arity)
        words = [tuple(tracks.names[c] for c in tracks.encode(t)) for t in tuples]
        return cls(tracks, Automaton.from_words(tracks.names, words), canonical=True)

    def as_language(self) -> Automaton:
        """Unary relation as an automaton over the base alphabet."""
        if self.arity != 1:
            raise ArityError("only unary relations are languages")
        return Automaton.from_table(self.base, self.acceptor.table, self.acceptor.accept_mask, self.acceptor.initial)


def _rel(tracks, a: Automaton) -> RegularRelation:
    return RegularRelation(tracks, a, canonical=True)


def _check_base(r: RegularRelation, a: Automaton):
    if tuple(a.alphabet) != r.base:
        raise AlphabetMismatch("automaton alphabet differs from the relation's base alphabet")


def _check_index(r: RegularRelation, i: int):
    if not 1 <= i <= r.arity:
        raise ArityError(f"track index {i} outside 1..{r.arity}")


# -- public calculus -------------------------------------------------------


def convolve(strings: Sequence[str], base=None) -> list:
    """Columns of the padded convolution; the pad is :data:`PAD`."""
    if base is not None:
        allowed = set(base)
        for s in strings:
            for ch in s:
                if ch not in allowed:
                    raise SymbolError(f"character {ch!r} not in alphabet")
    length = max((len(s) for s in strings), default=0)
    return [tuple(s[p] if p < len(s) else PAD for s in strings) for p in range(length)]


@lru_cache(maxsize=128)
def _valid(tracks: TrackAlphabet) -> Automaton:
    digits = tracks.digits.tolist()
    pad = tracks.pad

    def step(ended, c):
        mask = ended
        for t, d in enumerate(digits[c]):
            bit = 1 << t
            if d == pad:
                mask |= bit
            elif mask & bit:
                return None
        return mask

    return fa.minimize(Automaton.from_function(tracks.names, 0, step, lambda q: True))


def valid_convolutions(tracks: TrackAlphabet) -> Automaton:
    """Track strings that are convolutions of some tuple."""
    return _valid(tracks)


def restrict_tracks(tracks: TrackAlphabet, langs) -> Automaton:
    """Convolutions whose track ``t`` lies in ``langs[t]`` (``None`` = any)."""
    acc = valid_convolutions(tracks)
    for t, lang in enumerate(langs):
        if lang is not None:
            acc = intersect(acc, track_member(tracks, t, lang))
    return acc


def cylindrify(r: RegularRelation, a: Automaton) -> RegularRelation:
    """Append a track ranging over ``L(a)``."""
    _check_base(r, a)
    k = r.arity
    dst = track_alphabet(r.base, k + 1)
    lifted = reindex(r.acceptor, r.tracks, k + 1, list(range(k)))
    return _rel(dst, intersect(lifted, restrict_tracks(dst, [None] * k + [a])))


def _universe_default(base, arity, universe):
    tracks = track_alphabet(base, arity)
    if universe is None:
        return valid_convolutions(tracks)
    if isinstance(universe, RegularRelation):
        return universe.acceptor
    return universe


def project_exists(r: RegularRelation, i: int, a: Automaton):
    """``∃x_i R`` with the witness ranging over ``L(a)``.  Arity 1 gives a bool."""
    _check_index(r, i)
    _check_base(r, a)
    acc = intersect(r.acceptor, track_member(r.tracks, i - 1, a))
    out = project(acc, r.tracks, i - 1)
    if isinstance(out, bool):
        return out
    return _rel(track_alphabet(r.base, r.arity - 1), out)


def project_forall(r: RegularRelation, i: int, a: Automaton, universe=None):
    """``∀x_i R`` over ``L(a)``, relative to ``universe`` on the remaining tracks.

    Computed as complement, existential projection, complement.
    """
    _check_index(r, i)
    _check_base(r, a)
    k = r.arity
    domain = intersect(valid_convolutions(r.tracks), track_member(r.tracks, i - 1, a))
    if k > 1 and universe is not None:
        uni = _universe_default(r.base, k - 1, universe)
        mapping = [t for t in range(k) if t != i - 1]
        domain = intersect(domain, reindex(uni, track_alphabet(r.base, k - 1), k, mapping))
    counter = combine(domain, r.acceptor, lambda x, y: x & ~y)
    out = project(counter, r.tracks, i - 1)
    if isinstance(out, bool):
        return not out
    uni = _universe_default(r.base, k - 1, universe)
    return _rel(track_alphabet(r.base, k - 1), combine(uni, out, lambda x, y: x & ~y))


def instantiate(r: RegularRelation, i: int, c: str):
    """``I(R, c)`` at track ``i``.  Arity 1 gives the membership bool."""
    _check_index(r, i)
    out = instantiate_table(r.acceptor, r.tracks, i - 1, c)
    if isinstance(out, bool):
        return out
    return _rel(track_alphabet(r.base, r.arity - 1), out)


def rearrange(r: RegularRelation, perm) -> RegularRelation:
    """``πR = {(x_π(1), ..., x_π(k)) : x ∈ R}`` for a 1-based permutation."""
    perm = tuple(perm)
    k = r.arity
    if sorted(perm) != list(range(1, k + 1)):
        raise ArityError(f"{perm} is not a permutation of 1..{k}")
    mapping = [0] * k
    for j, p in enumerate(perm):
        mapping[p - 1] = j
    out = reindex(r.acceptor, r.tracks, k, mapping)
    return _rel(r.tracks, fa.minimize(out))


def link(r: RegularRelation, s: RegularRelation, i: int) -> RegularRelation:
    """Linkage ``L(R, S; i)``: coordinates ``i..m1`` of R are the first of S.

    The result has arity ``m2 + i - 1`` and holds of ``(a_1, ...)`` iff
    ``(a_1..a_m1) ∈ R`` and ``(a_i..a_{m2+i-1}) ∈ S``.
    """
    if r.base != s.base:
        raise AlphabetMismatch("relations are over different base alphabets")
    m1, m2 = r.arity, s.arity
    if not 1 <= i < m1:
        raise ArityError(f"linkage index {i} must satisfy 1 <= i < {m1}")
    arity = m2 + i - 1
    if arity < m1:
        raise ArityError(f"S of arity {m2} cannot cover coordinates {i}..{m1} of R")
    dst = track_alphabet(r.base, arity)
    left = reindex(r.acceptor, r.tracks, arity, list(range(m1)))
    right = reindex(s.acceptor, s.tracks, arity, list(range(i - 1, arity)))
    acc = intersect(intersect(left, right), valid_convolutions(dst))
    return _rel(dst, acc)


def equality_relation(base) -> RegularRelation:
    tracks = track_alphabet(tuple(base), 2)
    digits = tracks.digits.tolist()

    def step(q, c):
        a, b = digits[c]
        return 0 if a == b else None

    return RegularRelation(tracks, Automaton.from_function(tracks.names, 0, step, lambda q: True))


def llex_relation(base) -> RegularRelation:
    """``x ≤_llex y``: shorter first, equal lengths compared in symbol order."""
    tracks = track_alphabet(tuple(base), 2)
    digits = tracks.digits.tolist()
    pad = tracks.pad

    def step(q, c):
        a, b = digits[c]
        if q in ("short", "long"):
            if q == "short" and a == pad:
                return q
            if q == "long" and b == pad:
                return q
            return None
        if a == pad:
            return "short"
        if b == pad:
            return "long"
        if q == "eq":
            return "eq" if a == b else ("lt" if a < b else "gt")
        return q

    return RegularRelation(
        tracks, Automaton.from_function(tracks.names, "eq", step, lambda q: q in ("eq", "lt", "short"))
    )


def relation_from_function(base, arity, start, step, accept) -> RegularRelation:
    """Relation whose acceptor explores ``step(state, column)`` from ``start``.

    Columns are tuples of base symbols with ``None`` for the pad; ``step``
    returns ``None`` to reject.  Ill-padded inputs are removed afterwards.
    """
    tracks = track_alphabet(tuple(base), arity)
    names = list(tracks.base) + [None]
    cols = [tuple(names[d] for d in row) for row in tracks.digits.tolist()]
    aut = Automaton.from_function(tracks.names, start, lambda q, c: step(q, cols[c]), accept)
    return _rel(tracks, intersect(aut, valid_convolutions(tracks)))
