"""Finite automata over explicit, ordered alphabets.

Deterministic automata keep a dense ``(states, symbols)`` transition table
so that products, refinement and track rewiring can be done with numpy.
Nondeterministic automata keep an edge list and are only ever inputs to
:func:`determinize`.

Symbol ids are alphabet positions; length-lexicographic order on words uses
that order for ties.
"""
from __future__ import annotations

from typing import Callable, Hashable, Iterable, NamedTuple

import numpy as np

from .errors import AlphabetMismatch, SymbolError

__all__ = [
    "Symbol",
    "Automaton",
    "determinize",
    "minimize",
    "product",
    "complement",
    "is_empty",
    "is_infinite",
    "equivalent",
    "enumerate_words",
    "count_words",
]


class Symbol(NamedTuple):
    id: int
    name: str


class Automaton:
    """Acceptor ``(alphabet, states, initial, accepting, transitions)``.

    ``transitions`` is an iterable of ``(state, symbol, state)`` triples where
    the symbol is given by name.  The automaton is *deterministic* when every
    ``(state, symbol)`` pair has exactly one successor.
    """

    __slots__ = ("alphabet", "n_states", "initial", "_table", "_accept", "_edges", "_index")

    def __init__(self, alphabet, n_states, initial, accepting, transitions):
        alphabet = tuple(alphabet)
        _check_alphabet(alphabet)
        if n_states < 1:
            raise ValueError("an automaton needs at least one state")
        if not 0 <= initial < n_states:
            raise ValueError(f"initial state {initial} out of range")
        index = {name: i for i, name in enumerate(alphabet)}
        accept = np.zeros(n_states, dtype=bool)
        for q in accepting:
            if not 0 <= q < n_states:
                raise ValueError(f"accepting state {q} out of range")
            accept[q] = True
        edges = set()
        for s, a, t in transitions:
            if not (0 <= s < n_states and 0 <= t < n_states):
                raise ValueError(f"transition {s} -{a}-> {t} out of range")
            if a not in index:
                raise SymbolError(f"symbol {a!r} not in alphabet")
            edges.add((s, index[a], t))
        table = np.full((n_states, len(alphabet)), -1, dtype=np.int32)
        deterministic = True
        for s, a, t in edges:
            if table[s, a] >= 0:
                deterministic = False
                break
            table[s, a] = t
        if deterministic and (table < 0).any():
            deterministic = False
        self.alphabet = alphabet
        self.n_states = int(n_states)
        self.initial = int(initial)
        self._accept = accept
        self._index = index
        if deterministic:
            table.flags.writeable = False
            self._table = table
            self._edges = None
        else:
            self._table = None
            self._edges = tuple(sorted(edges))
        accept.flags.writeable = False

    @classmethod
    def from_table(cls, alphabet, table, accept, initial=0, index=None):
        """Wrap a complete transition table without validation or copying."""
        obj = cls.__new__(cls)
        obj.alphabet = tuple(alphabet)
        obj._index = index if index is not None else {a: i for i, a in enumerate(obj.alphabet)}
        table = np.asarray(table, dtype=np.int32)
        accept = np.asarray(accept, dtype=bool)
        table.flags.writeable = False
        accept.flags.writeable = False
        obj._table = table
        obj._accept = accept
        obj._edges = None
        obj.n_states = int(table.shape[0])
        obj.initial = int(initial)
        return obj

    @classmethod
    def from_function(cls, alphabet, start: Hashable, step: Callable, accept: Callable):
        """Explore ``step(state, symbol_id)`` breadth-first from ``start``.

        ``step`` may return ``None`` for a rejecting sink.
        """
        alphabet = tuple(alphabet)
        k = len(alphabet)
        ids = {start: 0}
        states = [start]
        rows = []
        i = 0
        while i < len(states):
            q = states[i]
            row = []
            for a in range(k):
                r = None if q is _SINK else step(q, a)
                if r is None:
                    r = _SINK
                j = ids.get(r)
                if j is None:
                    j = ids[r] = len(states)
                    states.append(r)
                row.append(j)
            rows.append(row)
            i += 1
        acc = [q is not _SINK and bool(accept(q)) for q in states]
        table = np.array(rows, dtype=np.int32).reshape(len(states), k)
        return cls.from_table(alphabet, table, acc)

    @classmethod
    def universal(cls, alphabet):
        k = len(tuple(alphabet))
        return cls.from_table(alphabet, np.zeros((1, k), dtype=np.int32), [True])

    @classmethod
    def empty(cls, alphabet):
        k = len(tuple(alphabet))
        return cls.from_table(alphabet, np.zeros((1, k), dtype=np.int32), [False])

    @classmethod
    def from_words(cls, alphabet, words: Iterable):
        """Minimal DFA accepting exactly the given finite set of words."""
        alphabet = tuple(alphabet)
        index = {a: i for i, a in enumerate(alphabet)}
        trie = [{}]
        final = [False]
        for w in words:
            node = 0
            for ch in w:
                if ch not in index:
                    raise SymbolError(f"symbol {ch!r} not in alphabet")
                a = index[ch]
                nxt = trie[node].get(a)
                if nxt is None:
                    nxt = trie[node][a] = len(trie)
                    trie.append({})
                    final.append(False)
                node = nxt
            final[node] = True
        sink = len(trie)
        table = np.full((sink + 1, len(alphabet)), sink, dtype=np.int32)
        for s, edges in enumerate(trie):
            for a, t in edges.items():
                table[s, a] = t
        return minimize(cls.from_table(alphabet, table, final + [False]))

    # -- views ---------------------------------------------------------------

    @property
    def deterministic(self) -> bool:
        return self._table is not None

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            raise ValueError("automaton is nondeterministic; determinize it first")
        return self._table

    @property
    def accept_mask(self) -> np.ndarray:
        return self._accept

    @property
    def accepting(self) -> frozenset:
        return frozenset(np.flatnonzero(self._accept).tolist())

    @property
    def symbols(self) -> tuple:
        return tuple(Symbol(i, a) for i, a in enumerate(self.alphabet))

    @property
    def transitions(self) -> frozenset:
        if self._table is None:
            return frozenset((s, self.alphabet[a], t) for s, a, t in self._edges)
        n, k = self._table.shape
        return frozenset(
            (s, self.alphabet[a], int(self._table[s, a])) for s in range(n) for a in range(k)
        )

    def symbol_ids(self, word) -> list:
        try:
            return [self._index[ch] for ch in word]
        except KeyError as exc:
            raise SymbolError(f"symbol {exc.args[0]!r} not in alphabet") from None

    def accepts(self, word) -> bool:
        ids = self.symbol_ids(word)
        if self._table is not None:
            q = self.initial
            t = self._table
            for a in ids:
                q = t[q, a]
            return bool(self._accept[q])
        current = {self.initial}
        succ = {}
        for s, a, t in self._edges:
            succ.setdefault((s, a), []).append(t)
        for a in ids:
            current = {t for s in current for t in succ.get((s, a), ())}
        return any(self._accept[q] for q in current)

    def __eq__(self, other):
        if not isinstance(other, Automaton):
            return NotImplemented
        if self.alphabet != other.alphabet or self.initial != other.initial:
            return False
        if self.deterministic != other.deterministic:
            return False
        if not np.array_equal(self._accept, other._accept):
            return False
        if self.deterministic:
            return np.array_equal(self._table, other._table)
        return self._edges == other._edges

    def __hash__(self):
        body = self._table.tobytes() if self._table is not None else repr(self._edges).encode()
        return hash((self.alphabet, self.initial, self._accept.tobytes(), body))

    def __repr__(self):
        kind = "DFA" if self.deterministic else "NFA"
        return f"<{kind} states={self.n_states} symbols={len(self.alphabet)} accepting={int(self._accept.sum())}>"


class _SinkType:
    __slots__ = ()

    def __repr__(self):
        return "SINK"


_SINK = _SinkType()


def _check_alphabet(alphabet):
    if not alphabet:
        raise ValueError("alphabet must be nonempty")
    if len(set(alphabet)) != len(alphabet):
        raise ValueError("alphabet symbol names must be unique")


def _require_same_alphabet(a, b):
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch("automata are over different alphabets")


def word_from_ids(alphabet, ids):
    """Render symbol ids as a ``str`` when every name is one character."""
    names = [alphabet[i] for i in ids]
    if all(len(n) == 1 for n in alphabet):
        return "".join(names)
    return tuple(names)


# -- low-level table algorithms ----------------------------------------------


def bfs_order(table, initial):
    """Reachable states in breadth-first order with alphabet-ordered edges.

    Returns ``(order, position)`` where ``position[s]`` is -1 for unreachable
    states.
    """
    n = table.shape[0]
    pos = np.full(n, -1, dtype=np.int64)
    pos[initial] = 0
    frontier = np.array([initial], dtype=np.int64)
    chunks = [frontier]
    count = 1
    # one level at a time: row-major order of the frontier's rows is the
    # order a state-by-state search would discover them
    while frontier.size:
        succ = table[frontier].ravel()
        succ = succ[pos[succ] < 0]
        if not succ.size:
            break
        _, first = np.unique(succ, return_index=True)
        fresh = succ[np.sort(first)].astype(np.int64)
        pos[fresh] = np.arange(count, count + fresh.size)
        count += fresh.size
        chunks.append(fresh)
        frontier = fresh
    return np.concatenate(chunks), pos


def _refine(table, accept):
    """Coarsest stable partition (Moore refinement, hashed signatures)."""
    n, k = table.shape
    cls = accept.astype(np.int64)
    _, cls = np.unique(cls, return_inverse=True)
    cls = cls.reshape(-1)
    ncls = int(cls.max()) + 1
    if k == 0:
        return cls
    rng = np.random.default_rng(0x5EED + k)
    h = rng.integers(1, 2**63, size=k, dtype=np.uint64) | np.uint64(1)
    while True:
        # old class in the high bits, so hash collisions never merge classes
        rows = cls[table].astype(np.uint64)
        key = (cls.astype(np.uint64) << np.uint64(40)) | ((rows * h).sum(axis=1) >> np.uint64(24))
        _, new = np.unique(key, return_inverse=True)
        new = new.reshape(-1)
        new_n = int(new.max()) + 1
        cls = new
        if new_n == ncls:
            break
        ncls = new_n
    # hashing is only a shortcut: confirm stability exactly
    rows = cls[table]
    _, rep = np.unique(cls, return_index=True)
    if not np.array_equal(rows, rows[rep[cls]]):
        while True:
            sig = np.concatenate([cls[:, None], cls[table]], axis=1)
            _, new = np.unique(sig, axis=0, return_inverse=True)
            new = new.reshape(-1)
            if int(new.max()) + 1 == ncls:
                cls = new
                break
            cls = new
            ncls = int(new.max()) + 1
    return cls


def canonical_table(table, accept, initial):
    """Minimal complete DFA, states numbered in breadth-first order."""
    order, pos = bfs_order(table, initial)
    if len(order) < table.shape[0]:
        table = pos[table[order]]
        accept = accept[order]
        initial = 0
    cls = _refine(table, accept)
    m = int(cls.max()) + 1
    _, rep = np.unique(cls, return_index=True)
    qt = cls[table[rep]]
    qa = accept[rep]
    order, pos = bfs_order(qt, cls[initial])
    return pos[qt[order]].astype(np.int32), qa[order].copy(), m


def product_table(t1, a1, i1, t2, a2, i2, op):
    """Reachable synchronous product; ``op`` combines the accept masks."""
    n2 = t2.shape[0]
    size = t1.shape[0] * n2
    index = np.full(size, -1, dtype=np.int64)
    start = i1 * n2 + i2
    index[start] = 0
    count = 1
    frontier = np.array([start], dtype=np.int64)
    rows = []
    codes = [frontier]
    while frontier.size:
        succ = t1[frontier // n2].astype(np.int64) * n2 + t2[frontier % n2]
        rows.append(succ)
        cand = np.unique(succ)
        new = cand[index[cand] < 0]
        index[new] = np.arange(count, count + new.size)
        count += new.size
        frontier = new
        if new.size:
            codes.append(new)
    allcodes = np.concatenate(codes)
    table = index[np.concatenate(rows)].astype(np.int32)
    accept = op(a1[allcodes // n2], a2[allcodes % n2])
    return table, accept


def subset_table(succ, init_bits, accept_bits):
    """Subset construction over bitset successor masks.

    ``succ`` has shape ``(n, k, W)`` (uint64): bit ``t`` of ``succ[s, a]``
    is set when ``s -a-> t``.  A subset is accepting when it meets
    ``accept_bits``.  Returns ``(table, accept)`` with the start subset as
    state 0.
    """
    n, k, w = succ.shape
    row_type = np.dtype((np.void, 8 * w))

    def key_of(bits):
        return bits.tobytes()

    start = np.asarray(init_bits, dtype=np.uint64)
    subsets = [start]
    ids = {key_of(start): 0}
    rows = []
    i = 0
    while i < len(subsets):
        bits = np.unpackbits(subsets[i].view(np.uint8), bitorder="little")[:n]
        members = np.flatnonzero(bits)
        if members.size == 0:
            rows.append(np.full(k, i, dtype=np.int32))
            i += 1
            continue
        if members.size == 1:
            targets = succ[members[0]]
        else:
            targets = np.bitwise_or.reduce(succ[members], axis=0)
        flat = np.ascontiguousarray(targets).view(row_type).ravel()
        uniq, first, inv = np.unique(flat, return_index=True, return_inverse=True)
        mapped = np.empty(len(uniq), dtype=np.int32)
        for j, u in enumerate(uniq.tolist()):
            sid = ids.get(u)
            if sid is None:
                sid = ids[u] = len(subsets)
                subsets.append(targets[first[j]].copy())
            mapped[j] = sid
        rows.append(mapped[inv.reshape(-1)])
        i += 1
    table = np.stack(rows).astype(np.int32)
    acc_bits = np.asarray(accept_bits, dtype=np.uint64)
    accept = np.array([bool((s & acc_bits).any()) for s in subsets])
    return table, accept


def bitset(indices, n):
    """Pack state indices into a uint64 bitset of ``ceil(n/64)`` words."""
    w = max(1, (n + 63) // 64)
    out = np.zeros(w, dtype=np.uint64)
    for q in np.atleast_1d(np.asarray(indices, dtype=np.int64)).tolist():
        out[q >> 6] |= np.uint64(1) << np.uint64(q & 63)
    return out


def successor_bits(n, k, sources, symbols, targets):
    """Build the ``(n, k, W)`` successor bitsets from parallel edge arrays."""
    w = max(1, (n + 63) // 64)
    succ = np.zeros((n, k, w), dtype=np.uint64)
    targets = np.asarray(targets, dtype=np.int64)
    bits = np.left_shift(np.uint64(1), (targets & 63).astype(np.uint64))
    np.bitwise_or.at(succ, (np.asarray(sources), np.asarray(symbols), targets >> 6), bits)
    return succ


def coreachable(table, accept):
    live = accept.copy()
    while True:
        nxt = live | live[table].any(axis=1)
        if np.array_equal(nxt, live):
            return live
        live = nxt


def reachable(table, initial):
    _, pos = bfs_order(table, initial)
    return pos >= 0


# -- public operations ------------------------------------------------------


def determinize(a: Automaton) -> Automaton:
    """Subset construction; deterministic inputs are returned unchanged."""
    if a.deterministic:
        return a
    n, k = a.n_states, len(a.alphabet)
    if a._edges:
        s, sym, t = (np.array(col) for col in zip(*a._edges))
    else:
        s = sym = t = np.zeros(0, dtype=np.int64)
    succ = successor_bits(n, k, s, sym, t)
    table, accept = subset_table(succ, bitset([a.initial], n), bitset(np.flatnonzero(a._accept), n))
    return Automaton.from_table(a.alphabet, table, accept, 0, a._index)


def minimize(a: Automaton) -> Automaton:
    """Minimal complete DFA in canonical breadth-first numbering."""
    a = determinize(a)
    table, accept, _ = canonical_table(a.table, a.accept_mask, a.initial)
    return Automaton.from_table(a.alphabet, table, accept, 0, a._index)


_MODES = {
    "and": np.logical_and,
    "or": np.logical_or,
    "minus": lambda x, y: x & ~y,
    "xor": np.logical_xor,
    "iff": lambda x, y: x == y,
    "implies": lambda x, y: ~x | y,
}


def product(a: Automaton, b: Automaton, mode: str = "and") -> Automaton:
    """Intersection, union or difference (``mode`` in and/or/minus)."""
    _require_same_alphabet(a, b)
    op = _MODES.get(mode)
    if op is None:
        raise ValueError(f"unknown product mode {mode!r}")
    a, b = determinize(a), determinize(b)
    table, accept = product_table(a.table, a.accept_mask, a.initial, b.table, b.accept_mask, b.initial, op)
    return minimize(Automaton.from_table(a.alphabet, table, accept, 0, a._index))


def complement(a: Automaton, universe: Automaton) -> Automaton:
    """``L(universe) minus L(a)``; complements are always relative."""
    return product(universe, a, "minus")


def is_empty(a: Automaton):
    """``(True, None)`` or ``(False, w)`` with ``w`` the llex-least accepted word."""
    a = determinize(a)
    table = a.table
    n = a.n_states
    parent = np.full(n, -1, dtype=np.int64)
    via = np.full(n, -1, dtype=np.int64)
    seen = np.zeros(n, dtype=bool)
    seen[a.initial] = True
    order = [a.initial]
    i = 0
    while i < len(order):
        q = order[i]
        if a.accept_mask[q]:
            ids = []
            while parent[q] >= 0:
                ids.append(int(via[q]))
                q = int(parent[q])
            return False, word_from_ids(a.alphabet, ids[::-1])
        row = table[q]
        fresh_mask = ~seen[row]
        if fresh_mask.any():
            fresh = row[fresh_mask]
            syms = np.flatnonzero(fresh_mask)
            _, first = np.unique(fresh, return_index=True)
            first = np.sort(first)
            for j in first:
                t = int(fresh[j])
                seen[t] = True
                parent[t] = q
                via[t] = int(syms[j])
                order.append(t)
        i += 1
    return True, None


def is_infinite(a: Automaton) -> bool:
    """True iff some cycle is reachable and co-reachable to acceptance."""
    a = determinize(a)
    table = a.table
    alive = reachable(table, a.initial) & coreachable(table, a.accept_mask)
    while True:
        nxt = alive & alive[table].any(axis=1)
        if np.array_equal(nxt, alive):
            break
        alive = nxt
    return bool(alive.any())


def equivalent(a: Automaton, b: Automaton) -> bool:
    _require_same_alphabet(a, b)
    return minimize(a) == minimize(b)


def _length_table(table, accept, upto):
    """``can[r][s]``: some accepted word of length exactly ``r`` from ``s``."""
    can = [accept.copy()]
    for _ in range(upto):
        can.append(can[-1][table].any(axis=1))
    return can


def enumerate_ids(a: Automaton, max_count: int):
    """Yield accepted words as symbol-id lists in length-lexicographic order."""
    if max_count < 0:
        raise ValueError("max_count must be non-negative")
    if max_count == 0:
        return
    a = minimize(a)
    table = a.table
    finite = not is_infinite(a)
    if finite and is_empty(a)[0]:
        return
    limit = a.n_states if finite else None
    can = [a.accept_mask.copy()]
    produced = 0
    length = 0
    while limit is None or length < limit:
        while len(can) <= length:
            can.append(can[-1][table].any(axis=1))
        if can[length][a.initial]:
            out = _words_of_length(table, can, a.initial, length, max_count - produced)
            produced += len(out)
            yield from out
            if produced >= max_count:
                return
        length += 1


def _words_of_length(table, can, initial, length, budget):
    """Up to ``budget`` accepted words of exactly ``length``, in lexicographic order.

    ``can[j][q]`` says some word of length ``j`` leads from ``q`` to acceptance.
    Depth-first in symbol order, with an explicit stack.
    """
    if length == 0:
        return [[]]
    out = []
    prefix = []
    stack = [(initial, iter(np.flatnonzero(can[length - 1][table[initial]]).tolist()))]
    while stack:
        q, syms = stack[-1]
        sym = next(syms, None)
        if sym is None:
            stack.pop()
            if prefix:
                prefix.pop()
            continue
        prefix.append(sym)
        remaining = length - len(prefix)
        if remaining == 0:
            out.append(list(prefix))
            prefix.pop()
            if len(out) >= budget:
                break
        else:
            t = int(table[q, sym])
            stack.append((t, iter(np.flatnonzero(can[remaining - 1][table[t]]).tolist())))
    return out


def enumerate_words(a: Automaton, max_count: int) -> list:
    """First ``max_count`` accepted words in length-lexicographic order."""
    return [word_from_ids(a.alphabet, ids) for ids in enumerate_ids(a, max_count)]


def count_words(a: Automaton):
    """Exact size of a finite language, or ``None`` when infinite."""
    a = minimize(a)
    if is_infinite(a):
        return None
    table = a.table
    live = coreachable(table, a.accept_mask)
    total = 0
    counts = {a.initial: 1}
    for _ in range(a.n_states + 1):
        total += sum(c for q, c in counts.items() if a.accept_mask[q])
        nxt = {}
        for q, c in counts.items():
            for t in table[q].tolist():
                if live[t]:
                    nxt[t] = nxt.get(t, 0) + c
        counts = nxt
        if not counts:
            break
    return total


def random_word(a: Automaton, length: int, rng):
    """A random accepted word of exactly ``length`` symbols, or ``None``.

    Each step picks uniformly among symbols that can still complete to an
    accepted word of the requested length.
    """
    a = determinize(a)
    table = a.table
    can = _length_table(table, a.accept_mask, length)
    if not can[length][a.initial]:
        return None
    q = a.initial
    ids = []
    for r in range(length, 0, -1):
        ok = np.flatnonzero(can[r - 1][table[q]])
        sym = int(ok[rng.integers(len(ok))])
        ids.append(sym)
        q = int(table[q, sym])
    return word_from_ids(a.alphabet, ids)
