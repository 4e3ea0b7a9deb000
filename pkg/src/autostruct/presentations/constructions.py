"""Constructions preserving automaticity: products, unions, quotients, recoding."""
from __future__ import annotations

import math

import numpy as np

from .. import automata as fa
from ..automata import Automaton
from ..errors import PreconditionError
from ..logic.compiler import DEFAULT_STATE_CAP, compile_formula, decide
from ..relations import RegularRelation, combine, equality_relation, llex_relation, track_alphabet
from .core import Presentation

__all__ = [
    "product_presentation",
    "disjoint_union",
    "ordered_sum",
    "quotient",
    "binary_recode",
    "pair_word",
    "tagged_word",
    "recode_word",
    "symbol_pool",
]

_POOL_ASCII = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


def symbol_pool(count, avoid=()):
    """``count`` distinct single-character symbol names, skipping ``avoid``."""
    avoid = set(avoid)
    out = []
    for ch in _POOL_ASCII:
        if ch not in avoid:
            out.append(ch)
            if len(out) == count:
                return out
    code = 0x100
    while len(out) < count:
        ch = chr(code)
        if ch.isprintable() and not ch.isspace() and ch not in avoid:
            out.append(ch)
        code += 1
    return out


def _wrap(tracks, table, accept, initial=0):
    table, accept, _ = fa.canonical_table(np.asarray(table), np.asarray(accept, dtype=bool), initial)
    return Automaton.from_table(tracks.names, table, accept)


def _stay_table(aut, digits_src, src_tracks):
    """Transition columns for source digits, keeping the state on all-pad columns."""
    stay = (digits_src == src_tracks.pad).all(axis=1)
    codes = np.where(stay, 0, digits_src @ src_tracks.weights)
    t = aut.table[:, codes]
    if stay.any():
        t[:, stay] = np.arange(aut.n_states, dtype=np.int32)[:, None]
    return t


# -- products ----------------------------------------------------------------


def _filler(p_base, q_base):
    used = set(p_base) | set(q_base)
    return "#" if "#" not in used else symbol_pool(1, avoid=used)[0]


def _product_base(p_base, q_base):
    base = list(p_base) + [a for a in q_base if a not in p_base]
    return tuple(base + [_filler(p_base, q_base)])


def pair_word(p_base, q_base, x, y):
    """Encoding of the pair ``(x, y)`` in ``product_presentation``: ``x1 y1 x2 y2 ...``."""
    f = _filler(p_base, q_base)
    n = max(len(x), len(y))
    x, y = x.ljust(n, f), y.ljust(n, f)
    return "".join(a + b for a, b in zip(x, y))


def _component_codes(tracks, base, comp_tracks, filler):
    """Column codes of ``tracks`` seen by one component (filler and foreign symbols as pads).

    Returns the codes and a mask of columns using a symbol the component lacks.
    """
    index = {a: i for i, a in enumerate(comp_tracks.base)}
    lookup = np.array([index.get(a, -1) for a in base] + [comp_tracks.pad], dtype=np.int64)
    lookup[base.index(filler)] = comp_tracks.pad
    d = lookup[tracks.digits]
    bad = (d < 0).any(axis=1)
    d = np.where(d < 0, comp_tracks.pad, d)
    return d, bad


def _interleaved_automaton(pa, pt, qa, qt, base, arity, filler):
    """Run ``pa`` on odd columns and ``qa`` on even ones; accept after an even number of columns."""
    tracks = track_alphabet(base, arity)
    pd, pbad = _component_codes(tracks, base, pt, filler)
    qd, qbad = _component_codes(tracks, base, qt, filler)
    t1 = _stay_table(pa, pd, pt)
    t2 = _stay_table(qa, qd, qt)
    n1, n2 = pa.n_states, qa.n_states
    dead = 2 * n1 * n2
    i = np.arange(n1)[:, None, None]
    j = np.arange(n2)[None, :, None]
    odd = np.where(pbad, dead, t1[:, None, :] * n2 + j + n1 * n2)
    even = np.where(qbad, dead, i * n2 + t2[None, :, :])
    odd = np.broadcast_to(odd, (n1, n2, len(pd))).reshape(n1 * n2, -1)
    even = np.broadcast_to(even, (n1, n2, len(qd))).reshape(n1 * n2, -1)
    table = np.concatenate([odd, even, np.full((1, len(pd)), dead)]).astype(np.int32)
    acc = np.zeros(dead + 1, dtype=bool)
    acc[: n1 * n2] = (pa.accept_mask[:, None] & qa.accept_mask[None, :]).reshape(-1)
    initial = pa.initial * n2 + qa.initial
    return _wrap(tracks, table, acc, initial)


def product_presentation(p: Presentation, q: Presentation, name=None) -> Presentation:
    """Cartesian product; relations hold componentwise.

    A pair ``(x, y)`` is the interleaving ``x1 y1 x2 y2 ...`` with the shorter
    component filled by a fresh filler symbol (see :func:`pair_word`).  Tracks
    stay synchronous because every encoding has even length.
    """
    if set(p.signature) != set(q.signature):
        raise PreconditionError(f"signature mismatch: {tuple(p.signature)} vs {tuple(q.signature)}")
    base = _product_base(p.base, q.base)
    f = base[-1]
    ip = {a: i for i, a in enumerate(p.base)}
    iq = {a: i for i, a in enumerate(q.base)}
    ptab, qtab = p.domain.table, q.domain.table
    pacc, qacc = p.domain.accept_mask, q.domain.accept_mask

    def step(state, a):
        # (p state or None once ended, q state or None, pending odd symbol was filler, parity)
        sp, sq, pf, odd = state
        sym = base[a]
        if not odd:
            if sym == f:
                return None if sp is not None and not pacc[sp] else (None, sq, True, True)
            if sp is None or sym not in ip:
                return None
            return (int(ptab[sp, ip[sym]]), sq, False, True)
        if sym == f:
            if pf or (sq is not None and not qacc[sq]):
                return None
            return (sp, None, False, False)
        if sq is None or sym not in iq:
            return None
        return (sp, int(qtab[sq, iq[sym]]), False, False)

    def accept(state):
        sp, sq, _, odd = state
        return not odd and (sp is None or pacc[sp]) and (sq is None or qacc[sq])

    domain = fa.minimize(Automaton.from_function(base, (p.domain.initial, q.domain.initial, False, False), step, accept))
    rels = {}
    for rname, k in p.signature:
        pr, qr = p.relations[rname], q.relations[rname]
        aut = _interleaved_automaton(pr.acceptor, pr.tracks, qr.acceptor, qr.tracks, base, k, f)
        rels[rname] = RegularRelation(track_alphabet(base, k), aut, canonical=True)
    return Presentation(base, domain, rels, name=name or f"({p.name} x {q.name})")


# -- unions ------------------------------------------------------------------


def _union_base(p, q):
    base = list(p.base) + [a for a in q.base if a not in p.base]
    tags = symbol_pool(2, avoid=set(base) | {"#"})
    return tuple(base + tags), tags[0], tags[1]


def tagged_word(tag, x):
    return tag + x


def _translate(aut, src, dst, prefix_tag=None):
    """Re-express ``aut`` over the larger base ``dst.base``; foreign symbols reject.

    With ``prefix_tag``, every track must first read ``prefix_tag``.
    """
    index = {a: i for i, a in enumerate(src.base)}
    lookup = np.array([index.get(a, -1) for a in dst.base] + [src.pad], dtype=np.int64)
    d = lookup[dst.digits]
    bad = (d < 0).any(axis=1)
    n = aut.n_states
    dead = n
    t = _stay_table(aut, np.where(d < 0, 0, d), src)
    table = np.full((n + 1, dst.size), dead, dtype=np.int32)
    table[:n] = np.where(bad[None, :], dead, t)
    accept = np.concatenate([aut.accept_mask, [False]])
    initial = aut.initial
    if prefix_tag is not None:
        start = n + 1
        table = np.vstack([table, np.full((1, dst.size), dead, dtype=np.int32)])
        tag = dst.base.index(prefix_tag)
        code = int(sum(tag * w for w in dst.weights))
        table[start, code] = aut.initial
        accept = np.concatenate([accept, [False]])
        initial = start
    return _wrap(dst, table, accept, initial)


def _tagged_parts(p, q, base, ta, tb, arity, rp, rq_):
    tracks = track_alphabet(base, arity)
    a = _translate(rp.acceptor, rp.tracks, tracks, ta) if rp is not None else Automaton.empty(tracks.names)
    b = _translate(rq_.acceptor, rq_.tracks, tracks, tb) if rq_ is not None else Automaton.empty(tracks.names)
    return tracks, a, b


def _as_relation(p):
    t = p.tracks(1)
    return RegularRelation(t, Automaton.from_table(t.names, p.domain.table, p.domain.accept_mask, p.domain.initial), canonical=True)


def disjoint_union(p: Presentation, q: Presentation, name=None) -> Presentation:
    """Tagged union: ``x`` from p becomes ``tag_p·x``; relations hold within each part."""
    if set(p.signature) != set(q.signature):
        raise PreconditionError(f"signature mismatch: {tuple(p.signature)} vs {tuple(q.signature)}")
    base, ta, tb = _union_base(p, q)
    _, da, db = _tagged_parts(p, q, base, ta, tb, 1, _as_relation(p), _as_relation(q))
    domain = Automaton.from_table(base, *_or_table(da, db))
    rels = {}
    for rname, k in p.signature:
        tracks, a, b = _tagged_parts(p, q, base, ta, tb, k, p.relations[rname], q.relations[rname])
        rels[rname] = RegularRelation(tracks, combine(a, b, np.logical_or), canonical=True)
    out = Presentation(base, domain, rels, name=name or f"({p.name} + {q.name})")
    out.tags = (ta, tb)
    return out


def _or_table(a, b):
    u = combine(a, b, np.logical_or)
    return u.table, u.accept_mask, u.initial


def ordered_sum(p: Presentation, q: Presentation, relation="Le", name=None) -> Presentation:
    """Disjoint union where additionally every element of p is ``relation``-below q."""
    out = disjoint_union(p, q, name=name or f"({p.name} ⊕ {q.name})")
    ta, tb = out.tags
    base = out.base
    tracks = track_alphabet(base, 2)
    ia, ib = base.index(ta), base.index(tb)
    first = int(ia * tracks.weights[0] + ib * tracks.weights[1])
    table = np.full((3, tracks.size), 2, dtype=np.int32)
    table[0, first] = 1
    table[1, :] = 1
    cross = Automaton.from_table(tracks.names, table, [False, True, False])
    rel = out.relations[relation]
    rels = dict(out.relations)
    rels[relation] = RegularRelation(tracks, combine(rel.acceptor, cross, np.logical_or), canonical=True)
    res = Presentation(base, out.domain, rels, name=out.name)
    res.tags = out.tags
    return res


# -- quotients ---------------------------------------------------------------

_AXIOMS = {
    "reflexivity": "A x. _E(x,x)",
    "symmetry": "A x. A y. (_E(x,y) -> _E(y,x))",
    "transitivity": "A x. A y. A z. ((_E(x,y) & _E(y,z)) -> _E(x,z))",
}


def _resolve_relation(p, e):
    if isinstance(e, str):
        return p.relation(e)
    return e


def quotient(p: Presentation, e, mode: str = "restrict", check: bool = True, congruence: bool = False,
             state_cap: int = DEFAULT_STATE_CAP) -> Presentation:
    """Quotient of ``p`` by the equivalence ``e`` (a relation or a relation name).

    The new domain is the set of llex-least class members.  In ``restrict``
    mode relations are restricted to representatives, which is the quotient
    when ``e`` is a congruence; in ``lift`` mode a relation holds of
    representatives iff it holds of some tuple of class members.
    """
    if mode not in ("restrict", "lift"):
        raise ValueError("mode must be 'restrict' or 'lift'")
    e = _resolve_relation(p, e)
    if e.arity != 2 or e.base != p.base:
        raise PreconditionError("quotient needs a binary relation over the presentation's alphabet")
    llex = llex_relation(p.base)
    strict = combine(llex.acceptor, equality_relation(p.base).acceptor, lambda x, y: x & ~y)
    aux = p.with_relations({"_E": e, "_Lt": RegularRelation(llex.tracks, strict, canonical=True)})
    if check:
        for axiom, text in _AXIOMS.items():
            if not decide(aux, text, state_cap):
                raise PreconditionError(f"not an equivalence relation: {axiom} fails", failed=axiom)
        if congruence:
            for rname, k in p.signature:
                xs = [f"x{i}" for i in range(k)]
                ys = [f"y{i}" for i in range(k)]
                same = " & ".join(f"_E({x},{y})" for x, y in zip(xs, ys))
                body = f"(({same}) & {rname}({','.join(xs)})) -> {rname}({','.join(ys)})"
                text = " ".join(f"A {v}." for v in xs + ys) + f" ({body})"
                if not decide(aux, text, state_cap):
                    raise PreconditionError(f"equivalence is not a congruence for {rname}", failed=f"congruence:{rname}")
    rep = compile_formula(aux, "~ E y. (_Lt(y,x) & _E(x,y))", state_cap).relation
    domain = Automaton.from_table(p.base, rep.acceptor.table, rep.acceptor.accept_mask, rep.acceptor.initial)
    if mode == "restrict":
        rels = dict(p.relations)
    else:
        rels = {}
        for rname, k in p.signature:
            xs = [f"x{i}" for i in range(k)]
            ys = [f"y{i}" for i in range(k)]
            links = " & ".join(f"_E({x},{y})" for x, y in zip(xs, ys))
            text = "".join(f"E {y}. " for y in ys) + f"({links} & {rname}({','.join(ys)}))"
            rels[rname] = compile_formula(aux, text, state_cap, variables=xs).relation
    return Presentation(p.base, domain, rels, name=f"{p.name}/E", notes=p.notes)


# -- binary recoding ---------------------------------------------------------


def recode_word(base, x):
    """Binary block encoding of ``x`` used by :func:`binary_recode`."""
    w = max(1, math.ceil(math.log2(len(base))))
    index = {a: i for i, a in enumerate(base)}
    return "".join(format(index[ch], f"0{w}b") for ch in x)


def _recode_automaton(aut, tracks, w):
    k = tracks.arity
    bt = track_alphabet(("0", "1"), k)
    d = tracks.digits
    shifts = np.arange(w - 1, -1, -1)
    bits = np.where(d[:, None, :] == tracks.pad, 2, (d[:, None, :] >> shifts[None, :, None]) & 1)
    cols = (bits * bt.weights[None, None, :]).sum(axis=2)  # (C, w)
    C = d.shape[0]
    node = np.zeros(C, dtype=np.int64)
    count = 1
    child_edges = []  # (parent, col, child)
    for i in range(w - 1):
        pairs = node * bt.size + cols[:, i]
        uniq, inv = np.unique(pairs, return_inverse=True)
        ids = np.arange(count, count + len(uniq))
        child_edges.append((uniq // bt.size, uniq % bt.size, ids))
        node = ids[inv.reshape(-1)]
        count += len(uniq)
    n = aut.n_states
    N = count
    dead = n * N
    table = np.full((n, N, bt.size), dead, dtype=np.int64)
    base_state = (np.arange(n, dtype=np.int64) * N)[:, None]
    for parent, col, child in child_edges:
        table[:, parent, col] = base_state + child[None, :]
    table[:, node, cols[:, w - 1]] = aut.table[:, np.arange(C)].astype(np.int64) * N
    table = np.vstack([table.reshape(n * N, bt.size), np.full((1, bt.size), dead)])
    accept = np.zeros(n * N + 1, dtype=bool)
    accept[np.arange(n) * N] = aut.accept_mask
    return _wrap(bt, table.astype(np.int32), accept, aut.initial * N)


def binary_recode(p: Presentation, name=None) -> Presentation:
    """Isomorphic copy of ``p`` over ``{0,1}``: each symbol becomes a fixed-width bit block."""
    w = max(1, math.ceil(math.log2(len(p.base))))
    t1 = p.tracks(1)
    dom = _recode_automaton(Automaton.from_table(t1.names, p.domain.table, p.domain.accept_mask, p.domain.initial), t1, w)
    domain = Automaton.from_table(("0", "1"), dom.table, dom.accept_mask)
    rels = {}
    for rname, rel in p.relations.items():
        acc = _recode_automaton(rel.acceptor, rel.tracks, w)
        rels[rname] = RegularRelation(track_alphabet(("0", "1"), rel.arity), acc, canonical=True)
    return Presentation(("0", "1"), domain, rels, name=name or f"binary({p.name})", notes=p.notes)
