"""Compile formulas to regular relations over a presentation.

Each subformula is compiled over its own free variables, with tracks in
order of first occurrence inside that subformula.  Binary connectives
rewire both sides onto the union of their variables; quantifiers project
one track away.  Every intermediate automaton is minimal, and results are
memoised per presentation (keys ignore source positions).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .. import automata as fa
from ..automata import Automaton
from ..errors import CompileError, ResourceLimitError
from ..relations import (
    RegularRelation,
    combine,
    equality_relation,
    instantiate_table,
    intersect,
    project,
    project_infinite,
    project_mod,
    reindex,
    track_alphabet,
)
from .syntax import (
    And,
    Atom,
    Const,
    Equal,
    Exists,
    ExistsInf,
    ExistsMod,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Truth,
    as_formula,
    free_variables,
    render,
)

DEFAULT_STATE_CAP = 200_000

_OPS = {
    And: np.logical_and,
    Or: np.logical_or,
    Implies: lambda x, y: ~x | y,
    Iff: lambda x, y: x == y,
}


@dataclass(frozen=True)
class CompiledFormula:
    """Compilation result; sentences carry ``value`` and no relation."""

    variables: tuple
    relation: Optional[RegularRelation]
    source: str
    value: Optional[bool] = None

    @property
    def arity(self):
        return len(self.variables)

    def holds(self, *args, **kwargs) -> bool:
        """Evaluate at a tuple given positionally or by variable name."""
        if self.relation is None:
            return bool(self.value)
        if kwargs:
            args = tuple(kwargs[v] for v in self.variables)
        return self.relation.contains(*args)


def push_negations(f: Formula) -> Formula:
    """Move ``~`` inward past boolean connectives (never past quantifiers)."""
    if isinstance(f, Not):
        g = f.body
        if isinstance(g, Not):
            return push_negations(g.body)
        if isinstance(g, Truth):
            return Truth(not g.value)
        if isinstance(g, And):
            return Or(push_negations(Not(g.left)), push_negations(Not(g.right)))
        if isinstance(g, Or):
            return And(push_negations(Not(g.left)), push_negations(Not(g.right)))
        if isinstance(g, Implies):
            return And(push_negations(g.left), push_negations(Not(g.right)))
        if isinstance(g, Iff):
            return Iff(push_negations(g.left), push_negations(Not(g.right)))
        return Not(push_negations(g))
    if isinstance(f, (And, Or, Implies, Iff)):
        return type(f)(push_negations(f.left), push_negations(f.right))
    if isinstance(f, ExistsMod):
        return ExistsMod(f.n, f.m, f.var, push_negations(f.body))
    if isinstance(f, (Exists, Forall, ExistsInf)):
        return type(f)(f.var, push_negations(f.body))
    return f


class _Compiler:
    def __init__(self, p, state_cap):
        self.p = p
        self.cap = state_cap
        self.cache = p._cache

    def tracks(self, m):
        return track_alphabet(self.p.base, m)

    def empty(self, m):
        return Automaton.empty(self.tracks(m).names) if m else False

    def check(self, node, aut):
        if isinstance(aut, Automaton) and aut.n_states > self.cap:
            raise ResourceLimitError(
                f"subformula `{render(node)}` needs {aut.n_states} states (state cap {self.cap})"
            )
        return aut

    def run(self, f):
        hit = self.cache.get(f)
        if hit is not None:
            return hit
        out = self._compile(f)
        self.check(f, out[1])
        self.cache[f] = out
        return out

    def _lift(self, vars_, aut, target):
        """Rewire ``aut`` onto ``target`` without intersecting the universe."""
        if tuple(vars_) == tuple(target):
            return aut, True
        mapping = [target.index(v) for v in vars_]
        onto = len(set(mapping)) == len(target)
        return reindex(aut, self.tracks(len(vars_)), len(target), mapping), onto

    def align(self, vars_, aut, target):
        target = tuple(target)
        if not target:
            return aut
        if not vars_:
            return self.p.universe(len(target)) if aut else self.empty(len(target))
        lifted, onto = self._lift(vars_, aut, target)
        if onto:
            return fa.minimize(lifted)
        return intersect(lifted, self.p.universe(len(target)))

    def _compile(self, f):
        p = self.p
        if isinstance(f, Truth):
            return (), f.value
        if isinstance(f, Atom):
            return self.atom(f)
        if isinstance(f, Equal):
            return self.equal(f)
        if isinstance(f, Not):
            vars_, aut = self.run(f.body)
            if not vars_:
                return (), not aut
            return vars_, combine(p.universe(len(vars_)), aut, lambda x, y: x & ~y)
        if type(f) in _OPS:
            return self.binary(f)
        return self.quantifier(f)

    def _const(self, c: Const, node):
        if not self.p.in_domain(c.value):
            raise CompileError(f"constant {c} in `{render(node)}` is not a domain element")
        return c.value

    def atom(self, f: Atom):
        rel = self.p.relation(f.name)
        if len(f.args) != rel.arity:
            raise CompileError(f"{f.name} has arity {rel.arity} but `{render(f)}` gives {len(f.args)} arguments")
        aut = rel.acceptor
        args = list(f.args)
        k = rel.arity
        for i in range(len(args) - 1, -1, -1):
            if isinstance(args[i], Const):
                value = self._const(args[i], f)
                aut = instantiate_table(aut, self.tracks(k), i, value)
                k -= 1
                del args[i]
                if not args:
                    return (), aut
        names = [a.name for a in args]
        target = tuple(dict.fromkeys(names))
        if tuple(names) == target:
            return target, aut
        mapping = [target.index(v) for v in names]
        return target, fa.minimize(reindex(aut, self.tracks(k), len(target), mapping))

    def equal(self, f: Equal):
        p = self.p
        left, right = f.left, f.right
        if isinstance(left, Const) and isinstance(right, Const):
            return (), self._const(left, f) == self._const(right, f)
        if isinstance(left, Const):
            left, right = right, left
        if isinstance(right, Const):
            value = self._const(right, f)
            single = Automaton.from_words(self.tracks(1).names, [value])
            return (left.name,), single
        if left.name == right.name:
            return (left.name,), p.universe(1)
        key = ("=", None)
        eq = self.cache.get(key)
        if eq is None:
            eq = intersect(equality_relation(p.base).acceptor, p.universe(2))
            self.cache[key] = eq
        return (left.name, right.name), eq

    def binary(self, f):
        op = _OPS[type(f)]
        lv, la = self.run(f.left)
        rv, ra = self.run(f.right)
        target = tuple(dict.fromkeys(lv + rv))
        if not target:
            return (), bool(op(np.bool_(la), np.bool_(ra)))
        if not lv or not rv:
            # one side is a truth value
            if not lv:
                val, vars_, aut, flip = la, rv, ra, False
            else:
                val, vars_, aut, flip = ra, lv, la, True
            uni = self.p.universe(len(vars_))
            const = uni if val else self.empty(len(vars_))
            x, y = (aut, const) if flip else (const, aut)
            res = combine(x, y, op)
            if isinstance(f, (Implies, Iff)):
                res = intersect(res, uni)
            return vars_, res
        a, onto_a = self._lift(lv, la, target)
        b, onto_b = self._lift(rv, ra, target)
        res = combine(a, b, op)
        if not (onto_a and onto_b and isinstance(f, (And, Or))):
            res = intersect(res, self.p.universe(len(target)))
        return target, res

    def quantifier(self, f):
        p = self.p
        vars_, aut = self.run(f.body)
        if f.var not in vars_:
            target = vars_ + (f.var,)
            aut = self.align(vars_, aut, target)
            vars_ = target
        i = vars_.index(f.var)
        rest = vars_[:i] + vars_[i + 1 :]
        tracks = self.tracks(len(vars_))
        if isinstance(f, Exists):
            return rest, project(aut, tracks, i)
        if isinstance(f, Forall):
            neg = combine(p.universe(len(vars_)), aut, lambda x, y: x & ~y)
            out = project(neg, tracks, i)
            if not rest:
                return rest, not out
            return rest, combine(p.universe(len(rest)), out, lambda x, y: x & ~y)
        if isinstance(f, ExistsInf):
            return rest, project_infinite(aut, tracks, i)
        out = project_mod(aut, tracks, i, f.n, f.m)
        if rest:
            out = intersect(out, p.universe(len(rest)))
        return rest, out


def compile_formula(p, f, state_cap: int = DEFAULT_STATE_CAP, variables=None) -> CompiledFormula:
    """Compile ``f`` (text or AST) against presentation ``p``.

    Tracks follow the order of first occurrence of the free variables, or
    ``variables`` when given (a superset of the free variables is allowed;
    extra variables range over the whole domain).
    """
    f = as_formula(f)
    source = render(f)
    free = free_variables(f)
    order = tuple(variables) if variables is not None else free
    missing = [v for v in free if v not in order]
    if missing:
        raise CompileError(f"variable order omits free variables {missing}")
    if len(set(order)) != len(order):
        raise CompileError("variable order repeats a name")
    comp = _Compiler(p, state_cap)
    vars_, aut = comp.run(push_negations(f))
    if not order:
        return CompiledFormula((), None, source, bool(aut))
    aut = comp.check(f, comp.align(vars_, aut, order))
    rel = RegularRelation(track_alphabet(p.base, len(order)), aut, canonical=True)
    return CompiledFormula(order, rel, source)


def decide(p, sentence, state_cap: int = DEFAULT_STATE_CAP) -> bool:
    """Truth value of a sentence in ``p``."""
    f = as_formula(sentence)
    free = free_variables(f)
    if free:
        raise CompileError(f"decide needs a sentence; free variables: {', '.join(free)}")
    return compile_formula(p, f, state_cap).value


def witness(p, f, bound: int, state_cap: int = DEFAULT_STATE_CAP, variables=None) -> list:
    """Up to ``bound`` satisfying assignments, llex-least convolutions first."""
    c = compile_formula(p, f, state_cap, variables)
    if not c.variables:
        raise CompileError("witness needs at least one free variable; use decide for sentences")
    return [dict(zip(c.variables, t)) for t in c.relation.tuples(bound)]


def define_relation(p, name: str, f, variables=None, state_cap: int = DEFAULT_STATE_CAP):
    """Extend ``p`` by the relation defined by ``f`` (tracks in ``variables`` order)."""
    if name in p.relations:
        raise CompileError(f"relation name {name!r} already in the signature")
    c = compile_formula(p, f, state_cap, variables)
    if not c.variables:
        raise CompileError("a defined relation needs at least one free variable")
    return p.with_relations({name: c.relation})
