"""Runtime check of the constant-growth property of automatic functions.

If the graph of f is a regular relation recognised by an automaton with C
states, then |f(x1..xn)| <= max |xi| + C.  A violation would point at a bug
in the relation calculus, so the check doubles as a regression test.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import automata as fa
from ..errors import PreconditionError
from ..logic.compiler import DEFAULT_STATE_CAP, decide
from ..relations import instantiate_table
from .core import Presentation


@dataclass
class GrowthReport:
    relation: str
    constant: int
    checked: int = 0
    max_excess: int = None
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def is_functional(p: Presentation, fname: str, state_cap=DEFAULT_STATE_CAP) -> bool:
    """Decide that ``fname`` is the graph of a total function of its first k-1 arguments."""
    k = p.relation(fname).arity
    xs = [f"x{i}" for i in range(k - 1)]
    args = ",".join(xs)
    sep = "," if xs else ""
    prefix = "".join(f"A {x}. " for x in xs)
    total = f"{prefix}E y. {fname}({args}{sep}y)"
    unique = f"{prefix}A y. A w. (({fname}({args}{sep}y) & {fname}({args}{sep}w)) -> y = w)"
    return decide(p, total, state_cap) and decide(p, unique, state_cap)


def apply_function(p: Presentation, fname: str, args) -> str:
    """The unique y with ``fname(args..., y)``."""
    rel = p.relation(fname)
    aut = rel.acceptor
    k = rel.arity
    for i in range(len(args) - 1, -1, -1):
        aut = instantiate_table(aut, p.tracks(k), i, args[i])
        k -= 1
    words = fa.enumerate_words(fa.Automaton.from_table(p.base, aut.table, aut.accept_mask, aut.initial), 2)
    if len(words) != 1:
        raise PreconditionError(f"{fname} is not single-valued at {tuple(args)}", failed="functional")
    return words[0]


def sample_elements(p: Presentation, count: int, max_len: int, rng) -> list:
    out = []
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        w = fa.random_word(p.domain, int(rng.integers(max_len + 1)), rng)
        if w is not None:
            out.append(w)
    if len(out) < count:
        raise PreconditionError("domain has no elements up to the sampling length", failed="nonempty")
    return out


def growth_check(p: Presentation, fname: str, samples: int = 100, max_len: int = 12, seed: int = 0,
                 check_functional: bool = True) -> GrowthReport:
    """Sample argument tuples and test |f(x)| <= max|xi| + C."""
    if check_functional and not is_functional(p, fname):
        raise PreconditionError(f"{fname} is not the graph of a total function", failed="functional")
    rel = p.relation(fname)
    report = GrowthReport(fname, rel.acceptor.n_states)
    rng = np.random.default_rng(seed)
    k = rel.arity - 1
    pool = sample_elements(p, samples * k, max_len, rng)
    for j in range(samples):
        args = pool[j * k : (j + 1) * k]
        y = apply_function(p, fname, args)
        excess = len(y) - max((len(x) for x in args), default=0)
        report.checked += 1
        report.max_excess = excess if report.max_excess is None else max(report.max_excess, excess)
        if excess > report.constant:
            report.violations.append((tuple(args), y))
    return report
