"""Automatic partial-order trees and the automatic König lemma."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import automata as fa
from .errors import PreconditionError
from .logic.compiler import DEFAULT_STATE_CAP, compile_formula, decide
from .presentations.core import Presentation
from .relations import RegularRelation, combine, equality_relation, llex_relation

TREE_AXIOMS = {
    "reflexive": "A x. Le(x,x)",
    "antisymmetric": "A x. A y. ((Le(x,y) & Le(y,x)) -> x = y)",
    "transitive": "A x. A y. A z. ((Le(x,y) & Le(y,z)) -> Le(x,z))",
    "least element": "E r. A x. Le(r,x)",
    "linear predecessors": "A x. A y. A z. ((Le(y,x) & Le(z,x)) -> (Le(y,z) | Le(z,y)))",
    "finite predecessors": "A x. ~ EI y. Le(y,x)",
}


def _require_le(p):
    if dict(p.signature).get("Le") != 2:
        raise PreconditionError("tree analysis needs a binary relation Le", failed="signature")


def tree_failures(p: Presentation, state_cap=DEFAULT_STATE_CAP) -> list:
    """Names of the tree axioms that fail for ``Le``."""
    _require_le(p)
    q = p.restrict(["Le"])
    return [name for name, text in TREE_AXIOMS.items() if not decide(q, text, state_cap)]


def is_po_tree(p, state_cap=DEFAULT_STATE_CAP) -> bool:
    if isinstance(p, TreeHandle):
        return True
    return not tree_failures(p, state_cap)


@dataclass
class TreeHandle:
    """Tree presentation with compiled ``Lt``, immediate successor ``S`` and strict llex ``Llex``."""

    presentation: Presentation
    state_cap: int = DEFAULT_STATE_CAP
    check: bool = True
    _work: Presentation = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if self.check:
            bad = tree_failures(self.presentation, self.state_cap)
            if bad:
                raise PreconditionError(f"not a partial-order tree: {', '.join(bad)} fails", failed=bad[0])

    @property
    def work(self) -> Presentation:
        if self._work is None:
            p = self.presentation.restrict(["Le"])
            cap = self.state_cap
            lt = compile_formula(p, "Le(x,y) & ~x = y", cap, variables=("x", "y")).relation
            p = p.with_relations({"Lt": lt})
            s = compile_formula(p, "Lt(x,y) & ~ E z. (Lt(x,z) & Lt(z,y))", cap, variables=("x", "y")).relation
            llex = llex_relation(p.base)
            strict = combine(llex.acceptor, equality_relation(p.base).acceptor, lambda a, b: a & ~b)
            self._work = p.with_relations({"S": s, "Llex": RegularRelation(llex.tracks, strict, canonical=True)})
        return self._work

    def decide(self, text) -> bool:
        return decide(self.work, text, self.state_cap)


def as_tree(t) -> TreeHandle:
    return t if isinstance(t, TreeHandle) else TreeHandle(t)


def is_finitely_branching(t) -> bool:
    return as_tree(t).decide("A x. ~ EI y. S(x,y)")


# z ranges over the path's child of y, z2 over the other children of y with
# infinitely many descendants
_PATH = (
    "EI y. Le(x,y) & "
    "A y. A z. A w. ((Le(y,x) & S(y,z) & Le(z,x) & S(y,w) & ~ z = w & EI v. Le(w,v)) -> Llex(z,w))"
)


def koenig_path(t) -> RegularRelation:
    """The llex-leftmost infinite path of a finitely branching infinite tree."""
    t = as_tree(t)
    if not is_finitely_branching(t):
        raise PreconditionError("tree is not finitely branching", failed="finitely branching")
    if not fa.is_infinite(t.presentation.domain):
        raise PreconditionError("tree is finite, so it has no infinite path", failed="infinite")
    return compile_formula(t.work, _PATH, t.state_cap, variables=("x",)).relation


def verify_path(t, path: RegularRelation) -> dict:
    """Check that ``path`` is downward closed, linear, infinite and contains the root."""
    t = as_tree(t)
    p = t.work.with_relations({"P": path})

    def holds(text):
        return decide(p, text, t.state_cap)

    return {
        "downward_closed": holds("A x. A y. ((Le(y,x) & P(x)) -> P(y))"),
        "linear": holds("A x. A y. ((P(x) & P(y)) -> (Le(x,y) | Le(y,x)))"),
        "infinite": fa.is_infinite(path.acceptor),
        "root": holds("A r. ((A x. Le(r,x)) -> P(r))"),
    }


def analyze_tree(p, path_out=None, state_cap=DEFAULT_STATE_CAP) -> dict:
    """Report keys ``tree``, ``finitely_branching`` and, when defined, the König path."""
    _require_le(p)
    bad = tree_failures(p, state_cap)
    report = {"tree": not bad}
    if bad:
        report["failed"] = ", ".join(bad)
        return report
    t = TreeHandle(p, state_cap, check=False)
    report["finitely_branching"] = is_finitely_branching(t)
    report["infinite"] = fa.is_infinite(p.domain)
    if report["finitely_branching"] and report["infinite"]:
        path = koenig_path(t)
        report["koenig_path_states"] = path.acceptor.n_states
        report["koenig_path"] = path
    return report
