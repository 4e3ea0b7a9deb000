"""Automatic Boolean algebras: axiom checks and the B_ω^n classification.

Operations are given as graphs ``Join(x,y,z)``, ``Meet(x,y,z)``,
``Compl(x,y)`` with singletons ``Zero`` and ``One``.  The axioms are
checked order-theoretically so no sentence needs more than four variables:
``x ≤ y`` iff ``Meet(x,y,x)`` must be a partial order in which ``Join`` and
``Meet`` are the least upper and greatest lower bounds, the lattice must be
distributive (cancellative), bounded by ``Zero`` and ``One``, and
``Compl`` must give complements.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import IterationLimitError, PreconditionError
from .logic.compiler import DEFAULT_STATE_CAP, compile_formula, decide
from .presentations.core import Presentation

BA_SIGNATURE = {"Join": 3, "Meet": 3, "Compl": 2, "Zero": 1, "One": 1}
DEFAULT_INDEX_CAP = 8

# (name, sentence) in the order they are checked; _Le(x,y) is Meet(x,y,x)
BA_AXIOMS = (
    ("zero exists", "E x. Zero(x)"),
    ("zero unique", "A x. A y. ((Zero(x) & Zero(y)) -> x = y)"),
    ("one exists", "E x. One(x)"),
    ("one unique", "A x. A y. ((One(x) & One(y)) -> x = y)"),
    ("join total", "A x. A y. E z. Join(x,y,z)"),
    ("meet total", "A x. A y. E z. Meet(x,y,z)"),
    ("complement total", "A x. E y. Compl(x,y)"),
    ("order reflexive", "A x. _Le(x,x)"),
    ("order antisymmetric", "A x. A y. ((_Le(x,y) & _Le(y,x)) -> x = y)"),
    ("order transitive", "A x. A y. A z. ((_Le(x,y) & _Le(y,z)) -> _Le(x,z))"),
    ("join is least upper bound",
     "A x. A y. A z. (Join(x,y,z) <-> (_Le(x,z) & _Le(y,z) & A w. ((_Le(x,w) & _Le(y,w)) -> _Le(z,w))))"),
    ("meet is greatest lower bound",
     "A x. A y. A z. (Meet(x,y,z) <-> (_Le(z,x) & _Le(z,y) & A w. ((_Le(w,x) & _Le(w,y)) -> _Le(w,z))))"),
    ("zero is least", "A o. A x. (Zero(o) -> _Le(o,x))"),
    ("one is greatest", "A o. A x. (One(o) -> _Le(x,o))"),
    ("distributivity", "A x. A y. A z. ((_SameMeet(x,y,z) & _SameJoin(x,y,z)) -> y = z)"),
    ("complement meet", "A x. A y. A z. ((Compl(x,y) & Meet(x,y,z)) -> Zero(z))"),
    ("complement join", "A x. A y. A z. ((Compl(x,y) & Join(x,y,z)) -> One(z))"),
)


def _require_signature(p):
    sig = dict(p.signature)
    for name, k in BA_SIGNATURE.items():
        if sig.get(name) != k:
            raise PreconditionError(f"Boolean algebra signature needs {name}/{k}", failed="signature")


def _with_order(p, cap):
    q = p.restrict(list(BA_SIGNATURE))
    le = compile_formula(q, "Meet(x,y,x)", cap, variables=("x", "y")).relation
    q = q.with_relations({"_Le": le})
    same_meet = compile_formula(q, "E u. (Meet(x,y,u) & Meet(x,z,u))", cap, variables=("x", "y", "z")).relation
    same_join = compile_formula(q, "E u. (Join(x,y,u) & Join(x,z,u))", cap, variables=("x", "y", "z")).relation
    return q.with_relations({"_SameMeet": same_meet, "_SameJoin": same_join})


def ba_failures(p: Presentation, state_cap=DEFAULT_STATE_CAP, stop_at_first=True) -> list:
    _require_signature(p)
    q = _with_order(p, state_cap)
    bad = []
    for name, text in BA_AXIOMS:
        if not decide(q, text, state_cap):
            bad.append(name)
            if stop_at_first:
                break
    return bad


@dataclass
class BooleanAlgebraHandle:
    presentation: Presentation
    state_cap: int = DEFAULT_STATE_CAP
    _work: Presentation = field(default=None, init=False, repr=False)
    _psi: dict = field(default_factory=dict, init=False, repr=False)

    @property
    def work(self) -> Presentation:
        """Signature plus ``_Le``, ``Atom``, ``Inf`` and ``Diff``."""
        if self._work is None:
            cap = self.state_cap
            q = self.presentation.restrict(list(BA_SIGNATURE))
            q = q.with_relations({"_Le": compile_formula(q, "Meet(x,y,x)", cap, variables=("x", "y")).relation})
            atom = compile_formula(q, "~ Zero(a) & A b. (_Le(b,a) -> (Zero(b) | b = a))", cap, variables=("a",))
            q = q.with_relations({"Atom": atom.relation})
            inf = compile_formula(q, "EI a. (Atom(a) & _Le(a,x))", cap, variables=("x",))
            diff = compile_formula(q, "E c. (Compl(x,c) & Meet(y,c,z))", cap, variables=("y", "x", "z"))
            self._work = q.with_relations({"Inf": inf.relation, "Diff": diff.relation})
        return self._work

    def psi(self, n):
        """Relation ``Psi_n(y)``: y splits into n disjoint elements with infinitely many atoms each."""
        if n not in self._psi:
            w = self.work
            if n == 1:
                rel = w.relations["Inf"]
            else:
                prev = self.psi(n - 1)
                q = w.with_relations({"Prev": prev})
                text = "E x. E z. (Inf(x) & _Le(x,y) & Diff(y,x,z) & Prev(z))"
                rel = compile_formula(q, text, self.state_cap, variables=("y",)).relation
            self._psi[n] = rel
        return self._psi[n]

    def phi(self, n) -> bool:
        q = self.work.with_relations({"Psi": self.psi(n)})
        return decide(q, "E o. (One(o) & Psi(o))", self.state_cap)


def ba_check(p, state_cap=DEFAULT_STATE_CAP) -> BooleanAlgebraHandle:
    """Handle for ``p`` after all axioms decide true; otherwise name the failed axiom."""
    if isinstance(p, BooleanAlgebraHandle):
        return p
    bad = ba_failures(p, state_cap)
    if bad:
        raise PreconditionError(f"not a Boolean algebra: axiom '{bad[0]}' fails", failed=bad[0])
    return BooleanAlgebraHandle(p, state_cap)


def bomega_index(b, cap=DEFAULT_INDEX_CAP) -> int:
    """The n with b ≅ B_ω^n: the largest n for which 1 splits into n infinite pieces."""
    b = ba_check(b)
    if not b.phi(1):
        raise PreconditionError("Boolean algebra has finitely many atoms below 1, so it is finite", failed="infinite")
    for n in range(1, cap + 1):
        if not b.phi(n + 1):
            return n
    raise IterationLimitError(f"B_ω^n index search cap {cap} exceeded")


def ba_isomorphic(b1, b2, cap=DEFAULT_INDEX_CAP) -> bool:
    return bomega_index(b1, cap) == bomega_index(b2, cap)


def analyze_ba(p, cap=DEFAULT_INDEX_CAP, state_cap=DEFAULT_STATE_CAP) -> dict:
    b = ba_check(p, state_cap)
    return {"boolean_algebra": True, "ba_index": bomega_index(b, cap)}
