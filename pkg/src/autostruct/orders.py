"""Analyses of automatic linear orders.

Everything reduces to deciding sentences or compiling definable sets in
the order's presentation.  The ≡_F quotient (x ≡_F y iff finitely many
elements lie between them) keeps llex-least class members, so every
quotient along the way is a suborder of the original presentation.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import automata as fa
from .errors import IterationLimitError, PreconditionError
from .logic.compiler import DEFAULT_STATE_CAP, compile_formula, decide
from .presentations.constructions import quotient
from .presentations.core import Presentation
from .relations import RegularRelation

DEFAULT_ITER_CAP = 64

LINEAR_AXIOMS = {
    "reflexive": "A x. Le(x,x)",
    "antisymmetric": "A x. A y. ((Le(x,y) & Le(y,x)) -> x = y)",
    "transitive": "A x. A y. A z. ((Le(x,y) & Le(y,z)) -> Le(x,z))",
    "total": "A x. A y. (Le(x,y) | Le(y,x))",
}

_LT = "Le(x,y) & ~x = y"
_EQF = "~ EI z. ((Lt(x,z) & Lt(z,y)) | (Lt(y,z) & Lt(z,x)))"
_DENSE = "A x. A y. (Lt(x,y) -> E z. (Lt(x,z) & Lt(z,y)))"


def _require_le(p: Presentation):
    if dict(p.signature).get("Le") != 2:
        raise PreconditionError("order analysis needs a binary relation Le", failed="signature")


@dataclass
class LinearOrderHandle:
    """An order presentation with lazily compiled helpers ``Lt`` and ``EqF``."""

    presentation: Presentation
    state_cap: int = DEFAULT_STATE_CAP
    _work: Presentation = field(default=None, init=False, repr=False)
    _cnf: list = field(default=None, init=False, repr=False)

    def __post_init__(self):
        _require_le(self.presentation)

    @property
    def work(self) -> Presentation:
        """Reduct to ``Le`` extended by ``Lt`` and ``EqF``."""
        if self._work is None:
            p = self.presentation.restrict(["Le"])
            lt = compile_formula(p, _LT, self.state_cap, variables=("x", "y")).relation
            p = p.with_relations({"Lt": lt})
            eqf = compile_formula(p, _EQF, self.state_cap, variables=("x", "y")).relation
            self._work = p.with_relations({"EqF": eqf})
        return self._work

    def decide(self, text) -> bool:
        return decide(self.work, text, self.state_cap)

    def definable(self, text, var="x") -> RegularRelation:
        return compile_formula(self.work, text, self.state_cap, variables=(var,)).relation

    def size(self):
        return self.presentation.domain_size()


def as_order(h) -> LinearOrderHandle:
    return h if isinstance(h, LinearOrderHandle) else LinearOrderHandle(h)


def failed_linear_axioms(h) -> list:
    h = as_order(h)
    p = h.presentation.restrict(["Le"])
    return [name for name, text in LINEAR_AXIOMS.items() if not decide(p, text, h.state_cap)]


def is_linear(h) -> bool:
    return not failed_linear_axioms(h)


def _require_linear(h):
    bad = failed_linear_axioms(h)
    if bad:
        raise PreconditionError(f"Le is not a linear order: {', '.join(bad)} fails", failed=bad[0])


def is_dense(h) -> bool:
    """Strict density; orders with at most one element are trivially dense."""
    return as_order(h).decide(_DENSE)


def quotient_by_eqF(h, check=True) -> LinearOrderHandle:
    """The quotient L/≡_F over llex-least class members."""
    h = as_order(h)
    if check:
        _require_linear(h)
    q = quotient(h.work, "EqF", mode="restrict", check=False, state_cap=h.state_cap)
    return LinearOrderHandle(q.restrict(["Le"]), h.state_cap)


@dataclass(frozen=True)
class CBResult:
    rank: int
    final: LinearOrderHandle
    trace: tuple  # domain size (None = infinite) at each stage


def cb_iteration(h, iter_cap=DEFAULT_ITER_CAP, check=True) -> CBResult:
    """Quotient by ≡_F until the order is dense."""
    h = as_order(h)
    if check:
        _require_linear(h)
    trace = [h.size()]
    rank = 0
    while not is_dense(h):
        if rank >= iter_cap:
            raise IterationLimitError(f"≡_F quotient iteration cap {iter_cap} reached without a dense order")
        h = quotient_by_eqF(h, check=False)
        rank += 1
        trace.append(h.size())
    return CBResult(rank, h, tuple(trace))


def cb_rank(h, iter_cap=DEFAULT_ITER_CAP) -> int:
    """Number of ≡_F quotients needed to reach a dense order."""
    return cb_iteration(h, iter_cap).rank


def is_scattered(h, iter_cap=DEFAULT_ITER_CAP) -> bool:
    final = cb_iteration(h, iter_cap).final
    size = final.size()
    return size is not None and size <= 1


def dense_suborder(h, iter_cap=DEFAULT_ITER_CAP) -> RegularRelation:
    """Domain of the final dense quotient, a dense suborder of the input."""
    final = cb_iteration(h, iter_cap).final
    t = final.presentation.tracks(1)
    d = final.presentation.domain
    return RegularRelation(t, fa.Automaton.from_table(t.names, d.table, d.accept_mask, d.initial), canonical=True)


_BAD_CLASS = "A x. ~ EI y. (EqF(x,y) & Lt(y,x))"


def is_ordinal(h, iter_cap=DEFAULT_ITER_CAP, check=True) -> bool:
    """Well-order test: every ≡_F class has type finite or ω, at every stage."""
    h = as_order(h)
    if check:
        _require_linear(h)
    for _ in range(iter_cap + 1):
        if not h.decide(_BAD_CLASS):
            return False
        if is_dense(h):
            size = h.size()
            return size is not None and size <= 1
        h = quotient_by_eqF(h, check=False)
    raise IterationLimitError(f"≡_F quotient iteration cap {iter_cap} reached in the ordinal test")


_TOP = "~ EI y. Lt(x,y)"
_LIMITS = "(~ E y. (Lt(y,x) & ~ E z. (Lt(y,z) & Lt(z,x)))) & EI y. Lt(x,y)"


def cantor_normal_form(h, iter_cap=DEFAULT_ITER_CAP, check=True) -> list:
    """Coefficients ``[a0, ..., am]`` of ω^m·am + ... + a0.

    ``a0`` counts the finite top segment (elements with finitely many
    elements above).  The next coefficient comes from the suborder of
    elements without an immediate predecessor that still have infinitely
    many elements above; this suborder contains the least element and
    is the ordinal ω^{m-1}·am + ... + a1.
    """
    h = as_order(h)
    if h._cnf is not None:
        return list(h._cnf)
    start = h
    if check and not is_ordinal(h, iter_cap):
        raise PreconditionError("order is not an ordinal", failed="ordinal")
    coeffs = []
    for _ in range(iter_cap + 1):
        top = h.definable(_TOP)
        if fa.is_infinite(top.acceptor):
            raise PreconditionError("finite top segment is infinite; order is not an ordinal", failed="ordinal")
        coeffs.append(fa.count_words(top.acceptor))
        limits = h.definable(_LIMITS)
        if limits.is_empty():
            start._cnf = list(coeffs)
            return coeffs
        p = h.presentation
        dom = fa.Automaton.from_table(p.base, limits.acceptor.table, limits.acceptor.accept_mask, limits.acceptor.initial)
        h = LinearOrderHandle(Presentation(p.base, dom, p.relations, name=p.name, notes=p.notes), h.state_cap)
    raise IterationLimitError(f"Cantor normal form depth cap {iter_cap} reached")


def ordinals_isomorphic(h1, h2, iter_cap=DEFAULT_ITER_CAP) -> bool:
    """Equal Cantor normal forms; pass handles to reuse computed forms."""
    return cantor_normal_form(h1, iter_cap) == cantor_normal_form(h2, iter_cap)


def analyze_order(p, iter_cap=DEFAULT_ITER_CAP, state_cap=DEFAULT_STATE_CAP) -> dict:
    """Report with keys linear, dense, cb_rank, scattered, ordinal, cnf (when defined)."""
    h = LinearOrderHandle(p, state_cap) if not isinstance(p, LinearOrderHandle) else p
    report = {"linear": is_linear(h)}
    if not report["linear"]:
        return report
    report["dense"] = is_dense(h)
    cb = cb_iteration(h, iter_cap, check=False)
    report["cb_rank"] = cb.rank
    size = cb.final.size()
    report["scattered"] = size is not None and size <= 1
    report["ordinal"] = is_ordinal(h, iter_cap, check=False)
    if report["ordinal"]:
        report["cnf"] = cantor_normal_form(h, iter_cap, check=False)
    return report


def format_report(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, (list, tuple)):
            value = " ".join(str(v) for v in value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)
