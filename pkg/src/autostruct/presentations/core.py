"""The :class:`Presentation` type: a domain language plus regular relations."""
from __future__ import annotations

from typing import Mapping

from .. import automata as fa
from ..automata import Automaton
from ..errors import AlphabetMismatch, ArityError, CompileError
from ..relations import RegularRelation, intersect, track_alphabet, track_member, valid_convolutions


class Signature(tuple):
    """Ordered ``(name, arity)`` pairs with unique names and positive arities."""

    def __new__(cls, items=()):
        items = tuple((str(n), int(k)) for n, k in items)
        names = [n for n, _ in items]
        if len(set(names)) != len(names):
            raise ValueError("relation names in a signature must be unique")
        for n, k in items:
            if k < 1:
                raise ArityError(f"relation {n} must have arity at least 1")
        return super().__new__(cls, items)

    def arity(self, name):
        for n, k in self:
            if n == name:
                return k
        raise KeyError(name)

    @property
    def names(self):
        return tuple(n for n, _ in self)


class Presentation:
    """Automatic presentation ``(D; R_1, ..., R_m)`` over a base alphabet.

    ``relations`` maps names to :class:`RegularRelation` objects whose
    languages must lie inside convolutions of domain tuples; the
    constructor restricts them to the domain so callers may pass
    relations built over all strings.
    """

    def __init__(self, base, domain: Automaton, relations: Mapping[str, RegularRelation], name: str = "", notes: str = ""):
        base = tuple(base)
        if tuple(domain.alphabet) != base:
            raise AlphabetMismatch("domain automaton is not over the base alphabet")
        self.base = base
        self.name = name
        self.notes = notes
        self.domain = fa.minimize(domain)
        self._universe = {}
        self._cache = {}
        rels = {}
        for rname, rel in relations.items():
            if rel.base != base:
                raise AlphabetMismatch(f"relation {rname} is over a different base alphabet")
            acc = intersect(rel.acceptor, self.universe(rel.arity))
            rels[rname] = RegularRelation(rel.tracks, acc, canonical=True)
        self.relations = rels
        self.signature = Signature((n, r.arity) for n, r in rels.items())

    def _derive(self, restricted, extra, name, notes):
        """Same domain; ``restricted`` relations are already inside the universe."""
        new = object.__new__(Presentation)
        new.base = self.base
        new.name = name
        new.notes = notes
        new.domain = self.domain
        new._universe = self._universe
        new._cache = {}
        rels = dict(restricted)
        for rname, rel in extra.items():
            if rel.base != self.base:
                raise AlphabetMismatch(f"relation {rname} is over a different base alphabet")
            acc = intersect(rel.acceptor, self.universe(rel.arity))
            rels[rname] = RegularRelation(rel.tracks, acc, canonical=True)
        new.relations = rels
        new.signature = Signature((n, r.arity) for n, r in rels.items())
        return new

    def tracks(self, arity):
        return track_alphabet(self.base, arity)

    def universe(self, arity: int) -> Automaton:
        """Convolutions of ``arity``-tuples of domain elements."""
        u = self._universe.get(arity)
        if u is None:
            tracks = self.tracks(arity)
            u = valid_convolutions(tracks)
            for t in range(arity):
                u = intersect(u, track_member(tracks, t, self.domain))
            self._universe[arity] = u
        return u

    def relation(self, name) -> RegularRelation:
        try:
            return self.relations[name]
        except KeyError:
            raise CompileError(f"unknown relation {name!r}; signature has {', '.join(self.signature.names) or 'none'}") from None

    def in_domain(self, s: str) -> bool:
        try:
            return self.domain.accepts(s)
        except Exception:
            return False

    def elements(self, max_count: int) -> list:
        """Domain elements in length-lexicographic order."""
        return fa.enumerate_words(self.domain, max_count)

    def domain_size(self):
        """Number of elements, or ``None`` when infinite."""
        return fa.count_words(self.domain)

    def with_relations(self, extra: Mapping[str, RegularRelation], name=None) -> "Presentation":
        kept = {n: r for n, r in self.relations.items() if n not in extra}
        return self._derive(kept, extra, name or self.name, self.notes)

    def restrict(self, names) -> "Presentation":
        """Reduct to the listed relation names."""
        return self._derive({n: self.relations[n] for n in names}, {}, self.name, self.notes)

    def rename(self, mapping: Mapping[str, str]) -> "Presentation":
        rels = {mapping.get(n, n): r for n, r in self.relations.items()}
        return self._derive(rels, {}, self.name, self.notes)

    def __repr__(self):
        sig = ", ".join(f"{n}/{k}" for n, k in self.signature)
        label = f" {self.name}" if self.name else ""
        return f"<Presentation{label} |Σ|={len(self.base)} domain={self.domain.n_states} states; {sig}>"
