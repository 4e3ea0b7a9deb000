"""Formula AST and parser for first-order logic with ∃^∞ and ∃^{n,m}.

Grammar (loosest binding first)::

    formula := iff
    iff     := impl ("<->" impl)*
    impl    := or ("->" or)*            right associative
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "~" unary | quant | atom | "(" formula ")"
    quant   := ("A" | "E" | "EI" | "E[" nat "," nat "]") ident "." unary
    atom    := ident "(" term ("," term)* ")" | term "=" term
    term    := ident | quoted string
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Tuple, Union

from ..errors import FormulaSyntaxError


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    value: str

    def __str__(self):
        return '"' + self.value.replace("\\", "\\\\").replace('"', '\\"') + '"'


Term = Union[Var, Const]


@dataclass(frozen=True)
class Formula:
    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str
    args: Tuple[Term, ...]
    pos: int = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Equal(Formula):
    left: Term
    right: Term
    pos: int = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Truth(Formula):
    """Constant truth value; only produced by programmatic construction."""

    value: bool


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class ExistsInf(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class ExistsMod(Formula):
    n: int
    m: int
    var: str
    body: Formula

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.m < self.n:
            raise FormulaSyntaxError(f"counting quantifier needs 0 <= m < n, got E[{self.n},{self.m}]")


QUANTIFIERS = (Exists, Forall, ExistsInf, ExistsMod)
BINARY = {And: "&", Or: "|", Implies: "->", Iff: "<->"}
_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}


def conj(*parts: Formula) -> Formula:
    out = None
    for p in parts:
        out = p if out is None else And(out, p)
    return out if out is not None else Truth(True)


def disj(*parts: Formula) -> Formula:
    out = None
    for p in parts:
        out = p if out is None else Or(out, p)
    return out if out is not None else Truth(False)


# -- rendering ---------------------------------------------------------------


def _quant_prefix(f) -> str:
    if isinstance(f, Exists):
        return "E"
    if isinstance(f, Forall):
        return "A"
    if isinstance(f, ExistsInf):
        return "EI"
    return f"E[{f.n},{f.m}]"


def render(f: Formula, parent: int = 0) -> str:
    """Source text that parses back to ``f``."""
    if isinstance(f, Atom):
        return f"{f.name}({','.join(str(a) for a in f.args)})"
    if isinstance(f, Equal):
        return f"{f.left} = {f.right}"
    if isinstance(f, Truth):
        # no literal syntax; a closed tautology or contradiction stands in
        return "(A t_. t_ = t_)" if f.value else "(E t_. ~t_ = t_)"
    if isinstance(f, Not):
        return "~" + render(f.body, 5)
    if isinstance(f, QUANTIFIERS):
        text = f"{_quant_prefix(f)} {f.var}. {render(f.body, 5)}"
        return f"({text})" if parent > 0 else text
    prec = _PREC[type(f)]
    op = BINARY[type(f)]
    if isinstance(f, Implies):
        text = f"{render(f.left, prec + 1)} {op} {render(f.right, prec)}"
    else:
        text = f"{render(f.left, prec)} {op} {render(f.right, prec + 1)}"
    return f"({text})" if parent >= prec else text


# -- variables -------------------------------------------------------------


def free_variables(f: Formula) -> tuple:
    """Free variables in order of first occurrence."""
    out = []
    seen = set()

    def visit(g, bound):
        if isinstance(g, Atom):
            terms = g.args
        elif isinstance(g, Equal):
            terms = (g.left, g.right)
        elif isinstance(g, Truth):
            return
        elif isinstance(g, Not):
            visit(g.body, bound)
            return
        elif isinstance(g, QUANTIFIERS):
            visit(g.body, bound | {g.var})
            return
        else:
            visit(g.left, bound)
            visit(g.right, bound)
            return
        for t in terms:
            if isinstance(t, Var) and t.name not in bound and t.name not in seen:
                seen.add(t.name)
                out.append(t.name)

    visit(f, frozenset())
    return tuple(out)


def _all_names(f: Formula, acc: set):
    if isinstance(f, Atom):
        acc.update(t.name for t in f.args if isinstance(t, Var))
    elif isinstance(f, Equal):
        acc.update(t.name for t in (f.left, f.right) if isinstance(t, Var))
    elif isinstance(f, Not):
        _all_names(f.body, acc)
    elif isinstance(f, QUANTIFIERS):
        acc.add(f.var)
        _all_names(f.body, acc)
    elif not isinstance(f, Truth):
        _all_names(f.left, acc)
        _all_names(f.right, acc)
    return acc


def rename_bound(f: Formula) -> Formula:
    """Alpha-rename binders that shadow an enclosing binder or a free variable."""
    used = _all_names(f, set())
    free = set(free_variables(f))
    counter = [0]

    def fresh(base):
        while True:
            counter[0] += 1
            name = f"{base}_{counter[0]}"
            if name not in used:
                used.add(name)
                return name

    def term(t, env):
        if isinstance(t, Var) and t.name in env:
            return Var(env[t.name])
        return t

    def go(g, env, taken):
        if isinstance(g, Atom):
            return Atom(g.name, tuple(term(t, env) for t in g.args), g.pos)
        if isinstance(g, Equal):
            return Equal(term(g.left, env), term(g.right, env), g.pos)
        if isinstance(g, Truth):
            return g
        if isinstance(g, Not):
            return Not(go(g.body, env, taken))
        if isinstance(g, QUANTIFIERS):
            name = g.var
            if name in taken:
                name = fresh(g.var)
            inner = dict(env)
            inner[g.var] = name
            body = go(g.body, inner, taken | {name})
            if isinstance(g, ExistsMod):
                return ExistsMod(g.n, g.m, name, body)
            return type(g)(name, body)
        return type(g)(go(g.left, env, taken), go(g.right, env, taken))

    return go(f, {}, frozenset(free))


# -- tokenizer and parser ---------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<iff><->)
  | (?P<imp>->)
  | (?P<emod>E\[)
  | (?P<str>"(?:[^"\\]|\\.)*"|'(?:[^'\\]|\\.)*')
  | (?P<nat>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>[~&|().,=\]])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if kind == "sym":
                kind = value
            elif kind == "str":
                value = re.sub(r"\\(.)", r"\1", value[1:-1])
            tokens.append((kind, value, pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, offset=0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            shown = tok[1] or "end of input"
            raise FormulaSyntaxError(f"expected {kind!r} but found {shown!r}", tok[2], self.text)
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise FormulaSyntaxError(message, tok[2], self.text)

    def formula(self):
        f = self.implication()
        while self.peek()[0] == "iff":
            self.take()
            f = Iff(f, self.implication())
        return f

    def implication(self):
        left = self.disjunction()
        if self.peek()[0] == "imp":
            self.take()
            return Implies(left, self.implication())
        return left

    def disjunction(self):
        f = self.conjunction()
        while self.peek()[0] == "|":
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self):
        f = self.unary()
        while self.peek()[0] == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        kind, value, pos = self.peek()
        if kind == "~":
            self.take()
            return Not(self.unary())
        if kind == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        if kind == "emod":
            self.take()
            n = int(self.take("nat")[1])
            self.take(",")
            m = int(self.take("nat")[1])
            self.take("]")
            if n < 1 or not 0 <= m < n:
                raise FormulaSyntaxError(f"malformed counting quantifier E[{n},{m}]: need 0 <= m < n", pos, self.text)
            var = self.take("ident")[1]
            self.take(".")
            return ExistsMod(n, m, var, self.unary())
        if kind == "ident" and self.peek(1)[0] == "ident" and self.peek(2)[0] == ".":
            quant = {"A": Forall, "E": Exists, "EI": ExistsInf}.get(value)
            if quant is None:
                self.error(f"unknown quantifier {value!r}")
            self.take()
            var = self.take("ident")[1]
            self.take(".")
            return quant(var, self.unary())
        return self.atom()

    def term(self):
        kind, value, pos = self.peek()
        if kind == "ident":
            self.take()
            return Var(value)
        if kind == "str":
            self.take()
            return Const(value)
        self.error("expected a variable or a quoted constant")

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "ident" and self.peek(1)[0] == "(":
            self.take()
            self.take("(")
            args = [self.term()]
            while self.peek()[0] == ",":
                self.take()
                args.append(self.term())
            self.take(")")
            return Atom(value, tuple(args), pos)
        if kind in ("ident", "str"):
            left = self.term()
            if self.peek()[0] != "=":
                self.error("expected '=' or '(' after term")
            self.take("=")
            return Equal(left, self.term(), pos)
        if kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected token {value!r}")


def parse_formula(text: str) -> Formula:
    """Parse ``text``; shadowed binders are alpha-renamed."""
    parser = _Parser(text)
    f = parser.formula()
    if parser.peek()[0] != "end":
        parser.error(f"unexpected trailing input {parser.peek()[1]!r}")
    return rename_bound(f)


def as_formula(f) -> Formula:
    return parse_formula(f) if isinstance(f, str) else f
