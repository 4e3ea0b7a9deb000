"""Configuration spaces of one-tape Turing machines.

The tape is one-way infinite to the right with a fixed left end; a left
move at the left end leaves the head in place.  A configuration is the
string ``left · Q · head · right`` where ``Q`` is the state's marker (an
uppercase letter outside the tape alphabet) and ``right`` carries no
trailing blanks.  ``Edge(c, d)`` holds when ``d`` follows ``c`` in one step.
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from pathlib import Path

from .. import automata as fa
from ..automata import Automaton
from ..errors import FormatError
from ..relations import RegularRelation, track_alphabet
from .core import Presentation

__all__ = ["TuringMachineSpec", "tm_config_space", "parse_tm", "read_tm", "encode_config", "step_config"]


@dataclass(frozen=True)
class TuringMachineSpec:
    tape: tuple
    states: tuple
    initial: str
    halting: frozenset
    transitions: dict  # (state, read) -> (state, write, move)
    blank: str = "b"

    def __post_init__(self):
        if self.blank not in self.tape:
            raise FormatError(f"blank {self.blank!r} is not in the tape alphabet")
        for sym in self.tape:
            if len(sym) != 1 or sym in "_|" or sym.isspace():
                raise FormatError(f"tape symbol {sym!r} must be one character other than '_' and '|'")
        if self.initial not in self.states:
            raise FormatError(f"initial state {self.initial!r} is not declared")
        for (q, a), (r, b, move) in self.transitions.items():
            if q not in self.states or r not in self.states:
                raise FormatError(f"transition ({q}, {a}) uses an undeclared state")
            if a not in self.tape or b not in self.tape:
                raise FormatError(f"transition ({q}, {a}) uses a symbol outside the tape alphabet")
            if move not in ("L", "R"):
                raise FormatError(f"transition ({q}, {a}) has move {move!r}; expected L or R")
            if q in self.halting:
                raise FormatError(f"halting state {q!r} has an outgoing transition")

    @property
    def markers(self) -> dict:
        free = [c for c in string.ascii_uppercase if c not in self.tape]
        if len(free) < len(self.states):
            raise FormatError("not enough marker letters for the states")
        return dict(zip(self.states, free))


def parse_tm(text: str) -> TuringMachineSpec:
    """Parse the line format::

        tape: b 1
        blank: b
        states: q0 q1 h
        initial: q0
        halting: h
        trans q0 b -> q1 1 R
    """
    fields = {}
    trans = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("trans"):
            parts = line.split()
            if len(parts) != 7 or parts[3] != "->":
                raise FormatError(f"line {lineno}: expected 'trans q a -> r b M'")
            key = (parts[1], parts[2])
            if key in trans:
                raise FormatError(f"line {lineno}: second transition for {key}; the machine must be deterministic")
            trans[key] = (parts[4], parts[5], parts[6])
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise FormatError(f"line {lineno}: expected 'key: value'")
        fields[key.strip()] = value.split()
    try:
        return TuringMachineSpec(
            tape=tuple(fields["tape"]),
            states=tuple(fields["states"]),
            initial=fields["initial"][0],
            halting=frozenset(fields.get("halting", [])),
            transitions=trans,
            blank=fields.get("blank", ["b"])[0],
        )
    except (KeyError, IndexError) as exc:
        raise FormatError(f"missing field {exc}") from None


def read_tm(path) -> TuringMachineSpec:
    return parse_tm(Path(path).read_text(encoding="utf-8"))


def encode_config(tm: TuringMachineSpec, left: str, state: str, head: str, right: str) -> str:
    return left + tm.markers[state] + head + right.rstrip(tm.blank)


def step_config(tm: TuringMachineSpec, config: str):
    """Reference one-step simulator on encoded configurations (``None`` if halted)."""
    inv = {m: q for q, m in tm.markers.items()}
    pos = next(i for i, c in enumerate(config) if c in inv)
    q = inv[config[pos]]
    left, head, right = config[:pos], config[pos + 1], config[pos + 2 :]
    move = tm.transitions.get((q, head))
    if move is None:
        return None
    r, b, d = move
    if d == "R":
        tape_right = right or tm.blank
        return encode_config(tm, left + b, r, tape_right[0], tape_right[1:])
    if not left:
        return encode_config(tm, "", r, b, right)
    return encode_config(tm, left[:-1], r, left[-1], b + right)


def _domain(tm, base):
    marks = set(tm.markers.values())
    blank = tm.blank

    def step(q, a):
        if q == "left":
            return "head" if a in marks else "left"
        if q == "head":
            return None if a in marks else "ok"
        if q in ("ok", "trail"):
            if a in marks:
                return None
            return "trail" if a == blank else "ok"
        return None

    return Automaton.from_function(base, "left", lambda q, i: step(q, base[i]), lambda q: q == "ok")


def tm_config_space(tm: TuringMachineSpec) -> Presentation:
    markers = tm.markers
    base = tuple(tm.tape) + tuple(markers[q] for q in tm.states)
    tracks = track_alphabet(base, 2)
    index = {a: i for i, a in enumerate(base)}
    pad = tracks.pad

    def sym(a, b):
        da = pad if a is None else index[a]
        db = pad if b is None else index[b]
        return tracks.names[tracks.code((da, db))]

    edges = []
    states = {"start": 0, "copy": 1, "tail": 2, "final": 3}

    def state(name):
        if name not in states:
            states[name] = len(states)
        return states[name]

    for c in tm.tape:
        for src in ("start", "copy"):
            edges.append((states[src], sym(c, c), states["copy"]))
        edges.append((states["tail"], sym(c, c), states["tail"]))
    edges.append((states["tail"], sym(None, tm.blank), states["final"]))
    for (q, a), (r, b, move) in sorted(tm.transitions.items()):
        Q, R = markers[q], markers[r]
        if move == "R":
            w = state(("R", q, a))
            for src in ("start", "copy"):
                edges.append((states[src], sym(Q, b), w))
            edges.append((w, sym(a, R), states["tail"]))
        else:
            w2 = state(("L2", q, a))
            for d in tm.tape:
                w1 = state(("L1", q, a, d))
                for src in ("start", "copy"):
                    edges.append((states[src], sym(d, R), w1))
                edges.append((w1, sym(Q, d), w2))
            edges.append((w2, sym(a, b), states["tail"]))
            if b == tm.blank:
                edges.append((w2, sym(a, None), states["final"]))
            s1 = state(("S", q, a))
            edges.append((states["start"], sym(Q, R), s1))
            edges.append((s1, sym(a, b), states["tail"]))
    nfa = Automaton(tracks.names, len(states), 0, [states["tail"], states["final"]], edges)
    edge = RegularRelation(tracks, fa.minimize(nfa))
    notes = "configuration = left-tape, state marker, head symbol, right tape without trailing blanks; markers " + ", ".join(
        f"{m}={q}" for q, m in markers.items()
    )
    return Presentation(base, _domain(tm, base), {"Edge": edge}, name="tm_config_space", notes=notes)
