"""Text formats: ``.aut`` automata and DOT export.

``.aut`` is line oriented::

    alphabet: 0 1
    tracks: 2 pad _
    states: 3
    initial: 0
    accepting: 2
    trans: 0 0|1 -> 1

The ``tracks`` line is optional; with it the file describes a regular
relation whose symbols are written ``a|b`` with ``_`` for the pad.  Lines
starting with ``#`` are comments.
"""
from __future__ import annotations

from pathlib import Path

from . import automata as fa
from .automata import Automaton
from .errors import FormatError
from .relations import PAD_NAME, RegularRelation, track_alphabet


def _split_key(line, lineno):
    if ":" not in line:
        raise FormatError(f"line {lineno}: expected 'key: value', got {line!r}")
    key, _, value = line.partition(":")
    return key.strip(), value.strip()


def parse_aut(text: str):
    """Parse ``.aut`` text into an :class:`Automaton` or a :class:`RegularRelation`."""
    alphabet = None
    tracks = None
    n_states = None
    initial = None
    accepting = []
    trans = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, value = _split_key(line, lineno)
        if key == "alphabet":
            alphabet = value.split()
        elif key == "tracks":
            parts = value.split()
            if len(parts) not in (1, 3) or (len(parts) == 3 and (parts[1] != "pad" or parts[2] != PAD_NAME)):
                raise FormatError(f"line {lineno}: expected 'tracks: k pad {PAD_NAME}'")
            try:
                tracks = int(parts[0])
            except ValueError:
                raise FormatError(f"line {lineno}: track count must be an integer") from None
        elif key == "states":
            n_states = _int(value, lineno)
        elif key == "initial":
            initial = _int(value, lineno)
        elif key == "accepting":
            accepting.extend(_int(v, lineno) for v in value.split())
        elif key == "trans":
            parts = value.split()
            if len(parts) != 4 or parts[2] != "->":
                raise FormatError(f"line {lineno}: expected 'trans: s symbol -> t'")
            trans.append((_int(parts[0], lineno), parts[1], _int(parts[3], lineno)))
        else:
            raise FormatError(f"line {lineno}: unknown key {key!r}")
    if alphabet is None or n_states is None or initial is None:
        raise FormatError("missing alphabet, states or initial line")
    if tracks is None:
        try:
            return Automaton(alphabet, n_states, initial, accepting, trans)
        except ValueError as exc:
            raise FormatError(str(exc)) from None
    t = track_alphabet(tuple(alphabet), tracks)
    try:
        aut = Automaton(t.names, n_states, initial, accepting, trans)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return RegularRelation(t, fa.minimize(aut), canonical=True)


def _int(value, lineno):
    try:
        return int(value)
    except ValueError:
        raise FormatError(f"line {lineno}: expected an integer, got {value!r}") from None


def format_aut(obj) -> str:
    """Serialize an automaton or relation; transitions in state then symbol order."""
    if isinstance(obj, RegularRelation):
        aut = obj.acceptor
        lines = [f"alphabet: {' '.join(obj.base)}", f"tracks: {obj.arity} pad {PAD_NAME}"]
    else:
        aut = obj
        lines = [f"alphabet: {' '.join(aut.alphabet)}"]
    for name in (obj.base if isinstance(obj, RegularRelation) else aut.alphabet):
        if not name or any(ch.isspace() for ch in name):
            raise FormatError(f"symbol {name!r} cannot be written in .aut format")
    lines.append(f"states: {aut.n_states}")
    lines.append(f"initial: {aut.initial}")
    lines.append("accepting: " + " ".join(str(q) for q in sorted(aut.accepting)))
    if aut.deterministic:
        table = aut.table.tolist()
        for s, row in enumerate(table):
            for a, t in enumerate(row):
                lines.append(f"trans: {s} {aut.alphabet[a]} -> {t}")
    else:
        for s, a, t in sorted(aut.transitions, key=lambda e: (e[0], aut.alphabet.index(e[1]), e[2])):
            lines.append(f"trans: {s} {a} -> {t}")
    return "\n".join(lines) + "\n"


def read_aut(path):
    return parse_aut(Path(path).read_text(encoding="utf-8"))


def write_aut(obj, path):
    Path(path).write_text(format_aut(obj), encoding="utf-8")


def to_dot(obj, name="automaton") -> str:
    """DOT source; nodes in index order, parallel edges merged into one label."""
    aut = obj.acceptor if isinstance(obj, RegularRelation) else obj
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q in range(aut.n_states):
        shape = "doublecircle" if aut.accept_mask[q] else "circle"
        lines.append(f"  {q} [shape={shape}];")
    lines.append(f"  __start -> {aut.initial};")
    labels = {}
    for s, a, t in aut.transitions:
        labels.setdefault((s, t), []).append(aut.alphabet.index(a))
    for (s, t) in sorted(labels):
        text = ",".join(aut.alphabet[i] for i in sorted(labels[(s, t)]))
        text = text.replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  {s} -> {t} [label="{text}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
