"""``.astruct`` structure manifests.

A manifest lists the base alphabet, the domain automaton file and one line
per relation; relative paths are resolved against the manifest's folder::

    # comments start with '#'
    name: presburger
    alphabet: 0 1
    domain: domain.aut
    rel Add 3 add.aut
    rel Le 2 le.aut
"""
from __future__ import annotations

from pathlib import Path

from ..automata import Automaton
from ..autfile import format_aut, read_aut
from ..errors import FormatError
from ..relations import RegularRelation
from .builtins import builtin
from .core import Presentation


def read_structure(path) -> Presentation:
    """Load a manifest, or a builtin when ``path`` is ``builtin:NAME``."""
    path = str(path)
    if path.startswith("builtin:"):
        return builtin(path[len("builtin:") :])
    folder = Path(path).parent
    text = Path(path).read_text(encoding="utf-8")
    name = Path(path).stem
    alphabet = domain = None
    rels = {}
    notes = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            notes.append(line[1:].strip())
            continue
        if line.startswith("rel "):
            parts = line.split()
            if len(parts) != 4:
                raise FormatError(f"{path}:{lineno}: expected 'rel Name arity file.aut'")
            _, rname, arity, file = parts
            rel = read_aut(folder / file)
            if isinstance(rel, Automaton):
                if int(arity) != 1:
                    raise FormatError(f"{path}:{lineno}: {file} has no tracks line but arity {arity} was declared")
                rel = RegularRelation.from_automaton(rel)
            if rel.arity != int(arity):
                raise FormatError(f"{path}:{lineno}: {file} has arity {rel.arity}, manifest says {arity}")
            rels[rname] = rel
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise FormatError(f"{path}:{lineno}: unrecognised line {line!r}")
        key = key.strip()
        value = value.strip()
        if key == "alphabet":
            alphabet = tuple(value.split())
        elif key == "domain":
            domain = read_aut(folder / value)
            if isinstance(domain, RegularRelation):
                domain = domain.as_language()
        elif key == "name":
            name = value
        else:
            raise FormatError(f"{path}:{lineno}: unknown key {key!r}")
    if alphabet is None or domain is None:
        raise FormatError(f"{path}: manifest needs alphabet and domain lines")
    if tuple(domain.alphabet) != alphabet:
        raise FormatError(f"{path}: domain automaton alphabet differs from the manifest alphabet")
    return Presentation(alphabet, domain, rels, name=name, notes="\n".join(notes))


def write_structure(p: Presentation, folder, stem=None) -> Path:
    """Write ``stem.astruct`` plus one ``.aut`` per component; returns the manifest path."""
    folder = Path(folder)
    folder.mkdir(parents=True, exist_ok=True)
    stem = stem or (p.name or "structure").replace("(", "_").replace(")", "").replace(",", "_").replace(" ", "")
    lines = [f"# {line}" for line in p.notes.splitlines() if line.strip()]
    lines += [f"name: {p.name or stem}", f"alphabet: {' '.join(p.base)}", f"domain: {stem}.domain.aut"]
    (folder / f"{stem}.domain.aut").write_text(format_aut(p.domain), encoding="utf-8")
    for rname, rel in p.relations.items():
        file = f"{stem}.{rname}.aut"
        (folder / file).write_text(format_aut(rel), encoding="utf-8")
        lines.append(f"rel {rname} {rel.arity} {file}")
    path = folder / f"{stem}.astruct"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
