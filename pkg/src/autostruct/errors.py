"""Exception hierarchy shared by every layer of the toolkit."""


class AutostructError(Exception):
    """Base class for all library errors."""


class AlphabetMismatch(AutostructError, ValueError):
    """Two automata or relations were combined over different alphabets."""


class SymbolError(AutostructError, ValueError):
    """A string mentions a character outside the alphabet."""


class ArityError(AutostructError, ValueError):
    """Track index, permutation or arity constraint violated."""


class FormulaSyntaxError(AutostructError, ValueError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} (column {position + 1})"
        super().__init__(message)


class CompileError(AutostructError, ValueError):
    """Formula does not fit the presentation (unknown relation, arity, constant)."""


class ResourceLimitError(AutostructError, RuntimeError):
    """An intermediate automaton exceeded the configured state cap."""


class PreconditionError(AutostructError, ValueError):
    """An analysis precondition (axiom, signature, finiteness) failed."""

    def __init__(self, message, failed=None):
        self.failed = failed
        super().__init__(message)


class IterationLimitError(AutostructError, RuntimeError):
    """An iterative analysis did not reach its fixed point within the cap."""


class FormatError(AutostructError, ValueError):
    """Malformed .aut / .astruct / TM file."""
