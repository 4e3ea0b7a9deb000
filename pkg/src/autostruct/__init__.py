"""Decision procedures for word-automatic structures."""
from . import automata, logic, presentations, relations
from .automata import Automaton
from .boolean_algebras import analyze_ba, ba_check, ba_isomorphic, bomega_index
from .errors import (
    AlphabetMismatch,
    ArityError,
    AutostructError,
    CompileError,
    FormatError,
    FormulaSyntaxError,
    IterationLimitError,
    PreconditionError,
    ResourceLimitError,
    SymbolError,
)
from .logic import compile_formula, decide, define_relation, parse_formula, witness
from .orders import (
    analyze_order,
    cantor_normal_form,
    cb_rank,
    dense_suborder,
    is_dense,
    is_linear,
    is_ordinal,
    is_scattered,
    ordinals_isomorphic,
    quotient_by_eqF,
)
from .presentations import Presentation, builtin, read_structure, write_structure
from .relations import RegularRelation, TrackAlphabet
from .trees import analyze_tree, is_finitely_branching, is_po_tree, koenig_path

__version__ = "0.1.0"
