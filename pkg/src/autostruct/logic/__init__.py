"""First-order logic with ∃^∞ and ∃^{n,m}: parsing and compilation."""
from .compiler import (
    DEFAULT_STATE_CAP,
    CompiledFormula,
    compile_formula,
    decide,
    define_relation,
    push_negations,
    witness,
)
from .syntax import (
    And,
    Atom,
    Const,
    Equal,
    Exists,
    ExistsInf,
    ExistsMod,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Truth,
    Var,
    conj,
    disj,
    free_variables,
    parse_formula,
    render,
)

compile = compile_formula
