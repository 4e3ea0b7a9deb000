"""
Presburger arithmetic as an automatic structure
================================================

Natural numbers are written in binary, least significant bit first, so
that addition is computed by a carry automaton reading three numbers in
parallel.  Any first-order sentence over (N; +, <=) can then be decided
by compiling it to an automaton and testing emptiness.
"""
from autostruct import automata as fa
from autostruct.logic import compile_formula, decide, define_relation, witness
from autostruct.presentations import builtin

p = builtin("presburger")
print(p.signature)                       # Add/3 and Le/2
print(p.elements(6))                     # 0 1 01 11 001 011: llex order, not numeric


def number(word):
    return int(word[::-1], 2)


# Deciding sentences: every pair has a sum, and there is no largest number.
print(decide(p, "A x. A y. E z. Add(x,y,z)"))            # True
print(decide(p, "E x. A y. Le(y,x)"))                    # False

# Sentences may use defined relations.  Even numbers are those of the form x + x.
q = define_relation(p, "Even", "E y. Add(y,y,x)")
print(decide(q, "A x. (Even(x) | E y. (Even(y) & Add(y,'1',x)))"))   # True

# A formula with free variables compiles to a relation; witness lists its
# llex-least tuples.
for assignment in witness(p, "Add(x,x,y)", 5):
    print({v: number(w) for v, w in assignment.items()})

# The counting quantifier E[n,m] asks for m witnesses modulo n.  Here the
# numbers z with x <= z <= y, counted mod 2, give the parity of y - x + 1.
parity = compile_formula(p, "E[2,0] z. (Le(x,z) & Le(z,y))").relation
print(parity.contains("0", "1"), parity.contains("01", "001"))  # True False

# Every compiled relation is a minimal automaton over the padded track alphabet.
le = p.relations["Le"]
print(le.acceptor.n_states, fa.is_infinite(le.acceptor))
