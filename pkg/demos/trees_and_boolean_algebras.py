"""
Infinite paths in trees and the classification of Boolean algebras
===================================================================

An automatic tree that is infinite and finitely branching has an infinite
path (König's lemma), and the leftmost one is itself a regular set of
nodes.  Automatic Boolean algebras are classified by a single number n:
each is isomorphic to a power B_ω^n of the algebra of finite and
co-finite sets of naturals.
"""
from autostruct import automata as fa
from autostruct.automata import Automaton
from autostruct.boolean_algebras import ba_check, ba_failures, bomega_index
from autostruct.presentations import builtin
from autostruct.trees import analyze_tree, koenig_path, verify_path

# The full binary tree under the prefix order.  Its leftmost path is 0*.
tree = builtin("word_tree")
path = koenig_path(tree)
print(path.tuples(5))                                      # '', '0', '00', ...
zeros = Automaton(("0", "1"), 1, 0, [0], [(0, "0", 0)])
print(fa.equivalent(path.as_language(), zeros))            # True
print(verify_path(tree, path))

# tree_omega has a node with infinitely many children, so the lemma does
# not apply and the analysis stops after the branching test.
print(analyze_tree(builtin("tree_omega")))

# bomega writes a finite set as its characteristic word over 0/1 and a
# co-finite set as a word over 2/3, where 2 marks members and every
# position past the end is a member.  It satisfies the axioms.
bomega = builtin("bomega")
print(ba_failures(bomega))                                 # []
handle = ba_check(bomega)
print([t[0] for t in handle.work.relations["Atom"].tuples(4)])   # the singletons

# The index counts how many disjoint pieces with infinitely many atoms the
# top element splits into.
for name in ["bomega", "bomega_power(2)"]:
    print(name, bomega_index(builtin(name)))
