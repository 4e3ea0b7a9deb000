"""
The configuration graph of a Turing machine
===========================================

Configurations are words: the tape to the left of the head, a marker
letter for the state, then the scanned cell and the rest of the tape.
One computation step changes a bounded window of the word, so the step
relation is recognized by a two-track automaton.  Reachability questions
about such graphs are not decidable in general, but any first-order
question is.
"""
from autostruct.logic import decide, witness
from autostruct.presentations import encode_config, parse_tm, step_config, tm_config_space

MACHINE = """
# walks right over 1s, then steps back onto the last 1 and halts
tape: b 1
states: p q h
initial: p
halting: h
trans p 1 -> q 1 R
trans q 1 -> p 1 R
trans p b -> h b L
trans q b -> h b L
"""

tm = parse_tm(MACHINE)
print(tm.markers)                                   # one marker letter per state

# Run the machine on 111 with the reference simulator.
config = encode_config(tm, "", "p", "1", "11")
while config is not None:
    print(config)
    config = step_config(tm, config)

# The same steps, as a presentation with one binary relation Edge.
g = tm_config_space(tm)
print(g.signature)
print(decide(g, "A x. A y. A z. ((Edge(x,y) & Edge(x,z)) -> y = z)"))   # deterministic: True
print(decide(g, "E x. A y. ~ Edge(x,y)"))                               # halting configurations exist

# Edges out of the shortest configurations, llex-least first.
for pair in witness(g, "Edge(x,y)", 4):
    print(pair["x"], "->", pair["y"])

