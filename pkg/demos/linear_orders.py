"""
Automatic linear orders and ordinals
====================================

For an automatic linear order the relation "only finitely many elements
lie between x and y" is first-order definable with the quantifier
"there exist infinitely many".  Collapsing its classes again and again
until the order becomes dense gives the Cantor-Bendixson rank, and for
ordinals the same machinery recovers the Cantor normal form.
"""
from autostruct.orders import (
    analyze_order,
    cantor_normal_form,
    cb_iteration,
    cb_rank,
    dense_suborder,
    format_report,
    is_ordinal,
    ordinals_isomorphic,
)
from autostruct.presentations import builtin, ordered_sum

# The rationals (binary words ending in 1, ordered lexicographically) are
# dense, so no collapsing happens.  ω collapses to a single point.
print(cb_rank(builtin("rationals")), cb_rank(builtin("ordinal(0,1)")))   # 0 1

# ordinal(a0, a1, ..., am) presents ω^m·am + ... + ω·a1 + a0.
omega_cubed = builtin("ordinal", 0, 0, 0, 1)
print(cb_rank(omega_cubed))                                            # 3

# The iteration records how many classes each stage had (None = infinite).
print(cb_iteration(builtin("ordinal(0,2)")).trace)                     # (None, 2, 1)

# Cantor normal forms are read back from a presentation, whatever encoding
# it uses.  Adding 3 after ω·2 gives ω·2 + 3; adding 2 before ω leaves ω.
print(cantor_normal_form(ordered_sum(builtin("ordinal(0,2)"), builtin("ordinal(3)"))))   # [3, 2]
two_plus_omega = ordered_sum(builtin("ordinal(2)"), builtin("ordinal(0,1)"))
print(ordinals_isomorphic(two_plus_omega, builtin("unary_order")))                      # True

# Orders with descending chains are rejected.
for name in ["reverse_omega", "zeta", "rationals"]:
    print(name, is_ordinal(builtin(name)))

# A non-scattered order contains a dense suborder, and it can be computed.
# qinterleaved mixes rationals with discrete points.
dense = dense_suborder(builtin("qinterleaved"))
print(dense.tuples(5))

# The full report, as printed by the command line tool.
print(format_report(analyze_order(builtin("ordinal(3,2)"))))
