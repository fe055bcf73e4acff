"""
The BV operator and its bracket
===============================

Delta kills every monomial without b and sends a^p b x^q to
c(p, q) a^p x^q. We evaluate a few values, run the exhaustive sweeps and show
that a perturbed coefficient is caught by the seven-term identity.
"""

from bvloop import bv
from bvloop.ring import build_presentation
from bvloop.spaces import SpaceSpec

hp2 = build_presentation(SpaceSpec.hp(2))
for word in ("b", "a*b", "b*x", "a*b*x", "a^2*b*x", "x^3"):
    print(f"Delta({word}) = {bv.delta(hp2.parse(word))}")

# a^2 x is 3-torsion, so the would-be value q(n+1) a^n x^q vanishes
print("3·a^2*x =", hp2.mono((2, 0, 1), 3))

a, b, x = hp2.gen("a"), hp2.gen("b"), hp2.gen("x")
print("{a, b} =", bv.bracket(a, b))
print("{b, x} =", bv.bracket(b, x))

table = bv.theorem_table(SpaceSpec.hp(2))
print(bv.check_delta_squared(table).render())
print(bv.seven_term_sweep(table).render())

# change the slope in q and the identity breaks
mutant = bv.BVTable(SpaceSpec.hp(2), lambda p, q: (2 - p) + 2 * q, "(2-p) + 2q")
print(bv.seven_term_sweep(mutant, 3).render())
