"""
Pontryagin ring by Hopf duality
===============================

Cohomology of the based loop space is a divided power algebra tensored with
an exterior algebra. Transposing its coproduct gives the homology product,
which is polynomial in x tensored with an exterior algebra on t.
"""

from bvloop import loops
from bvloop.spaces import SpaceSpec

space = SpaceSpec.hp(2)
print("alpha_2 alpha_3 =", loops.divided_power_product(2, 3))
table = loops.dualize(space, cutoff=6)
x1, t = loops.DualBasisElement("x", 1), loops.DualBasisElement("z", 0)
for i in range(1, 7):
    print(f"x1^{i} =", {str(k): v for k, v in table.powers[loops.DualBasisElement('x', i)].items()})
print("t*t =", table.product(t, t))
print("x1*t =", {str(k): v for k, v in table.product(x1, t).items()})
print("pairing matrices are identities in", len(table.pairing_matrices), "degrees")
print("coassociativity defects:", loops.coassociativity_defects(space, 6))
