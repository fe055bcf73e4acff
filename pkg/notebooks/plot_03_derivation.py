"""
Re-deriving the operator
========================

Start from an unknown Delta(a^p b) = nu_p a^p and Delta(b x^q) = rho_q x^q,
impose the seven-term identity, pin the scale through the sphere inclusion and
fix the slope over the rationals. The result is compared with the closed form.
"""

from bvloop import bv
from bvloop.spaces import SpaceSpec

for n in (2, 3, 4):
    nu = bv.solve_nu_recurrence(n)
    print(f"HP^{n}: nu = {nu.describe()}")

print("lambda =", bv.pin_lambda_via_inclusion(3))
print("(l, rho_1) =", bv.rational_comparison(3))

for space in (SpaceSpec.hp(3), SpaceSpec.op2()):
    print()
    print(bv.assemble_delta(space).transcript())
