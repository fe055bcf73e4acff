"""
Additive structure of loop homology
===================================

The loop homology of HP^n is Z[a, b, x] modulo a^(n+1), b^2, a^n b and the
torsion relation (n+1) a^n x. Each degree is a finitely generated abelian
group; here we print the table and compare it with the pattern read off the
spectral sequence.
"""

from bvloop import SpaceSpec, build_presentation
from bvloop.tables import RingTable

# HP^2: generators in loop degrees -4, -1 and 10
table = RingTable.build(SpaceSpec.hp(2), range(-9, 31))
print(table.render())

# torsion appears exactly at a^n x^q, q >= 1
ring = build_presentation(SpaceSpec.hp(2))
torsion_degrees = [k for k in range(-9, 61) if ring.additive_group(k).torsion]
print("Z_3 in loop degrees", torsion_degrees)

# the octonionic plane has the same shape with a in degree -8 and x in degree 22
op2 = build_presentation(SpaceSpec.op2())
print("OP^2 torsion:", [(k, str(op2.additive_group(k))) for k in range(-17, 90) if op2.additive_group(k).torsion])
