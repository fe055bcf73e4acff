"""
Spectral sequence against the stable splitting
==============================================

E^2 is free on a^i (x) x^j t^e. The only differential sits on page dim M and
sends t to (n+1) a^n x; the resulting E^inf is compared with the homology
obtained from the Gysin sequence of the unit tangent bundle and the stable
splitting of the free loop space.
"""

import numpy as np

from bvloop import sseq
from bvloop.spaces import SpaceSpec

space = SpaceSpec.hp(2)
H = sseq.gysin_homology(space)
print("H_*(S(eta)) for HP^2:", {i: str(g) for i, g in H.items() if not g.is_trivial})

page = sseq.run_to_infinity(space, 40)
rows = sorted({q for _, q in page.entries})
cols = sorted({p for p, _ in page.entries})
grid = np.full((len(rows), len(cols)), "", dtype=object)
for (p, q), entry in page.entries.items():
    grid[rows.index(q), cols.index(p)] = str(entry.group)
print("E^inf, rows q, columns p =", cols)
for q, row in zip(rows, grid):
    print(f"{q:>4} " + " ".join(f"{c:>6}" for c in row))

print(sseq.compare_einfty_vs_splitting(space, range(0, 41), page=page).render())

# which multiple of a^n x can d(t) be?
print("scalars consistent with the splitting:", sseq.infer_differential_scalar(space, range(0, 41)))

op2 = SpaceSpec.op2()
split = sseq.splitting_additive(op2, range(0, 91))
print("OP^2:", {k: str(g) for k, g in split.items() if not g.is_trivial})
