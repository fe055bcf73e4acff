"""Pontryagin rings of based loop spaces recovered by Hopf duality.

Cohomology of the based loop space is Gamma[alpha] (x) Lambda[beta] with the
coproduct below; transposing that coproduct against the dual basis gives the
homology product, which turns out to be Z[x] (x) Lambda[t].
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .linalg import identity, integer_matrix
from .ring import GeneratorInfo, GradedPresentation
from .spaces import SpaceSpec, UnsupportedSpaceError


@dataclass(frozen=True, order=True)
class DividedPowerBasisElement:
    """alpha_k beta^flag in H^*(Omega M)."""

    alpha_index: int
    beta_flag: int = 0

    def degree(self, space: SpaceSpec) -> int:
        return self.alpha_index * space.x_degree + self.beta_flag * space.t_degree

    def __str__(self) -> str:
        a = "1" if self.alpha_index == 0 else f"α{self.alpha_index}"
        if not self.beta_flag:
            return a
        return "β" if self.alpha_index == 0 else f"{a}β"


Tensor = dict  # (DividedPowerBasisElement, DividedPowerBasisElement) -> int


def _check_space(space: SpaceSpec):
    if space.family not in ("HP", "OP2"):
        raise UnsupportedSpaceError(f"no based-loop model for {space}")


def divided_power_product(i: int, j: int) -> tuple[int, int]:
    """alpha_i alpha_j = C(i+j, i) alpha_(i+j)."""
    return comb(i + j, i), i + j


def cohomology_product(u: DividedPowerBasisElement, v: DividedPowerBasisElement, space: SpaceSpec):
    """(coefficient, basis element) of u*v; alphas are even so only beta^2 = 0 matters."""
    if u.beta_flag and v.beta_flag:
        return 0, None
    c, k = divided_power_product(u.alpha_index, v.alpha_index)
    return c, DividedPowerBasisElement(k, u.beta_flag | v.beta_flag)


def coproduct(e: DividedPowerBasisElement) -> Tensor:
    """mu^* on the basis: alpha_k -> sum alpha_i (x) alpha_j, beta primitive."""
    out: Tensor = {}
    k = e.alpha_index
    for i in range(k + 1):
        j = k - i
        if e.beta_flag:
            out[DividedPowerBasisElement(i, 1), DividedPowerBasisElement(j, 0)] = 1
            out[DividedPowerBasisElement(i, 0), DividedPowerBasisElement(j, 1)] = 1
        else:
            out[DividedPowerBasisElement(i), DividedPowerBasisElement(j)] = 1
    return out


def basis(space: SpaceSpec, cutoff: int) -> list[DividedPowerBasisElement]:
    return sorted((DividedPowerBasisElement(k, f) for k in range(cutoff + 1) for f in (0, 1)),
                  key=lambda e: (e.degree(space), e))


def basis_in_degree(space: SpaceSpec, degree: int, cutoff: int) -> list[DividedPowerBasisElement]:
    return [e for e in basis(space, cutoff) if e.degree(space) == degree]


# -- the dual (homology) side --------------------------------------------

@dataclass(frozen=True, order=True)
class DualBasisElement:
    """Dual of alpha_k (``x_k``) or of alpha_k beta (``z_k``; z_0 = t)."""

    kind: str
    index: int

    @property
    def dual_of(self) -> DividedPowerBasisElement:
        return DividedPowerBasisElement(self.index, int(self.kind == "z"))

    def degree(self, space: SpaceSpec) -> int:
        return self.dual_of.degree(space)

    def __str__(self) -> str:
        if self.kind == "z" and self.index == 0:
            return "t"
        return f"{self.kind}{self.index}"


def dual(e: DividedPowerBasisElement) -> DualBasisElement:
    return DualBasisElement("z" if e.beta_flag else "x", e.alpha_index)


def pairing(u: DualBasisElement, c: DividedPowerBasisElement) -> int:
    return int(u.dual_of == c)


def tensor_pairing(u: DualBasisElement, v: DualBasisElement, c1: DividedPowerBasisElement,
                   c2: DividedPowerBasisElement, space: SpaceSpec) -> int:
    """<u (x) v, c1 (x) c2> = (-1)^(|v||c1|) <u, c1><v, c2>."""
    sign = -1 if (v.degree(space) * c1.degree(space)) % 2 else 1
    return sign * pairing(u, c1) * pairing(v, c2)


def dual_product(u: DualBasisElement, v: DualBasisElement, space: SpaceSpec, cutoff: int) -> dict:
    """u*v = sum over c of <u (x) v, mu^*(c)> c^dual, c running over the cohomology basis."""
    deg = u.degree(space) + v.degree(space)
    out = {}
    for c in basis_in_degree(space, deg, cutoff):
        coef = sum(k * tensor_pairing(u, v, c1, c2, space) for (c1, c2), k in coproduct(c).items())
        if coef:
            out[dual(c)] = coef
    return out


@dataclass
class DualProductTable:
    space: SpaceSpec
    cutoff: int
    products: dict  # (DualBasisElement, DualBasisElement) -> {DualBasisElement: int}
    powers: dict  # DualBasisElement -> {DualBasisElement: int}: x_1^i or x_1^i t expanded
    pairing_matrices: dict  # degree -> integer matrix

    def product(self, u: DualBasisElement, v: DualBasisElement) -> dict:
        return self.products[u, v]


def dualize(space: SpaceSpec, cutoff: int = 6) -> DualProductTable:
    """Transpose the coproduct to get the Pontryagin product up to alpha-index cutoff.

    Asserts x_i = x_1^i and z_i = x_1^i t, and that the classes x_1^i, x_1^i t
    pair with the cohomology basis by the identity matrix in every degree.
    """
    _check_space(space)
    if cutoff < 2:
        raise ValueError("cutoff must be at least 2")
    elems = [dual(c) for c in basis(space, cutoff)]
    products = {}
    for u in elems:
        for v in elems:
            if u.index + v.index <= cutoff:
                products[u, v] = dual_product(u, v, space, cutoff)

    x1, t = DualBasisElement("x", 1), DualBasisElement("z", 0)

    def mul(left: dict, right: DualBasisElement) -> dict:
        out = {}
        for w, c in left.items():
            for r, k in products[w, right].items():
                out[r] = out.get(r, 0) + c * k
        return {r: c for r, c in out.items() if c}

    powers = {}
    acc = {DualBasisElement("x", 0): 1}
    for i in range(cutoff + 1):
        powers[DualBasisElement("x", i)] = acc
        powers[DualBasisElement("z", i)] = mul(acc, t)
        if i < cutoff:
            acc = mul(acc, x1)

    for e, expansion in powers.items():
        if expansion != {e: 1}:
            raise AssertionError(f"{e} is not the expected power of x1 (got {expansion})")

    matrices = {}
    for deg in sorted({c.degree(space) for c in basis(space, cutoff)}):
        cs = basis_in_degree(space, deg, cutoff)
        hs = [dual(c) for c in cs]
        M = integer_matrix([[sum(k * pairing(w, c) for w, k in powers[h].items()) for c in cs] for h in hs])
        if not np.array_equal(M, identity(len(cs))):
            raise AssertionError(f"pairing in degree {deg} is not the identity")
        matrices[deg] = M
    return DualProductTable(space, cutoff, products, powers, matrices)


def based_loop_ring(space: SpaceSpec) -> GradedPresentation:
    """H_*(Omega M) = Z[x] (x) Lambda[t]."""
    _check_space(space)
    return GradedPresentation(
        name=f"H_*(Omega {space})",
        generators=(GeneratorInfo("x", space.x_degree), GeneratorInfo("t", space.t_degree)),
        monomial_relations=((0, 2),),
    )


def coassociativity_defects(space: SpaceSpec, cutoff: int) -> list[DividedPowerBasisElement]:
    """Basis elements on which (mu^* (x) 1) mu^* and (1 (x) mu^*) mu^* differ."""
    bad = []
    for c in basis(space, cutoff):
        left, right = {}, {}
        for (c1, c2), k in coproduct(c).items():
            for (d1, d2), k2 in coproduct(c1).items():
                left[d1, d2, c2] = left.get((d1, d2, c2), 0) + k * k2
            for (d1, d2), k2 in coproduct(c2).items():
                right[c1, d1, d2] = right.get((c1, d1, d2), 0) + k * k2
        if {k: v for k, v in left.items() if v} != {k: v for k, v in right.items() if v}:
            bad.append(c)
    return bad


def algebra_map_defects(space: SpaceSpec, cutoff: int) -> list[tuple]:
    """Pairs (u, v) with mu^*(uv) != mu^*(u) mu^*(v) in the graded tensor square."""
    bad = []
    for u in basis(space, cutoff):
        for v in basis(space, cutoff):
            if u.alpha_index + v.alpha_index > cutoff:
                continue
            c, w = cohomology_product(u, v, space)
            lhs = {k: c * val for k, val in coproduct(w).items()} if c else {}
            rhs = {}
            for (u1, u2), a in coproduct(u).items():
                for (v1, v2), b in coproduct(v).items():
                    # (u1 (x) u2)(v1 (x) v2) = (-1)^(|u2||v1|) u1 v1 (x) u2 v2
                    s = -1 if (u2.degree(space) * v1.degree(space)) % 2 else 1
                    k1, w1 = cohomology_product(u1, v1, space)
                    k2, w2 = cohomology_product(u2, v2, space)
                    if k1 and k2:
                        rhs[w1, w2] = rhs.get((w1, w2), 0) + s * a * b * k1 * k2
            if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
                bad.append((u, v))
    return bad
