"""Numeric descriptions of the manifolds whose loop homology we model.

Every supported space is a rank-one symmetric space M with integral cohomology
ring Z[a]/(a^(N+1)), cells in degrees 0, c, 2c, ..., Nc, and dimension d = Nc.
All the algebra downstream is driven by these few integers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class UnsupportedSpaceError(ValueError):
    pass


@dataclass(frozen=True)
class SpaceSpec:
    """A supported manifold M.

    ``family`` is one of ``"HP"``, ``"OP2"`` or ``"EvenSphere"``.  ``n`` is the
    quaternionic dimension for HP and the sphere dimension for EvenSphere.
    """

    family: str
    n: int

    def __post_init__(self):
        if self.family == "HP":
            if self.n < 1:
                raise UnsupportedSpaceError(f"HP^{self.n} needs n >= 1")
        elif self.family == "OP2":
            if self.n != 2:
                raise UnsupportedSpaceError("only the octonionic plane OP^2 exists")
        elif self.family == "EvenSphere":
            # S^4 is HP^1 and is built through SpaceSpec.hp(1).
            if self.n != 8:
                raise UnsupportedSpaceError(f"even sphere S^{self.n} is not supported")
        else:
            raise UnsupportedSpaceError(f"unknown family {self.family!r}")

    @classmethod
    def hp(cls, n: int) -> SpaceSpec:
        return cls("HP", n)

    @classmethod
    def op2(cls) -> SpaceSpec:
        return cls("OP2", 2)

    @classmethod
    def even_sphere(cls, dim: int) -> SpaceSpec:
        if dim == 4:
            return cls.hp(1)
        return cls("EvenSphere", dim)

    @classmethod
    def parse(cls, text: str) -> SpaceSpec:
        """Parse ``hp:n``, ``op2``, ``s4`` or ``s8``."""
        s = text.strip().lower()
        m = re.fullmatch(r"hp:(\d+)", s)
        if m:
            return cls.hp(int(m.group(1)))
        if s == "op2":
            return cls.op2()
        m = re.fullmatch(r"s(\d+)", s)
        if m:
            return cls.even_sphere(int(m.group(1)))
        raise UnsupportedSpaceError(f"cannot parse space {text!r}")

    # -- cell structure -------------------------------------------------

    @property
    def cell_step(self) -> int:
        """Degree c of the cohomology generator a."""
        return {"HP": 4, "OP2": 8, "EvenSphere": self.n}[self.family]

    @property
    def top(self) -> int:
        """N with a^N the top class; a^(N+1) = 0."""
        return {"HP": self.n, "OP2": 2, "EvenSphere": 1}[self.family]

    @property
    def dim(self) -> int:
        return self.cell_step * self.top

    @property
    def euler_multiple(self) -> int:
        """Euler class of the tangent bundle as a multiple of a^N (= Euler characteristic)."""
        return self.top + 1

    # -- based loop space: H_*(Omega M) = Z[x] (x) Lambda[t] additively ----

    @property
    def t_degree(self) -> int:
        return self.cell_step - 1

    @property
    def x_degree(self) -> int:
        return self.dim + self.t_degree - 1

    # -- loop-homology generators (degrees in the shifted grading) --------

    @property
    def a_degree(self) -> int:
        return -self.cell_step

    b_degree = -1

    # -- sphere bundle S(eta) -> M and the stable splitting of LM -----------

    @property
    def sphere_fiber_dim(self) -> int:
        return self.dim - 1

    @property
    def sphere_bundle_dim(self) -> int:
        return 2 * self.dim - 1

    @property
    def zeta_dim(self) -> int:
        """Fibrewise tangent bundle of S(eta)."""
        return self.dim - 1

    @property
    def xi_dim(self) -> int:
        return self.t_degree

    def thom_shift(self, l: int) -> int:
        """Rank of l*xi + (l-1)*zeta; for HP^n this is 4n(l-1) + 2l + 1."""
        return l * self.xi_dim + (l - 1) * self.zeta_dim

    # -- presentation ---------------------------------------------------

    @property
    def label(self) -> str:
        if self.family == "HP":
            return f"hp:{self.n}"
        if self.family == "OP2":
            return "op2"
        return f"s{self.n}"

    def __str__(self) -> str:
        if self.family == "HP":
            return f"HP^{self.n}"
        if self.family == "OP2":
            return "OP^2"
        return f"S^{self.n}"
