"""Graded-commutative rings given by generators, monomial relations and
single-monomial torsion relations, with Koszul signs.

Monomials are exponent tuples in the presentation's generator order.  For the
loop-homology rings that order is a < b < x, so ``(p, e, q)`` is a^p b^e x^q.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd
from typing import Mapping, Sequence

from .linalg import AbelianGroup
from .spaces import SpaceSpec, UnsupportedSpaceError

Monomial = tuple[int, ...]


class RingError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorInfo:
    name: str
    loop_degree: int

    @property
    def parity(self) -> str:
        return "odd" if self.loop_degree % 2 else "even"

    @property
    def is_odd(self) -> bool:
        return self.loop_degree % 2 == 1


def _divides(t: Monomial, m: Monomial) -> bool:
    return all(a <= b for a, b in zip(t, m))


@dataclass(frozen=True)
class GradedPresentation:
    """Z[generators] modulo monomial relations and torsion relations k*m = 0."""

    name: str
    generators: tuple[GeneratorInfo, ...]
    monomial_relations: tuple[Monomial, ...] = ()
    torsion_relations: tuple[tuple[int, Monomial], ...] = ()
    ambient_shift: int = 0

    def __post_init__(self):
        k = len(self.generators)
        for r in self.monomial_relations:
            if len(r) != k:
                raise RingError(f"relation {r} has wrong length")
        for i, g in enumerate(self.generators):
            if g.is_odd:
                square = tuple(2 if j == i else 0 for j in range(k))
                if square not in self.monomial_relations:
                    raise RingError(f"odd generator {g.name} needs the relation {g.name}^2")
        for modulus, m in self.torsion_relations:
            if modulus < 2:
                raise RingError(f"torsion modulus {modulus} must be >= 2")
            if self.is_zero_monomial(m):
                raise RingError(f"torsion monomial {self.render_monomial(m)} is already zero")

    # -- monomials ------------------------------------------------------

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise RingError(f"unknown generator {name!r} in {self.name}") from None

    def monomial(self, **exponents: int) -> Monomial:
        for name in exponents:
            self.index(name)
        return tuple(exponents.get(n, 0) for n in self.names)

    @property
    def unit(self) -> Monomial:
        return (0,) * len(self.generators)

    def degree(self, m: Monomial) -> int:
        return sum(e * g.loop_degree for e, g in zip(m, self.generators))

    def is_zero_monomial(self, m: Monomial) -> bool:
        return _is_zero(self, tuple(m))

    def torsion_modulus(self, m: Monomial) -> int:
        """Order of the cyclic summand spanned by m (0 when m is free)."""
        return _modulus(self, tuple(m))

    def render_monomial(self, m: Monomial) -> str:
        parts = []
        for e, name in zip(m, self.names):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def parse_word(self, text: str) -> list[tuple[str, int]]:
        """``a^2*b*x^3`` (factors separated by ``*``, ``·`` or spaces) to a word."""
        s = text.strip()
        if s == "1":
            return []
        word = []
        for factor in re.split(r"[*·\s]+", s):
            if not factor:
                continue
            m = re.fullmatch(r"([A-Za-z]\w*)(?:\^(\d+))?", factor)
            if not m:
                raise RingError(f"cannot parse factor {factor!r}")
            self.index(m.group(1))
            word.append((m.group(1), int(m.group(2) or 1)))
        if not word:
            raise RingError(f"empty monomial {text!r}")
        return word

    # -- elements -------------------------------------------------------

    def element(self, terms: Mapping[Monomial, int] | None = None) -> Element:
        return Element(self, terms or {})

    def one(self) -> Element:
        return Element(self, {self.unit: 1})

    def zero(self) -> Element:
        return Element(self, {})

    def gen(self, name: str) -> Element:
        i = self.index(name)
        return Element(self, {tuple(int(j == i) for j in range(len(self.generators))): 1})

    def mono(self, m: Monomial, coefficient: int = 1) -> Element:
        return Element(self, {tuple(m): coefficient})

    def normal_form(self, word: Sequence[tuple[str, int]]) -> Element:
        """Reorder a word of generator powers into canonical order with Koszul sign."""
        factors = []
        for name, power in word:
            if power < 0:
                raise RingError(f"negative power {name}^{power}")
            factors.extend([self.index(name)] * power)
        sign = 1
        odd = [i for i in factors if self.generators[i].is_odd]
        for i, j in itertools.combinations(range(len(odd)), 2):
            if odd[i] > odd[j]:
                sign = -sign
        exps = [0] * len(self.generators)
        for i in factors:
            exps[i] += 1
        return Element(self, {tuple(exps): sign})

    def parse(self, text: str) -> Element:
        return self.normal_form(self.parse_word(text))

    def multiply_monomials(self, m1: Monomial, m2: Monomial) -> tuple[int, Monomial]:
        """(sign, m1*m2) with sign 0 when the product vanishes."""
        return _monomial_product(self, m1, m2)

    def multiply(self, e1: Element, e2: Element) -> Element:
        if e1.ring != self or e2.ring != self:
            raise RingError("elements belong to different presentations")
        out: dict[Monomial, int] = {}
        for m1, c1 in e1.terms.items():
            for m2, c2 in e2.terms.items():
                s, m = self.multiply_monomials(m1, m2)
                if s:
                    out[m] = out.get(m, 0) + s * c1 * c2
        return Element(self, out)

    # -- additive structure ---------------------------------------------

    def exponent_bounds(self, degree: int, cutoff: int | None = None) -> list[int]:
        """Largest exponent of each generator that can occur in the given degree."""
        bounds: list[int | None] = []
        for i, g in enumerate(self.generators):
            if g.is_odd:
                bounds.append(1)
                continue
            powers = [r[i] for r in self.monomial_relations
                      if r[i] > 0 and all(e == 0 for j, e in enumerate(r) if j != i)]
            bounds.append(min(powers) - 1 if powers else None)
        lowest = sum(min(0, b * g.loop_degree) for b, g in zip(bounds, self.generators) if b is not None)
        out = []
        for b, g in zip(bounds, self.generators):
            if b is None:
                if g.loop_degree <= 0 and cutoff is None:
                    raise RingError(f"generator {g.name} is unbounded in degree {degree}")
                if g.loop_degree > 0:
                    b = max(0, (degree - lowest) // g.loop_degree)
                if cutoff is not None:
                    b = cutoff if b is None else min(b, cutoff)
            out.append(b)
        return out

    def basis_in_degree(self, degree: int, cutoff: int | None = None) -> list[Monomial]:
        """Nonzero normal-form monomials of the given loop degree, lexicographic."""
        bounds = self.exponent_bounds(degree, cutoff)
        return [m for m in itertools.product(*(range(b + 1) for b in bounds))
                if self.degree(m) == degree and not self.is_zero_monomial(m)]

    def additive_group(self, degree: int, cutoff: int | None = None) -> AbelianGroup:
        return AbelianGroup.from_cyclic(self.torsion_modulus(m) for m in self.basis_in_degree(degree, cutoff))

    def monomials(self, max_exponents: Sequence[int]) -> list[Monomial]:
        """All nonzero monomials with exponents bounded componentwise."""
        return [m for m in itertools.product(*(range(b + 1) for b in max_exponents))
                if not self.is_zero_monomial(m)]


@lru_cache(maxsize=None)
def _is_zero(ring: GradedPresentation, m: Monomial) -> bool:
    if any(e < 0 for e in m):
        raise RingError(f"negative exponent in {m}")
    if any(g.is_odd and e > 1 for e, g in zip(m, ring.generators)):
        return True
    return any(_divides(r, m) for r in ring.monomial_relations)


@lru_cache(maxsize=None)
def _modulus(ring: GradedPresentation, m: Monomial) -> int:
    if _is_zero(ring, m):
        raise RingError(f"{ring.render_monomial(m)} is zero; its modulus is undefined")
    return reduce(gcd, [k for k, t in ring.torsion_relations if _divides(t, m)], 0)


@lru_cache(maxsize=None)
def _monomial_product(ring: GradedPresentation, m1: Monomial, m2: Monomial) -> tuple[int, Monomial]:
    m = tuple(a + b for a, b in zip(m1, m2))
    if ring.is_zero_monomial(m):
        return 0, m
    # move each factor of m2 left past the later-ordered factors of m1
    odd = [g.is_odd for g in ring.generators]
    swaps = sum(m1[i] * m2[j] for i in range(len(m)) for j in range(i)
                if odd[i] and odd[j])
    return (-1 if swaps % 2 else 1), m


class Element:
    """Integer combination of normal-form monomials, reduced by torsion moduli."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: GradedPresentation, terms: Mapping[Monomial, int]):
        clean = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != len(ring.generators):
                raise RingError(f"monomial {m} has wrong length")
            if ring.is_zero_monomial(m):
                continue
            k = ring.torsion_modulus(m)
            c = c % k if k else c
            if c:
                clean[m] = c
        self.ring = ring
        self.terms = dict(sorted(clean.items()))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degrees(self) -> set[int]:
        return {self.ring.degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def degree(self) -> int | None:
        """Degree of a nonzero homogeneous element, else None."""
        d = self.degrees
        return next(iter(d)) if len(d) == 1 else None

    def coefficient(self, m: Monomial) -> int:
        return self.terms.get(tuple(m), 0)

    def _check(self, other: Element):
        if not isinstance(other, Element) or other.ring != self.ring:
            raise RingError("elements belong to different presentations")

    def __add__(self, other: Element) -> Element:
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Element(self.ring, out)

    def __neg__(self) -> Element:
        return Element(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Element(self.ring, {m: other * c for m, c in self.terms.items()})
        self._check(other)
        return self.ring.multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return isinstance(other, Element) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, tuple(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for i, (m, c) in enumerate(self.terms.items()):
            body = self.ring.render_monomial(m)
            mag = abs(c)
            term = body if mag == 1 else f"{mag}·{body}"
            if i == 0:
                out = ("-" if c < 0 else "") + term
            else:
                out += (" - " if c < 0 else " + ") + term
        return out

    def __repr__(self) -> str:
        return f"<{self.ring.name}: {self}>"


def build_presentation(space: SpaceSpec) -> GradedPresentation:
    """Loop homology ring Z[a,b,x]/(a^(N+1), b^2, a^N b, (N+1) a^N x)."""
    if not isinstance(space, SpaceSpec):
        raise UnsupportedSpaceError(f"not a space: {space!r}")
    N = space.top
    gens = (
        GeneratorInfo("a", space.a_degree),
        GeneratorInfo("b", space.b_degree),
        GeneratorInfo("x", space.x_degree),
    )
    return GradedPresentation(
        name=str(space),
        generators=gens,
        monomial_relations=((N + 1, 0, 0), (0, 2, 0), (N, 1, 0)),
        torsion_relations=((N + 1, (N, 0, 1)),),
        ambient_shift=space.dim,
    )


def monomials_up_to(ring: GradedPresentation, max_q: int) -> list[Monomial]:
    """Basis monomials a^p b^e x^q of a loop-homology ring with q <= max_q."""
    bounds = ring.exponent_bounds(0, cutoff=max_q)
    bounds[ring.index("x")] = max_q
    return ring.monomials(bounds)


def relation_strings(ring: GradedPresentation) -> list[str]:
    return [ring.render_monomial(r) for r in ring.monomial_relations]
