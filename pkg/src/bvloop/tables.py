"""JSON form of a presentation together with its additive table."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .linalg import AbelianGroup
from .ring import GeneratorInfo, GradedPresentation, build_presentation, relation_strings
from .spaces import SpaceSpec


def default_window(space: SpaceSpec) -> range:
    """Loop degrees from the bottom class a^N b up to x^3."""
    return range(-space.dim - 1, 3 * space.x_degree + 1)


def parse_degrees(text: str) -> range:
    """``a..b`` (inclusive, either end may be negative) or a single degree."""
    s = text.strip()
    lo, sep, hi = s.partition("..")
    try:
        start = int(lo)
        stop = int(hi) if sep else start
    except ValueError:
        raise ValueError(f"bad degree range {text!r}; expected a..b") from None
    if stop < start:
        raise ValueError(f"empty degree range {text!r}")
    return range(start, stop + 1)


@dataclass(frozen=True)
class RingTable:
    space: SpaceSpec
    ring: GradedPresentation
    groups: tuple[tuple[int, AbelianGroup], ...]

    @classmethod
    def build(cls, space: SpaceSpec, degrees: range | None = None) -> RingTable:
        ring = build_presentation(space)
        degrees = degrees if degrees is not None else default_window(space)
        return cls(space, ring, tuple((k, ring.additive_group(k)) for k in degrees))

    def to_dict(self) -> dict:
        ring = self.ring
        return {
            "space": self.space.label,
            "shift": ring.ambient_shift,
            "generators": [{"name": g.name, "degree": g.loop_degree, "parity": g.parity}
                           for g in ring.generators],
            "relations": relation_strings(ring),
            "torsion": [{"modulus": k, "monomial": ring.render_monomial(m)}
                        for k, m in ring.torsion_relations],
            "groups": [{"degree": k, "rank": G.free_rank, "torsion": list(G.torsion)}
                       for k, G in self.groups],
        }

    @classmethod
    def from_dict(cls, d: dict) -> RingTable:
        space = SpaceSpec.parse(d["space"])
        gens = tuple(GeneratorInfo(g["name"], int(g["degree"])) for g in d["generators"])
        for g, raw in zip(gens, d["generators"]):
            if g.parity != raw["parity"]:
                raise ValueError(f"parity of {g.name} disagrees with its degree")
        names = [g.name for g in gens]
        mono = lambda text: _monomial(names, text)
        ring = GradedPresentation(
            name=str(space),
            generators=gens,
            monomial_relations=tuple(mono(r) for r in d["relations"]),
            torsion_relations=tuple((int(t["modulus"]), mono(t["monomial"])) for t in d["torsion"]),
            ambient_shift=int(d["shift"]),
        )
        groups = tuple((int(g["degree"]), AbelianGroup(int(g["rank"]), tuple(g["torsion"])))
                       for g in d["groups"])
        return cls(space, ring, groups)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> RingTable:
        return cls.from_dict(json.loads(text))

    def render(self) -> str:
        ring = self.ring
        lines = [f"{self.space}: loop homology, shift d = {ring.ambient_shift}", "generators:"]
        lines += [f"  {g.name}  degree {g.loop_degree:>4}  {g.parity}" for g in ring.generators]
        lines.append("relations: " + ", ".join(relation_strings(ring)))
        lines.append("torsion:   " + ", ".join(f"{k}·{ring.render_monomial(m)}"
                                               for k, m in ring.torsion_relations))
        lines.append("additive groups:")
        for k, G in self.groups:
            if not G.is_trivial:
                basis = ", ".join(ring.render_monomial(m) for m in ring.basis_in_degree(k))
                lines.append(f"  {k:>5}  {str(G):<10} {basis}")
        return "\n".join(lines)


def _monomial(names: list[str], text: str) -> tuple[int, ...]:
    exps = dict.fromkeys(names, 0)
    if text.strip() != "1":
        for factor in text.split("*"):
            m = re.fullmatch(r"\s*([A-Za-z]\w*)(?:\^(\d+))?\s*", factor)
            if not m or m.group(1) not in exps:
                raise ValueError(f"cannot parse monomial {text!r}")
            exps[m.group(1)] += int(m.group(2) or 1)
    return tuple(exps[n] for n in names)
