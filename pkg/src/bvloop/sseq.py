"""The loop-homology spectral sequence of Omega M -> LM -> M over Z, and the
additive answer from the Gysin sequence of the unit tangent sphere bundle and
the stable splitting of LM.

Bidegrees follow the second-quadrant convention: E^2_{p,q} = H^{-p}(M) (x)
H_q(Omega M) with p <= 0, d^r : E_{p,q} -> E_{p-r, q+r-1}, and E^inf_{p,q}
contributes to loop degree p + q, i.e. to H_{p+q+dim M}(LM).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable

import numpy as np

from .linalg import AbelianGroup, homology_at, integer_matrix, is_zero, matmul, smith_normal_form, zeros
from .report import VerificationReport
from .ring import build_presentation
from .spaces import SpaceSpec

Position = tuple[int, int]
Key = tuple[int, int, int]  # (i, j, e) for a^i (x) x^j t^e


class WrongPageError(ValueError):
    pass


class WindowError(ValueError):
    pass


def key_label(key: Key) -> str:
    i, j, e = key
    base = "1" if i == 0 else "a" if i == 1 else f"a^{i}"
    fib = [] if j == 0 else ["x"] if j == 1 else [f"x^{j}"]
    if e:
        fib.append("t")
    return f"{base}⊗{'*'.join(fib) if fib else '1'}"


@dataclass(frozen=True)
class Entry:
    """A group on the page with named generators (one per cyclic summand)."""

    group: AbelianGroup
    labels: tuple[str, ...] = ()
    keys: tuple[Key, ...] = ()  # E^2 basis when the entry is still the full free E^2 group


@dataclass(frozen=True)
class SSPage:
    r: int
    space: SpaceSpec
    entries: dict = field(default_factory=dict)  # Position -> Entry (nonzero only)
    differentials: dict = field(default_factory=dict)  # source Position -> matrix
    q_max: int = 0
    final: bool = False

    def group(self, p: int, q: int) -> AbelianGroup:
        e = self.entries.get((p, q))
        return e.group if e else AbelianGroup()

    def target(self, pos: Position) -> Position:
        p, q = pos
        return p - self.r, q + self.r - 1

    def source(self, pos: Position) -> Position:
        p, q = pos
        return p + self.r, q - self.r + 1

    def rank(self, pos: Position) -> int:
        e = self.entries.get(pos)
        return len(e.keys) if e else 0

    def differential(self, pos: Position) -> np.ndarray:
        """d^r out of ``pos`` as a (rank target) x (rank source) matrix."""
        if pos in self.differentials:
            return self.differentials[pos]
        return zeros(self.rank(self.target(pos)), self.rank(pos))

    def antidiagonal(self, total: int) -> dict:
        return {pos: e for pos, e in self.entries.items() if pos[0] + pos[1] == total}

    def total_group(self, total: int) -> AbelianGroup:
        g = AbelianGroup()
        for e in self.antidiagonal(total).values():
            g = g + e.group
        return g


def build_e2(space: SpaceSpec, q_max: int) -> SSPage:
    """E^2 with every entry Z on the basis a^i (x) x^j t^e (all groups free)."""
    c, N = space.cell_step, space.top
    entries: dict = {}
    for i in range(N + 1):
        j = 0
        while j * space.x_degree <= q_max:
            for e in (0, 1):
                q = j * space.x_degree + e * space.t_degree
                if q <= q_max:
                    pos = (-c * i, q)
                    keys = (entries[pos].keys if pos in entries else ()) + ((i, j, e),)
                    entries[pos] = Entry(AbelianGroup(len(keys)), tuple(key_label(k) for k in keys), keys)
            j += 1
    return SSPage(2, space, entries, {}, q_max)


def differential_page(space: SpaceSpec) -> int:
    """The page carrying the transgression of t: r = dim M."""
    return space.dim


def install_differentials(page: SSPage, space: SpaceSpec, scalar: int | None = None) -> SSPage:
    """Put d^(dim M) on the page: d(a^i x^j t) = s a^(i+N) x^(j+1) by the Leibniz rule.

    Earlier pages carry no differentials, so E^2 = E^(dim M).  ``scalar`` s
    defaults to the Euler multiple N + 1.
    """
    if page.r != 2 or page.differentials:
        raise WrongPageError(f"differentials are installed on a bare E^2 page, got E^{page.r}")
    s = space.euler_multiple if scalar is None else scalar
    N = space.top
    r = differential_page(space)
    new = SSPage(r, space, dict(page.entries), {}, page.q_max)
    diffs = {}
    for pos, entry in page.entries.items():
        tgt = new.target(pos)
        tgt_keys = page.entries[tgt].keys if tgt in page.entries else ()
        M = zeros(len(tgt_keys), len(entry.keys))
        for col, (i, j, e) in enumerate(entry.keys):
            if not e:
                continue  # a and x are permanent cycles
            image_key = (i + N, j + 1, 0)
            # a^(i+N) = 0 in H^*(M) once i >= 1
            value = s if i + N <= N else 0
            if image_key in tgt_keys:
                M[tgt_keys.index(image_key), col] = value
            elif value and tgt[1] <= page.q_max:
                raise AssertionError(f"Leibniz image of {key_label((i, j, e))} missing from E^2")
        diffs[pos] = M
    return replace(new, differentials=diffs)


def check_d_squared(page: SSPage) -> list[Position]:
    bad = []
    for pos in page.differentials:
        tgt = page.target(pos)
        if tgt in page.differentials and not is_zero(matmul(page.differential(tgt), page.differential(pos))):
            bad.append(pos)
    return bad


def _quotient_labels(entry_keys, K: np.ndarray, coords: np.ndarray) -> tuple[AbelianGroup, tuple[str, ...]]:
    """Group ker/im with generator labels written in the old E^2 basis."""
    k = K.shape[1]
    if k == 0:
        return AbelianGroup(), ()
    if coords.shape[1] == 0:
        coords = zeros(k, 0)
    snf = smith_normal_form(coords) if coords.size else None
    diag = snf.diagonal if snf else []
    gens = matmul(K, snf.U_inv) if snf else K
    orders = [diag[i] if i < len(diag) else 0 for i in range(k)]
    labels = []
    for col, d in enumerate(orders):
        if d == 1:
            continue
        terms = [(int(gens[row, col]), key_label(entry_keys[row])) for row in range(gens.shape[0]) if gens[row, col]]
        labels.append(" + ".join(lab if c == 1 else f"{c}·{lab}" for c, lab in terms))
    return AbelianGroup.from_cyclic(orders), tuple(labels)


def turn_page(page: SSPage) -> SSPage:
    """E^(r+1) = ker d^r / im d^r; only free entries may carry nonzero differentials."""
    entries = {}
    for pos, entry in page.entries.items():
        d_out = page.differential(pos)
        d_in = page.differential(page.source(pos))
        if (not is_zero(d_out) or not is_zero(d_in)) and not entry.group.is_free:
            raise NotImplementedError("differentials on torsion entries are not supported")
        if is_zero(d_out) and is_zero(d_in):
            entries[pos] = entry
            continue
        group = homology_at(d_in, d_out)
        snf = smith_normal_form(d_out) if d_out.shape[0] else None
        r = snf.rank if snf else 0
        K = snf.V[:, r:] if snf else integer_matrix(np.eye(d_out.shape[1], dtype=int))
        V_inv = snf.V_inv if snf else K
        coords = matmul(V_inv, d_in)[r:, :]
        g, labels = _quotient_labels(entry.keys, K, coords)
        assert g == group
        if not group.is_trivial:
            keys = entry.keys if group.free_rank == len(entry.keys) and is_zero(d_out) else ()
            entries[pos] = Entry(group, labels, keys)
    return SSPage(page.r + 1, page.space, entries, {}, page.q_max)


def run_to_infinity(space: SpaceSpec, q_max: int, scalar: int | None = None,
                    margin: int | None = None) -> SSPage:
    """E^inf for 0 <= q <= q_max.

    The page is computed on a window enlarged by ``margin`` rows (default r - 1)
    so every differential into or out of a returned entry lies inside it.
    Beyond page dim M every differential leaves the strip -dim M <= p <= 0.
    """
    r = differential_page(space)
    margin = r - 1 if margin is None else margin
    if margin < r - 1:
        raise WindowError(f"window margin {margin} cannot certify d^{r} (needs {r - 1})")
    if q_max < 0:
        raise WindowError("empty window")
    page = install_differentials(build_e2(space, q_max + margin), space, scalar)
    if check_d_squared(page):
        raise AssertionError("d^r d^r != 0")
    page = turn_page(page)
    if any(p < -space.dim or p > 0 for p, _ in page.entries):
        raise WindowError("entries outside the strip; later differentials not certified")
    entries = {pos: e for pos, e in page.entries.items() if pos[1] <= q_max}
    return SSPage(page.r, space, entries, {}, q_max, final=True)


def euler_characteristic(page: SSPage) -> int:
    return sum((-1) ** ((p + q) % 2) * e.group.free_rank for (p, q), e in page.entries.items())


# -- additive answer from the sphere bundle --------------------------------

def manifold_homology(space: SpaceSpec) -> dict[int, AbelianGroup]:
    return {k * space.cell_step: AbelianGroup(1) for k in range(space.top + 1)}


def gysin_homology(space: SpaceSpec) -> dict[int, AbelianGroup]:
    """H_*(S(eta)) for the unit tangent bundle, from the Gysin sequence.

    ... -> H_j(S) -> H_j(M) --cap e--> H_(j-d)(M) -> H_(j-1)(S) -> ...
    so H_j(S) is an extension of ker(cap e on H_j(M)) by coker(cap e on H_(j+1)(M));
    the kernel is free, so the extension splits.
    """
    d = space.dim
    HM = manifold_homology(space)
    rank = lambda k: HM[k].free_rank if k in HM else 0
    euler = space.euler_multiple

    def cap(k: int) -> np.ndarray:
        # cap with e = euler * a^N sends the top class to euler times the point
        M = zeros(rank(k - d), rank(k))
        if rank(k) and rank(k - d):
            M[0, 0] = euler if k == d and k - d == 0 else 0
        return M

    out = {}
    for j in range(0, space.sphere_bundle_dim + 1):
        coker = homology_at(cap(j + 1), zeros(0, rank(j + 1 - d)))
        ker = homology_at(zeros(rank(j), 0), cap(j))
        out[j] = coker + ker
    return out


def gysin_sphere_bundle(n: int) -> dict[int, AbelianGroup]:
    return gysin_homology(SpaceSpec.hp(n))


def splitting_additive(space: SpaceSpec, degrees: Iterable[int]) -> dict[int, AbelianGroup]:
    """H_k(LM) = H_k(M) + sum over l >= 1 of H_(k - shift(l))(S(eta))."""
    HS = gysin_homology(space)
    HM = manifold_homology(space)
    out = {}
    for k in degrees:
        g = HM.get(k, AbelianGroup())
        l = 1
        while space.thom_shift(l) <= k:
            g = g + HS.get(k - space.thom_shift(l), AbelianGroup())
            l += 1
        out[k] = g
    return out


def op2_table(k: int) -> AbelianGroup:
    """The closed-form additive homology of L(OP^2)."""
    if k in (0, 8, 16):
        return AbelianGroup(1)
    for m in range(1, k // 22 + 2):
        if k in (22 * m - 15, 22 * m - 7, 22 * m + 8, 22 * m + 16):
            return AbelianGroup(1)
        if k == 22 * m:
            return AbelianGroup(0, (3,))
    return AbelianGroup()


def compare_einfty_vs_splitting(space: SpaceSpec, degrees: Iterable[int], scalar: int | None = None,
                                page: SSPage | None = None) -> VerificationReport:
    """E^inf antidiagonals against the splitting, degree by degree (unshifted grading)."""
    degrees = list(degrees)
    d = space.dim
    page = page or run_to_infinity(space, max(degrees), scalar)
    split = splitting_additive(space, degrees)
    report = VerificationReport("einfty_vs_splitting", space.label,
                                parameters={"degrees": [min(degrees), max(degrees)]})
    mismatches, ambiguous = [], []
    for k in degrees:
        diag = page.antidiagonal(k - d)
        if sum(1 for e in diag.values() if not e.group.is_trivial) > 1:
            ambiguous.append(k)
        if page.total_group(k - d) != split[k]:
            mismatches.append(f"H_{k}: E^inf {page.total_group(k - d)} vs splitting {split[k]}")
    report.add("additive_agreement", not mismatches,
               "; ".join(mismatches[:5]) if mismatches else f"{len(degrees)} degrees agree")
    report.add("no_extension_ambiguity", not ambiguous, f"ambiguous degrees {ambiguous}" if ambiguous else "")
    return report


def infer_differential_scalar(space: SpaceSpec, degrees: Iterable[int], candidates: Iterable[int] | None = None) -> list[int]:
    """Scalars s for d(t) = s a^N x that make E^inf match the splitting."""
    degrees = list(degrees)
    if candidates is None:
        candidates = range(0, space.top + 3)
    return [s for s in candidates if compare_einfty_vs_splitting(space, degrees, scalar=s).passed]


def einfty_vs_ring(space: SpaceSpec, degrees: Iterable[int], page: SSPage | None = None) -> list[str]:
    """Loop degrees where the E^inf antidiagonal differs from the ring's additive group."""
    ring = build_presentation(space)
    degrees = list(degrees)
    page = page or run_to_infinity(space, max(degrees) + space.dim)
    return [f"{k}: {page.total_group(k)} vs {ring.additive_group(k)}"
            for k in degrees if page.total_group(k) != ring.additive_group(k)]
