"""Exact integer linear algebra: Smith normal form and subquotient groups.

Matrices are numpy arrays of dtype ``object`` holding Python ints, so entries
never overflow and empty shapes like (0, 3) behave.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


def integer_matrix(data, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Build an exact integer matrix; ``rows``/``cols`` fix the shape of empty input."""
    M = np.array(data, dtype=object)
    if M.size == 0:
        shape = M.shape if M.ndim == 2 else (0, 0)
        return zeros(rows if rows is not None else shape[0], cols if cols is not None else shape[1])
    if M.ndim != 2:
        raise ValueError(f"expected a 2d matrix, got shape {M.shape}")
    M = np.vectorize(int, otypes=[object])(M)
    if (rows is not None and M.shape[0] != rows) or (cols is not None and M.shape[1] != cols):
        raise ValueError(f"shape {M.shape} does not match ({rows}, {cols})")
    return M


def identity(k: int) -> np.ndarray:
    M = np.zeros((k, k), dtype=object)
    for i in range(k):
        M[i, i] = 1
    return M


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"cannot compose {A.shape} with {B.shape}")
    if A.shape[1] == 0:
        return zeros(A.shape[0], B.shape[1])
    return A.dot(B)


def is_zero(M: np.ndarray) -> bool:
    return all(v == 0 for v in M.flat)


def determinant(M: np.ndarray) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    A = [[int(v) for v in row] for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    """``U @ M @ V == D`` with U, V unimodular; inverses kept for kernel/image work."""

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    U_inv: np.ndarray
    V_inv: np.ndarray

    @property
    def diagonal(self) -> list[int]:
        return [int(self.D[i, i]) for i in range(min(self.D.shape))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(M: np.ndarray) -> SmithForm:
    """Smith normal form by pivoting on the smallest nonzero entry.

    Returns U, D, V with U·M·V = D, D diagonal, d_1 | d_2 | ... and all d_i >= 0.
    """
    D = integer_matrix(M, *M.shape) if isinstance(M, np.ndarray) else integer_matrix(M)
    m, n = D.shape
    U, U_inv = identity(m), identity(m)
    V, V_inv = identity(n), identity(n)

    def swap_rows(i, j):
        if i != j:
            D[[i, j]] = D[[j, i]]
            U[[i, j]] = U[[j, i]]
            U_inv[:, [i, j]] = U_inv[:, [j, i]]

    def swap_cols(i, j):
        if i != j:
            D[:, [i, j]] = D[:, [j, i]]
            V[:, [i, j]] = V[:, [j, i]]
            V_inv[[i, j]] = V_inv[[j, i]]

    def add_row(src, dst, c):
        # row_dst += c * row_src
        D[dst] = D[dst] + c * D[src]
        U[dst] = U[dst] + c * U[src]
        U_inv[:, src] = U_inv[:, src] - c * U_inv[:, dst]

    def add_col(src, dst, c):
        # col_dst += c * col_src
        D[:, dst] = D[:, dst] + c * D[:, src]
        V[:, dst] = V[:, dst] + c * V[:, src]
        V_inv[src] = V_inv[src] - c * V_inv[dst]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(D[i, j]), i, j) for i in range(t, m) for j in range(t, n) if D[i, j] != 0]
            if not nonzero:
                break
            _, i, j = min(nonzero)
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t, t]
            dirty = False
            for i in range(t + 1, m):
                q = D[i, t] // p
                if q:
                    add_row(t, i, -q)
                dirty = dirty or D[i, t] != 0
            for j in range(t + 1, n):
                q = D[t, j] // p
                if q:
                    add_col(t, j, -q)
                dirty = dirty or D[t, j] != 0
            if dirty:
                continue
            # pivot row/column are clear; enforce divisibility on the rest
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i, j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if t < m and t < n and D[t, t] < 0:
            D[t] = -D[t]
            U[t] = -U[t]
            U_inv[:, t] = -U_inv[:, t]
    return SmithForm(U, D, V, U_inv, V_inv)


def invariant_factors(M: np.ndarray) -> list[int]:
    """Nonzero diagonal entries of the Smith form (including ones)."""
    return [d for d in smith_normal_form(M).diagonal if d != 0]


@dataclass(frozen=True, order=True)
class AbelianGroup:
    """Z^free_rank + Z/t_1 + ... + Z/t_k with t_1 | t_2 | ... and t_i >= 2."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.free_rank < 0:
            raise ValueError("negative rank")
        if any(x < 2 for x in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion {t} is not in invariant-factor form")

    @classmethod
    def from_cyclic(cls, orders: Iterable[int]) -> AbelianGroup:
        """Direct sum of cyclic groups Z/k (k = 0 meaning Z, k = 1 trivial)."""
        orders = list(orders)
        free = sum(1 for k in orders if k == 0)
        finite = [abs(k) for k in orders if k not in (0, 1, -1)]
        if not finite:
            return cls(free)
        diag = zeros(len(finite), len(finite))
        for i, k in enumerate(finite):
            diag[i, i] = k
        return cls(free, tuple(d for d in invariant_factors(diag) if d > 1))

    @classmethod
    def cokernel(cls, M: np.ndarray) -> AbelianGroup:
        """Z^rows / column span of M."""
        diag = smith_normal_form(M).diagonal if M.size else []
        free = M.shape[0] - sum(1 for d in diag if d)
        return cls(free, tuple(d for d in diag if d > 1))

    def __add__(self, other: AbelianGroup) -> AbelianGroup:
        return AbelianGroup.from_cyclic([0] * (self.free_rank + other.free_rank) + list(self.torsion + other.torsion))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_free(self) -> bool:
        return not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z_{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def kernel_basis(M: np.ndarray) -> np.ndarray:
    """Columns form a Z-basis of ker M (a saturated sublattice)."""
    snf = smith_normal_form(M)
    r = snf.rank
    return snf.V[:, r:]


def homology_at(d_in: np.ndarray, d_out: np.ndarray) -> AbelianGroup:
    """ker(d_out) / im(d_in) for  A --d_in--> B --d_out--> C."""
    if d_in.shape[0] != d_out.shape[1]:
        raise ValueError(f"maps {d_in.shape} and {d_out.shape} are not composable")
    if not is_zero(matmul(d_out, d_in)):
        raise ValueError("d_out . d_in != 0")
    dim = d_in.shape[0]
    if dim == 0:
        return AbelianGroup()
    snf = smith_normal_form(d_out) if d_out.shape[0] else None
    r = snf.rank if snf else 0
    V_inv = snf.V_inv if snf else identity(dim)
    # coordinates of im(d_in) in the kernel basis V[:, r:]
    coords = matmul(V_inv, d_in)[r:, :]
    if coords.shape[1] == 0:
        return AbelianGroup(dim - r)
    return AbelianGroup.cokernel(coords)


def rational_rank(M: np.ndarray) -> int:
    return smith_normal_form(M).rank if M.size else 0


def diagonal_matrix(entries: Sequence[int]) -> np.ndarray:
    D = zeros(len(entries), len(entries))
    for i, e in enumerate(entries):
        D[i, i] = e
    return D
