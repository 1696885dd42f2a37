"""Dense exact linear algebra over a FieldSpec.

Matrices are 2-d ``int64`` arrays of encoded field elements (see
``exactfield``) and are always passed together with their field.  Vectors
are columns: a matrix ``M`` acts as ``v -> M @ v``.

Tensor flattening for H (x) H is fixed: ``e_i (x) e_j`` sits at flat index
``i * n + j``, which is numpy's C order for an ``(n, n)`` array.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactfield import FieldSpec


class DimensionError(ValueError):
    pass


def rref(field: FieldSpec, M) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns.

    Pivot = first nonzero entry at or below the current row; elimination
    touches only the rows that are nonzero in the pivot column.
    """
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise DimensionError("rref expects a 2-d array")
    rows, cols = A.shape
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        lead = A[r, c]
        if lead != 1:
            A[r, c:] = field.mul(A[r, c:], field.inv(lead))
        hit = np.flatnonzero(A[:, c])
        hit = hit[hit != r]
        if hit.size:
            A[np.ix_(hit, np.arange(c, cols))] = field.sub(
                A[np.ix_(hit, np.arange(c, cols))],
                field.mul(A[hit, c][:, None], A[r, c:][None, :]),
            )
        pivots.append(c)
        r += 1
    return A, r, pivots


def rank(field: FieldSpec, M) -> int:
    return rref(field, M)[1]


def _kernel_basis(field: FieldSpec, M) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    R, rk, pivots = rref(field, M)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = field.neg(R[i, f])
    return basis


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space of ``basis`` in canonical RREF (one vector per row)."""

    field: FieldSpec
    ambient_dim: int
    basis: np.ndarray

    @classmethod
    def span(cls, field: FieldSpec, vectors, ambient_dim: int | None = None) -> "Subspace":
        V = np.asarray(vectors, dtype=np.int64)
        if V.size == 0:
            if ambient_dim is None:
                raise DimensionError("ambient dimension needed for an empty spanning set")
            return cls(field, ambient_dim, np.zeros((0, ambient_dim), dtype=np.int64))
        V = V.reshape(-1, V.shape[-1])
        if ambient_dim is not None and V.shape[1] != ambient_dim:
            raise DimensionError(f"vectors of length {V.shape[1]} in ambient dim {ambient_dim}")
        R, rk, _ = rref(field, V)
        return cls(field, V.shape[1], R[:rk].copy())

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, np.zeros((0, n), dtype=np.int64))

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, np.eye(n, dtype=np.int64))

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and np.array_equal(self.basis, other.basis)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.field})"

    def _check(self, other: "Subspace") -> None:
        if self.field != other.field or self.ambient_dim != other.ambient_dim:
            raise DimensionError(
                f"ambient mismatch: {self.ambient_dim} over {self.field} vs "
                f"{other.ambient_dim} over {other.field}"
            )

    def annihilator(self) -> "Subspace":
        """All functionals (as row vectors) vanishing on this subspace."""
        if self.dim == 0:
            return Subspace.full(self.field, self.ambient_dim)
        return Subspace.span(self.field, _kernel_basis(self.field, self.basis), self.ambient_dim)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, np.vstack([self.basis, other.basis]), self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient_dim)
        both = np.vstack([self.annihilator().basis, other.annihilator().basis])
        if both.shape[0] == 0:
            return Subspace.full(self.field, self.ambient_dim)
        return Subspace.span(self.field, _kernel_basis(self.field, both), self.ambient_dim)

    def contains_vector(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(-1)
        if v.shape[0] != self.ambient_dim:
            raise DimensionError("vector length does not match ambient dimension")
        if not v.any():
            return True
        return rank(self.field, np.vstack([self.basis, v[None, :]])) == self.dim

    def contains(self, other: "Subspace") -> bool:
        """True when ``other`` is a subspace of ``self``."""
        self._check(other)
        if other.dim == 0:
            return True
        return (self + other).dim == self.dim

    def quotient_dim(self, other: "Subspace") -> int:
        """dim(self) - dim(self ∩ other)."""
        return self.dim - self.intersect(other).dim

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of ``v`` with respect to the canonical basis."""
        v = np.asarray(v, dtype=np.int64).reshape(-1)
        sol = solve(self.field, self.basis.T, v)
        if sol is None:
            raise ValueError("vector is not in the subspace")
        return sol


def subspace_ops(A: Subspace, B: Subspace, op: str):
    if op == "sum":
        return A + B
    if op == "intersect":
        return A.intersect(B)
    if op == "contains":
        return A.contains(B)
    if op == "quotient_dim":
        return A.quotient_dim(B)
    raise ValueError(f"unknown subspace operation {op!r}")


def kernel(field: FieldSpec, M) -> Subspace:
    """Null space {v : M v = 0} in canonical form."""
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2:
        raise DimensionError("kernel expects a 2-d array")
    if M.shape[0] == 0:
        return Subspace.full(field, M.shape[1])
    return Subspace.span(field, _kernel_basis(field, M), M.shape[1])


def image(field: FieldSpec, M) -> Subspace:
    """Column space of M."""
    M = np.asarray(M, dtype=np.int64)
    return Subspace.span(field, M.T, M.shape[0])


def solve(field: FieldSpec, A, b) -> np.ndarray | None:
    """Some solution x of A x = b, or None.  Free variables are set to 0."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    aug = np.hstack([A, b.reshape(A.shape[0], -1)])
    nrhs = aug.shape[1] - A.shape[1]
    R, rk, pivots = rref(field, aug)
    if any(p >= A.shape[1] for p in pivots):
        return None
    x = np.zeros((A.shape[1], nrhs), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, A.shape[1]:]
    return x.reshape(-1) if b.ndim == 1 else x


def inverse(field: FieldSpec, M) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    if M.shape != (n, n):
        raise DimensionError("inverse of a non-square matrix")
    R, rk, _ = rref(field, np.hstack([M, np.eye(n, dtype=np.int64)]))
    if rk < n or not np.array_equal(R[:, :n], np.eye(n, dtype=np.int64)):
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:].copy()


def kronecker(field: FieldSpec, A, B) -> np.ndarray:
    """Kronecker product; row/column (i, j) flatten to i * dim(B) + j."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    prod = field.mul(A[:, None, :, None], B[None, :, None, :])
    return prod.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])


def matrix_power(field: FieldSpec, M, k: int) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    result = np.eye(M.shape[0], dtype=np.int64)
    base = M
    while k:
        if k & 1:
            result = field.matmul(result, base)
        base = field.matmul(base, base)
        k >>= 1
    return result


def matrix_order(field: FieldSpec, M, cap: int) -> int | None:
    """Smallest k >= 1 with M^k = I, or None if there is none up to ``cap``."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    if M.shape != (n, n):
        raise DimensionError("matrix_order needs a square matrix")
    eye = np.eye(n, dtype=np.int64)
    P = M.copy()
    for k in range(1, cap + 1):
        if np.array_equal(P, eye):
            return k
        P = field.matmul(P, M)
    return None
