"""Gaussian elimination over F_q and unit-pivot solving over Z/p^K.

Pivoting is deterministic everywhere: the pivot of each column is the first
row (in order) holding a nonzero (resp. unit) entry, and columns are scanned
left to right.
"""
from __future__ import annotations

import numpy as np

from .field_tower import FieldCtx

_INT64_SAFE = 2 ** 31


def _as_array(rows, ncols: int) -> np.ndarray:
    if len(rows) == 0:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.array(rows, dtype=np.int64).reshape(len(rows), ncols)


class Echelon:
    """Reduced row echelon form of a list of row vectors over F_q."""

    def __init__(self, rows, ncols: int, field: FieldCtx):
        self.field = field
        self.ncols = ncols
        if field.a == 1:
            self.rows, self.pivots = _rref_prime(_as_array(rows, ncols) % field.p, field.p)
        else:
            self.rows, self.pivots = _rref_generic([list(r) for r in rows], ncols, field)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def non_pivots(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.ncols) if c not in piv]

    def reduce(self, vec):
        """Remainder of ``vec`` after clearing every pivot coordinate."""
        fld = self.field
        if fld.a == 1:
            v = np.array(vec, dtype=np.int64) % fld.p
            for row, c in zip(self.rows, self.pivots):
                if v[c]:
                    v = (v - v[c] * row) % fld.p
            return v
        v = list(vec)
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                f = v[c]
                v = [fld.sub(x, fld.mul(f, y)) for x, y in zip(v, row)]
        return v

    def in_span(self, vec) -> bool:
        return not any(int(x) for x in self.reduce(vec))


def _rref_prime(M: np.ndarray, p: int):
    M = M.copy()
    nrows, ncols = M.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            M[[r, i]] = M[[i, r]]
        M[r] = M[r] * pow(int(M[r, c]), -1, p) % p
        col = M[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            M[nzr] = (M[nzr] - np.outer(col[nzr], M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def _rref_generic(M: list[list[int]], ncols: int, fld: FieldCtx):
    pivots = []
    r = 0
    nrows = len(M)
    for c in range(ncols):
        if r == nrows:
            break
        i = next((i for i in range(r, nrows) if M[i][c]), None)
        if i is None:
            continue
        M[r], M[i] = M[i], M[r]
        inv = fld.inv(M[r][c])
        M[r] = [fld.mul(inv, x) for x in M[r]]
        for k in range(nrows):
            if k != r and M[k][c]:
                f = M[k][c]
                M[k] = [fld.sub(x, fld.mul(f, y)) for x, y in zip(M[k], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank_fq(rows, ncols: int, field: FieldCtx) -> int:
    return Echelon(rows, ncols, field).rank


def solve_fq(A_cols, b, nrows: int, field: FieldCtx):
    """Least-index particular solution of sum_j x_j A_cols[j] = b, or None if inconsistent.

    Free variables are set to zero; pivots are chosen left to right, so the
    solution is supported on the earliest independent columns.
    """
    ncols = len(A_cols)
    aug_rows = []
    for i in range(nrows):
        aug_rows.append([col[i] for col in A_cols] + [b[i]])
    ech = Echelon(aug_rows, ncols + 1, field)
    if ncols in ech.pivots:
        return None
    x = [0] * ncols
    for row, c in zip(ech.rows, ech.pivots):
        x[c] = int(row[ncols])
    return x


# -- Z/p^K --------------------------------------------------------------------

def _modmat(M, mod):
    if mod < _INT64_SAFE:
        return np.asarray(M, dtype=np.int64) % mod
    return np.array([[int(x) % mod for x in row] for row in np.atleast_2d(M)], dtype=object).reshape(np.shape(M))


def matmul_mod(A, B, mod: int):
    if mod < _INT64_SAFE and A.dtype != object and B.dtype != object and (A.shape[-1] if A.ndim else 1) * mod * mod < 2 ** 62:
        return (A @ B) % mod
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    return (A @ B) % mod


def inverse_mod(S: np.ndarray, p: int, K: int) -> np.ndarray:
    """Inverse of a square integer matrix that is invertible mod p, modulo p^K."""
    mod = p ** K
    m = S.shape[0]
    use_obj = mod * mod >= 2 ** 62
    dtype = object if use_obj else np.int64
    A = np.concatenate([np.asarray(S, dtype=dtype) % mod, np.eye(m, dtype=dtype)], axis=1)
    for c in range(m):
        piv = None
        for i in range(c, m):
            if int(A[i, c]) % p:
                piv = i
                break
        if piv is None:
            raise ZeroDivisionError("matrix is singular mod p")
        if piv != c:
            A[[c, piv]] = A[[piv, c]]
        A[c] = A[c] * pow(int(A[c, c]), -1, mod) % mod
        col = A[:, c].copy()
        col[c] = 0
        nz = [i for i in range(m) if int(col[i])]
        if nz:
            A[nz] = (A[nz] - np.outer(col[nz], A[c])) % mod
    return A[:, m:]


class SurjectionSolver:
    """Right inverse of an integer matrix A (rows x cols) that is surjective mod p.

    Pivot columns are chosen greedily left to right mod p; solutions are
    supported on them.  By Nakayama the pivot square block is invertible
    over Z_p, so solutions are exact modulo p^K with no precision loss.
    """

    def __init__(self, A: np.ndarray, p: int, K: int):
        self.p, self.K, self.mod = p, K, p ** K
        nrows, ncols = A.shape
        self.shape = A.shape
        if nrows == 0:
            self.pivots = []
            self.inv = np.zeros((0, 0), dtype=np.int64)
            return
        _, pivots = _rref_prime(np.asarray(A, dtype=np.int64) % p, p)
        if len(pivots) != nrows:
            raise ValueError(f"matrix has rank {len(pivots)} < {nrows} mod p")
        self.pivots = pivots
        self.inv = inverse_mod(np.asarray(A)[:, pivots], p, K)

    def solve(self, b: np.ndarray) -> np.ndarray:
        """x with A x = b mod p^K; b may be a vector or a matrix of right-hand sides."""
        b = np.asarray(b)
        out_shape = (self.shape[1],) + b.shape[1:]
        dtype = object if self.inv.dtype == object or b.dtype == object else np.int64
        x = np.zeros(out_shape, dtype=dtype)
        if self.shape[0]:
            x[self.pivots] = matmul_mod(self.inv, b % self.mod, self.mod)
        return x
