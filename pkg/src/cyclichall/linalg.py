"""Dense linear algebra over prime fields F_p.

Matrices are numpy int64 arrays with entries reduced to 0..p-1.  All
routines are exact; p must be small enough that products of two residues
fit in int64 (any p < 2**31 works).
"""

from __future__ import annotations

import itertools
from typing import Iterator

import numba
import numpy as np


def as_mat(a, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    m = np.array(a, dtype=np.int64) % p
    if shape is not None:
        m = m.reshape(shape)
    return m


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


@numba.njit(cache=True)
def _rref_inplace(r_mat, p, ncols):  # pragma: no cover - compiled
    m, n = r_mat.shape
    pivots = np.empty(min(m, ncols), dtype=np.int64)
    row = 0
    for col in range(ncols):
        if row == m:
            break
        k = -1
        for i in range(row, m):
            if r_mat[i, col] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != row:
            for c in range(n):
                tmp = r_mat[row, c]
                r_mat[row, c] = r_mat[k, c]
                r_mat[k, c] = tmp
        # modular inverse by Fermat
        a = r_mat[row, col]
        inv = 1
        e = p - 2
        while e > 0:
            if e & 1:
                inv = inv * a % p
            a = a * a % p
            e >>= 1
        if inv != 1:
            for c in range(n):
                r_mat[row, c] = r_mat[row, c] * inv % p
        for i in range(m):
            if i != row:
                f = r_mat[i, col]
                if f != 0:
                    for c in range(n):
                        r_mat[i, c] = (r_mat[i, c] - f * r_mat[row, c]) % p
        pivots[row] = col
        row += 1
    return pivots[:row]


def rref(a: np.ndarray, p: int, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of `a` over F_p.

    Pivots are only searched in the first `ncols` columns (default: all);
    row operations act on the full width, so trailing columns can carry an
    augmented block.
    """
    r_mat = np.array(a, dtype=np.int64) % p
    if r_mat.size == 0:
        return r_mat, []
    if ncols is None:
        ncols = r_mat.shape[1]
    pivots = _rref_inplace(r_mat, p, ncols)
    return r_mat, pivots.tolist()


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning {x : a x = 0}, shape (ncols, nullity)."""
    m, n = a.shape
    if m == 0 or n == 0:
        return identity(n)
    r_mat, pivots = rref(a, p)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = zeros(n, len(free))
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, pc in enumerate(pivots):
            basis[pc, k] = (-r_mat[i, f]) % p
    return basis


def column_basis(a: np.ndarray, p: int) -> np.ndarray:
    """A maximal independent subset of the columns of `a`."""
    if a.shape[1] == 0 or a.shape[0] == 0:
        return zeros(a.shape[0], 0)
    _, pivots = rref(a, p)
    return a[:, pivots] % p


def extend_basis(sub: np.ndarray, space: np.ndarray, p: int) -> np.ndarray:
    """Columns of `space` completing the independent columns `sub` to a basis of span(sub, space)."""
    k = sub.shape[1]
    both = np.hstack([sub, space])
    if both.shape[1] == 0 or both.shape[0] == 0:
        return zeros(sub.shape[0], 0)
    _, pivots = rref(both, p)
    return both[:, [c for c in pivots if c >= k]] % p


def complement(sub: np.ndarray, n: int, p: int) -> np.ndarray:
    """Standard basis vectors completing the independent columns `sub` to a basis of F_p^n."""
    return extend_basis(sub, identity(n), p)


def solve(b: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    """Coordinates x with b x = y, for `b` of full column rank.

    Raises ValueError when some column of `y` is outside the column space.
    """
    k = b.shape[1]
    if y.shape[1] == 0:
        return zeros(k, 0)
    if k == 0:
        if (y % p).any():
            raise ValueError("vector not in column space")
        return zeros(0, y.shape[1])
    r_mat, pivots = rref(np.hstack([b, y]), p, ncols=k)
    if pivots != list(range(k)):
        raise ValueError("basis matrix is not of full column rank")
    if r_mat[k:, k:].any():
        raise ValueError("vector not in column space")
    return r_mat[:k, k:]


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    return solve(a, identity(n), p)


def in_span(basis: np.ndarray, vectors: np.ndarray, p: int) -> bool:
    if vectors.shape[1] == 0:
        return True
    return rank(np.hstack([basis, vectors]), p) == rank(basis, p)


def subspaces(n: int, k: int, p: int) -> Iterator[np.ndarray]:
    """All k-dimensional subspaces of F_p^n, each once, as k x n RREF row bases.

    Order: pivot sets lexicographically, then free entries lexicographically.
    """
    if k < 0 or k > n:
        return
    if k == 0:
        yield zeros(0, n)
        return
    for pivots in itertools.combinations(range(n), k):
        pivset = set(pivots)
        free = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivset]
        base = zeros(k, n)
        for i, pc in enumerate(pivots):
            base[i, pc] = 1
        if not free:
            yield base.copy()
            continue
        rows = np.array([f[0] for f in free])
        cols = np.array([f[1] for f in free])
        for vals in itertools.product(range(p), repeat=len(free)):
            m = base.copy()
            m[rows, cols] = vals
            yield m


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def batched_invertible(mats: np.ndarray, p: int) -> np.ndarray:
    """Invertibility mask for a stack of square matrices, shape (B, n, n)."""
    a = np.array(mats, dtype=np.int64) % p
    batch, n, _ = a.shape
    ok = np.ones(batch, dtype=bool)
    if n == 0:
        return ok
    idx = np.arange(batch)
    inv_table = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv_table[x] = pow(x, -1, p)
    for col in range(n):
        sub = a[:, col:, col] != 0
        has = sub.any(axis=1)
        ok &= has
        piv = col + np.argmax(sub, axis=1)
        rows_piv = a[idx, piv].copy()
        a[idx, piv] = a[:, col]
        a[:, col] = rows_piv
        scale = inv_table[a[:, col, col]]
        a[:, col] = (a[:, col] * scale[:, None]) % p
        factors = a[:, col + 1:, col]
        a[:, col + 1:] = (a[:, col + 1:] - factors[:, :, None] * a[:, col][:, None, :]) % p
    return ok
