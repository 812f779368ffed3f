"""Exact linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries reduced into [0, p).  Vectors
are rows and linear maps act by right multiplication, so the kernel of a
map m is {x : x @ m = 0}.  Pivot and free-variable choices are leftmost /
zero so every output is bit-reproducible.
"""

from __future__ import annotations

import numpy as np

from .errors import InconsistentSystem, ResourceGuard

# n * (p-1)^2 must stay inside int64 for plain @-products; this bound is
# comfortable for any dimension this package ever sees.
MAX_PRIME = 1 << 20


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if p > MAX_PRIME:
        raise ResourceGuard(f"modulus {p} exceeds the supported bound {MAX_PRIME}")
    return p


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of 0 mod p")
    return pow(a, p - 2, p)


def mat(data, p: int) -> np.ndarray:
    """Coerce to an int64 array reduced mod p."""
    return np.asarray(data, dtype=np.int64) % p


def zeros(shape) -> np.ndarray:
    return np.zeros(shape, dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def row_reduce(m: np.ndarray, p: int):
    """Reduced row-echelon form.

    Returns (rref, rank, pivot_columns).  Pivots are chosen leftmost, with
    the lowest-index candidate row, so the result is unique and the
    function is idempotent.
    """
    a = np.array(m, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("row_reduce expects a 2-d array")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = (a[r] * inv_mod(int(a[r, c]), p)) % p
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a, r, pivots


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    return row_reduce(m, p)[1]


def right_nullspace(m: np.ndarray, p: int) -> np.ndarray:
    """Rows v with m @ v^T = 0, one per free column, in RREF-derived order."""
    rows, cols = m.shape
    rref, r, pivots = row_reduce(m, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = zeros((len(free), cols))
    for i, c in enumerate(free):
        basis[i, c] = 1
        for row_idx, pc in enumerate(pivots):
            basis[i, pc] = (-rref[row_idx, c]) % p
    return basis


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of the left kernel {x : x @ m = 0}."""
    return right_nullspace(m.T, p)


def solve_linear(m: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """One particular solution x of x @ m = b, free variables set to 0.

    m is (n x c), b is (k x c); the result is (k x n).  Raises
    InconsistentSystem when no solution exists.
    """
    b = np.atleast_2d(np.asarray(b, dtype=np.int64)) % p
    n, c = m.shape
    k = b.shape[0]
    if b.shape[1] != c:
        raise ValueError("incompatible shapes in solve_linear")
    aug = np.hstack([m.T % p, b.T])
    rref, r, pivots = row_reduce(aug, p)
    x = zeros((k, n))
    for row_idx, pc in enumerate(pivots):
        if pc >= n:
            raise InconsistentSystem("x @ m = b has no solution")
        x[:, pc] = rref[row_idx, n:]
    return x


class LinearSolver:
    """Factored form of m for solving x @ m = b repeatedly.

    Row-reducing [m.T | I] once gives the elimination matrix E; each later
    solve is a single matrix product.  Results match solve_linear exactly
    (free variables 0, InconsistentSystem on failure).
    """

    def __init__(self, m: np.ndarray, p: int):
        self.p = p
        n, c = m.shape
        self.n = n
        aug = np.hstack([m.T % p, identity(c)])
        rref, _, pivots = row_reduce(aug, p)
        main = [pc for pc in pivots if pc < n]
        self.rank = len(main)
        self.pivots = main
        self.elim = rref[: self.rank, n:]  # (rank, c)
        self.elim_rest = rref[self.rank:, n:]  # detects inconsistency

    def solve(self, b: np.ndarray) -> np.ndarray:
        p = self.p
        b = np.atleast_2d(np.asarray(b, dtype=np.int64)) % p
        if self.elim_rest.shape[0] and np.any((self.elim_rest @ b.T) % p):
            raise InconsistentSystem("x @ m = b has no solution")
        x = zeros((b.shape[0], self.n))
        if self.rank:
            x[:, self.pivots] = ((self.elim @ b.T) % p).T
        return x


def reduce_rows(rows: np.ndarray, rref: np.ndarray, pivots, p: int) -> np.ndarray:
    """Reduce each row modulo the row space given by its RREF."""
    out = np.atleast_2d(np.asarray(rows, dtype=np.int64)) % p
    out = out.copy()
    for row_idx, pc in enumerate(pivots):
        coef = out[:, pc].copy()
        out = (out - np.outer(coef, rref[row_idx])) % p
    return out


def rowspace_contains(rref: np.ndarray, pivots, rows: np.ndarray, p: int) -> bool:
    if np.asarray(rows).size == 0:
        return True
    return not np.any(reduce_rows(rows, rref, pivots, p))


def nonzero_rows(m: np.ndarray) -> np.ndarray:
    if m.size == 0:
        return m.reshape(0, m.shape[1] if m.ndim == 2 else 0)
    keep = np.any(m != 0, axis=1)
    return m[keep]


def row_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Deterministic (RREF) basis of the row space."""
    rref, r, _ = row_reduce(m, p)
    return rref[:r]


def invert(m: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix; raises InconsistentSystem if singular."""
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("invert expects a square matrix")
    return solve_linear(m, identity(n), p)


def minimal_polynomial(m: np.ndarray, p: int) -> list[int]:
    """Monic least-degree polynomial annihilating the square matrix m.

    Coefficients are returned lowest degree first.
    """
    d = m.shape[0]
    if m.shape != (d, d):
        raise ValueError("minimal_polynomial expects a square matrix")
    if d == 0:
        return [1]
    m = m % p
    power = identity(d)
    stacked = power.reshape(1, d * d)
    for k in range(1, d + 1):
        power = (power @ m) % p
        flat = power.reshape(1, d * d)
        try:
            coeffs = solve_linear(stacked, flat, p)[0]
        except InconsistentSystem:
            stacked = np.vstack([stacked, flat])
            continue
        poly = [(-int(c)) % p for c in coeffs[:k]] + [1]
        return poly
    raise AssertionError("no annihilating polynomial of degree <= dim")
