"""Small exact linear algebra over prime fields F_p.

Vectors are int tuples with entries in [0, p); matrices are tuples of row
tuples, acting on column vectors: (A v)_i = sum_j A[i][j] v_j mod p.
Subspaces are canonically represented by their reduced row echelon basis
(a tuple of row vectors), so each subspace has exactly one representation
and can be used as a dict key.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product


def identity(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_matrix(rows: int, cols: int) -> tuple:
    return tuple((0,) * cols for _ in range(rows))


def mat_vec(A, v, p: int) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) % p for row in A)


def matmul(A, B, p: int) -> tuple:
    if not A:
        return ()
    cols = list(zip(*B)) if B else []
    return tuple(
        tuple(sum(a * b for a, b in zip(row, col)) % p for col in cols) for row in A
    )


def rref(rows, p: int) -> tuple:
    """Reduced row echelon form: returns (rows, pivot_columns), zero rows dropped."""
    mat = [list(r) for r in rows]
    if not mat:
        return (), ()
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] % p), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], p - 2, p) if p > 2 else 1
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] % p:
                f = mat[i][c] % p
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return tuple(tuple(row) for row in mat[:r]), tuple(pivots)


def rank(rows, p: int) -> int:
    return len(rref(rows, p)[0])


def nullspace(A, p: int) -> tuple:
    """Basis of {v : A v = 0}, as rows in reduced echelon form."""
    if not A:
        return ()
    ncols = len(A[0])
    red, pivots = rref(A, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-red[r][f]) % p
        basis.append(tuple(v))
    return rref(basis, p)[0]


def reduce_vector(U_rows, U_pivots, v, p: int) -> tuple:
    """v minus its projection onto span(U); zero iff v is in the span."""
    out = list(v)
    for row, c in zip(U_rows, U_pivots):
        f = out[c] % p
        if f:
            out = [(a - f * b) % p for a, b in zip(out, row)]
    return tuple(out)


def contains_vector(U_rows, U_pivots, v, p: int) -> bool:
    return not any(reduce_vector(U_rows, U_pivots, v, p))


def contains_subspace(U_rows, U_pivots, W_rows, p: int) -> bool:
    """Whether span(W) is contained in span(U)."""
    return all(contains_vector(U_rows, U_pivots, w, p) for w in W_rows)


def coords_in_basis(U_rows, U_pivots, v, p: int) -> tuple:
    """Coefficients of v over the echelon basis U; raises if v is outside."""
    if not contains_vector(U_rows, U_pivots, v, p):
        raise ValueError("vector not in subspace")
    return tuple(v[c] % p for c in U_pivots)


def quotient_projection(U_rows, U_pivots, dim: int, p: int):
    """Projection matrix onto the non-pivot coordinates modulo span(U).

    The quotient space gets the non-pivot coordinates of the reduction as its
    canonical coordinates.
    """
    free = [c for c in range(dim) if c not in U_pivots]
    rows = []
    for f_pos in free:
        row = [0] * dim
        row[f_pos] = 1
        for r, c in enumerate(U_pivots):
            row[c] = (-U_rows[r][f_pos]) % p
        rows.append(tuple(row))
    # row k of the projection reads off free coordinate k of the reduced vector
    return tuple(rows), tuple(free)


def preimage_basis(A, U_rows, U_pivots, p: int, source_dim: int):
    """Echelon basis of {x in F^source_dim : A x in span(U)}."""
    if not A:
        # zero-dimensional target: every vector maps into U
        return rref(identity(source_dim), p)[0]
    proj, _ = quotient_projection(U_rows, U_pivots, len(A), p)
    if not proj:
        # U is the whole target space
        return rref(identity(source_dim), p)[0]
    return nullspace(matmul(proj, A, p), p)


@lru_cache(maxsize=None)
def subspaces(n: int, p: int, dim: int) -> tuple:
    """All dim-dimensional subspaces of F_p^n as canonical echelon bases."""
    if dim < 0 or dim > n:
        return ()
    if dim == 0:
        return ((),)
    out = []
    for pivots in combinations(range(n), dim):
        free_positions = [
            (r, c)
            for r in range(dim)
            for c in range(pivots[r] + 1, n)
            if c not in pivots
        ]
        for values in product(range(p), repeat=len(free_positions)):
            rows = [[0] * n for _ in range(dim)]
            for r in range(dim):
                rows[r][pivots[r]] = 1
            for (r, c), v in zip(free_positions, values):
                rows[r][c] = v
            out.append(tuple(tuple(row) for row in rows))
    return tuple(out)


def all_subspaces(n: int, p: int) -> tuple:
    return tuple(s for d in range(n + 1) for s in subspaces(n, p, d))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den
