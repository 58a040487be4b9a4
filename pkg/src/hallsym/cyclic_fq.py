"""Brute-force counting oracle over F_q for nilpotent cyclic-quiver representations.

The quiver has vertices Z/m with one arrow from each vertex h to h-1.  A
nilpotent representation splits into string summands: the string with top
vertex i and length l has basis e_{i+1-l}, ..., e_i (vertex of e_j is j mod m)
with the arrow sending e_j to e_{j-1} and killing e_{i+1-l}.  An iso class is
a multiset of such (i, l) pairs; for m = 1 this is a partition.

Everything here is counted explicitly over F_q (q a small prime): submodules
by enumerating arrow-invariant tuples of subspaces, automorphisms by
enumerating the endomorphism space (with an exact kernel-sieve fallback once
that space is too big to list), and products either from submodule tables or
by enumerating extensions when the result would outgrow the counting cap.
Iso classes are recognized through the ranks of iterated arrow compositions,
a complete invariant for string modules (validated by the realize/decompose
round trip in the tests).

Scalars are exact rationals; Euler-form twists contribute powers of v with
v^2 = q, tracked exactly as a shared parity with even powers folded into the
coefficients.  A context that needs a rational but meets a leftover odd
power raises instead of approximating.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exactalg import ConsistencyError
from . import fqlinalg as fl

SUPPORTED_PRIMES = (2, 3, 5)

DIM_CAP_COUNT = 6       # submodule enumeration
DIM_CAP_REALIZE = 8     # explicit matrix realization
AUT_ENUM_CAP = 10**6    # largest |End| listed element by element
FILLING_CAP = 250_000   # largest extension-space listed by the product route


class CapExceededError(ValueError):
    """A computation beyond the configured desk-scale caps."""


def _check_prime(q: int):
    if q not in SUPPORTED_PRIMES:
        raise ValueError(f"q must be one of {SUPPORTED_PRIMES}, got {q}")


# ---------------------------------------------------------------------------
# iso classes
# ---------------------------------------------------------------------------


def string_dim_vector(m: int, i: int, l: int) -> tuple:
    d = [0] * m
    for j in range(i + 1 - l, i + 1):
        d[j % m] += 1
    return tuple(d)


class CyclicIsoClass:
    """Multiset of string summands (top_vertex, length) over a fixed vertex count."""

    __slots__ = ("m", "summands")

    def __init__(self, m: int, summands=()):
        if m < 1:
            raise ValueError("need at least one vertex")
        canon = []
        for i, l in summands:
            if l < 1:
                raise ValueError("string length must be >= 1")
            canon.append((i % m, l))
        canon.sort(key=lambda s: (-s[1], s[0]))
        self.m = m
        self.summands = tuple(canon)

    @staticmethod
    def from_partition(lam) -> "CyclicIsoClass":
        """Single-vertex classes are partitions of the total dimension."""
        return CyclicIsoClass(1, tuple((0, l) for l in lam))

    def to_partition(self) -> tuple:
        if self.m != 1:
            raise ValueError("only single-vertex classes are partitions")
        return tuple(l for _, l in self.summands)

    def dim_vector(self) -> tuple:
        d = [0] * self.m
        for i, l in self.summands:
            for j in range(i + 1 - l, i + 1):
                d[j % self.m] += 1
        return tuple(d)

    def total_dim(self) -> int:
        return sum(l for _, l in self.summands)

    def socle_vertices(self) -> tuple:
        return tuple(sorted((i + 1 - l) % self.m for i, l in self.summands))

    def is_zero(self) -> bool:
        return not self.summands

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CyclicIsoClass)
            and self.m == other.m
            and self.summands == other.summands
        )

    def __hash__(self):
        return hash((self.m, self.summands))

    def sort_key(self):
        return (self.total_dim(), self.summands)

    def render(self, with_m: bool = False) -> str:
        body = "+".join(f"[{i};{l}]" for i, l in self.summands) or "0"
        return f"m={self.m}: {body}" if with_m else body

    @staticmethod
    def parse(s: str, m: int | None = None) -> "CyclicIsoClass":
        s = s.strip()
        if s.startswith("m="):
            head, _, body = s.partition(":")
            m = int(head[2:])
            s = body.strip()
        if m is None:
            raise ValueError("vertex count m is required to parse an iso class")
        if s == "0" or not s:
            return CyclicIsoClass(m, ())
        summands = []
        for chunk in s.split("+"):
            chunk = chunk.strip()
            if not (chunk.startswith("[") and chunk.endswith("]")):
                raise ValueError(f"bad summand {chunk!r}; expected [i;l]")
            i_s, _, l_s = chunk[1:-1].partition(";")
            summands.append((int(i_s), int(l_s)))
        return CyclicIsoClass(m, summands)

    def __repr__(self):
        return f"CyclicIsoClass({self.render(with_m=True)!r})"


def delta_dim(m: int, r: int) -> tuple:
    """The dimension vector r * (1, ..., 1)."""
    return (r,) * m


@lru_cache(maxsize=None)
def enumerate_iso(m: int, d: tuple) -> tuple:
    """All iso classes with dimension vector d, each exactly once."""
    d = tuple(d)
    total = sum(d)
    if total > DIM_CAP_REALIZE:
        raise CapExceededError(f"total dimension {total} exceeds cap {DIM_CAP_REALIZE}")
    strings = [
        (i, l)
        for l in range(total, 0, -1)
        for i in range(m)
        if all(a <= b for a, b in zip(string_dim_vector(m, i, l), d))
    ]

    out = []

    def rec(idx, remaining, chosen):
        if not any(remaining):
            out.append(CyclicIsoClass(m, chosen))
            return
        for k in range(idx, len(strings)):
            i, l = strings[k]
            sd = string_dim_vector(m, i, l)
            if all(a <= b for a, b in zip(sd, remaining)):
                rec(k, tuple(b - a for a, b in zip(sd, remaining)), chosen + [(i, l)])

    rec(0, d, [])
    return tuple(sorted(out, key=lambda c: c.summands))


def classes_up_to_dim(m: int, max_total: int, include_zero: bool = False) -> list:
    """Every iso class with total dimension <= max_total."""
    out = [CyclicIsoClass(m, ())] if include_zero else []

    def dim_vectors(total):
        def rec(rem, slots):
            if slots == 1:
                yield (rem,)
                return
            for first in range(rem + 1):
                for rest in rec(rem - first, slots - 1):
                    yield (first,) + rest

        return rec(total, m)

    for total in range(1, max_total + 1):
        for d in dim_vectors(total):
            out.extend(enumerate_iso(m, d))
    return out


def socle_squarefree(cls: CyclicIsoClass) -> bool:
    """Whether each vertex supports at most one string socle."""
    soc = cls.socle_vertices()
    return len(set(soc)) == len(soc)


# ---------------------------------------------------------------------------
# explicit modules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FqModule:
    """Explicit nilpotent representation: arrows[h] maps V_h into V_{h-1}."""

    q: int
    m: int
    dims: tuple
    arrows: tuple  # arrows[h]: matrix of shape (dims[h-1], dims[h])

    def total_dim(self) -> int:
        return sum(self.dims)


def realize(cls: CyclicIsoClass, q: int) -> FqModule:
    """Block direct sum of string modules, one block per summand."""
    _check_prime(q)
    if cls.total_dim() > DIM_CAP_REALIZE:
        raise CapExceededError(
            f"total dimension {cls.total_dim()} exceeds cap {DIM_CAP_REALIZE}"
        )
    m = cls.m
    dims = list(cls.dim_vector())
    pos: dict = {}
    counters = [0] * m
    for s_idx, (i, l) in enumerate(cls.summands):
        for j in range(i + 1 - l, i + 1):
            v = j % m
            pos[(s_idx, j)] = counters[v]
            counters[v] += 1
    arrows = [
        [[0] * dims[h] for _ in range(dims[(h - 1) % m])] for h in range(m)
    ]
    for s_idx, (i, l) in enumerate(cls.summands):
        for j in range(i + 2 - l, i + 1):
            h = j % m
            arrows[h][pos[(s_idx, j - 1)]][pos[(s_idx, j)]] = 1
    return FqModule(
        q=q,
        m=m,
        dims=tuple(dims),
        arrows=tuple(tuple(tuple(r) for r in a) for a in arrows),
    )


def path_ranks(mod: FqModule) -> dict:
    """rank of the length-s arrow composite starting at vertex u, all s, u."""
    m, p = mod.m, mod.q
    D = mod.total_dim()
    ranks = {(0, u): mod.dims[u] for u in range(m)}
    current = {u: fl.identity(mod.dims[u]) for u in range(m)}
    for s in range(1, D + 1):
        nxt = {}
        for u in range(m):
            mat = fl.matmul(current[(u - 1) % m], mod.arrows[u], p)
            nxt[u] = mat
            ranks[(s, u)] = fl.rank(mat, p)
        current = nxt
    return ranks


def _class_from_ranks(m: int, dims: tuple, ranks: dict, D: int) -> CyclicIsoClass:
    def r(s, u):
        if s == 0:
            return dims[u % m]
        if s >= D:
            return 0
        return ranks.get((s, u % m), 0)

    def c(s, u):
        return r(s, u) - r(s + 1, u)

    summands = []
    for l in range(1, D + 1):
        for i in range(m):
            mult = c(l - 1, i) - c(l, i + 1)
            if mult < 0:
                raise ConsistencyError("negative string multiplicity from rank data")
            summands.extend([(i, l)] * mult)
    cls = CyclicIsoClass(m, summands)
    if cls.dim_vector() != tuple(dims):
        raise ConsistencyError("rank data inconsistent with dimension vector")
    return cls


def decompose(mod: FqModule) -> CyclicIsoClass:
    """Recover the multiset of string summands from path-rank invariants."""
    D = mod.total_dim()
    if D == 0:
        return CyclicIsoClass(mod.m, ())
    return _class_from_ranks(mod.m, mod.dims, path_ranks(mod), D)


# ---------------------------------------------------------------------------
# submodule enumeration
# ---------------------------------------------------------------------------


def _subspaces_of_span(basis_rows, ambient_dim: int, dim: int, p: int):
    """dim-dimensional subspaces of span(basis_rows), canonically reduced."""
    w = len(basis_rows)
    if dim > w:
        return
    if dim == 0:
        yield ()
        return
    for small in fl.subspaces(w, p, dim):
        rows = fl.matmul(small, basis_rows, p)
        yield fl.rref(rows, p)[0]


def _invariant_tuples(mod: FqModule, sub_dims=None):
    """All tuples (U_0, ..., U_{m-1}) of subspaces closed under every arrow."""
    m, p = mod.m, mod.q
    full = [fl.rref(fl.identity(mod.dims[h]), p)[0] for h in range(m)]

    if m == 1:
        dims_iter = range(mod.dims[0] + 1) if sub_dims is None else [sub_dims[0]]
        for d in dims_iter:
            if d > mod.dims[0]:
                continue
            for U in fl.subspaces(mod.dims[0], p, d):
                piv = fl.rref(U, p)[1]
                if all(
                    fl.contains_vector(U, piv, fl.mat_vec(mod.arrows[0], row, p), p)
                    for row in U
                ):
                    yield (U,)
        return

    def rec(h, chosen):
        if h == m:
            # close the cycle: arrow at vertex 0 must land in U_{m-1}
            U_last = chosen[-1]
            piv = fl.rref(U_last, p)[1]
            for row in chosen[0]:
                if not fl.contains_vector(
                    U_last, piv, fl.mat_vec(mod.arrows[0], row, p), p
                ):
                    return
            yield tuple(chosen)
            return
        prev = chosen[-1]
        piv_prev = fl.rref(prev, p)[1]
        W = fl.preimage_basis(mod.arrows[h], prev, piv_prev, p, mod.dims[h])
        dims_iter = (
            range(len(W) + 1) if sub_dims is None else [sub_dims[h]]
        )
        for d in dims_iter:
            if d > len(W):
                continue
            for U in _subspaces_of_span(W, mod.dims[h], d, p):
                yield from rec(h + 1, chosen + [U])

    dims0_iter = range(mod.dims[0] + 1) if sub_dims is None else [sub_dims[0]]
    for d0 in dims0_iter:
        if d0 > mod.dims[0]:
            continue
        for U0 in fl.subspaces(mod.dims[0], p, d0):
            yield from rec(1, [U0])


def _restrict(mod: FqModule, Us) -> FqModule:
    m, p = mod.m, mod.q
    pivots = [fl.rref(U, p)[1] for U in Us]
    dims = tuple(len(U) for U in Us)
    arrows = []
    for h in range(m):
        tgt = (h - 1) % m
        cols = [
            fl.coords_in_basis(Us[tgt], pivots[tgt], fl.mat_vec(mod.arrows[h], row, p), p)
            for row in Us[h]
        ]
        arrows.append(
            tuple(
                tuple(cols[j][i] for j in range(dims[h])) for i in range(dims[tgt])
            )
        )
    return FqModule(q=p, m=m, dims=dims, arrows=tuple(arrows))


def _quotient(mod: FqModule, Us) -> FqModule:
    m, p = mod.m, mod.q
    projs, frees = [], []
    for h, U in enumerate(Us):
        piv = fl.rref(U, p)[1]
        proj, free = fl.quotient_projection(U, piv, mod.dims[h], p)
        projs.append(proj)
        frees.append(free)
    dims = tuple(len(f) for f in frees)
    arrows = []
    for h in range(m):
        tgt = (h - 1) % m
        cols = []
        for c in frees[h]:
            lift = tuple(1 if j == c else 0 for j in range(mod.dims[h]))
            img = fl.mat_vec(mod.arrows[h], lift, p)
            cols.append(fl.mat_vec(projs[tgt], img, p) if projs[tgt] else ())
        arrows.append(
            tuple(
                tuple(cols[j][i] for j in range(dims[h])) for i in range(dims[tgt])
            )
        )
    return FqModule(q=p, m=m, dims=dims, arrows=tuple(arrows))


@lru_cache(maxsize=None)
def submodule_table(cls: CyclicIsoClass, q: int, sub_dims=None) -> dict:
    """Counts of submodules by (sub iso class, quotient iso class).

    Enumerates every arrow-invariant tuple of subspaces (optionally with a
    fixed per-vertex dimension vector) and classifies both the submodule and
    the quotient.
    """
    _check_prime(q)
    if cls.total_dim() > DIM_CAP_COUNT:
        raise CapExceededError(
            f"total dimension {cls.total_dim()} exceeds counting cap {DIM_CAP_COUNT}"
        )
    mod = realize(cls, q)
    table: dict = {}
    for Us in _invariant_tuples(mod, sub_dims):
        key = (decompose(_restrict(mod, Us)), decompose(_quotient(mod, Us)))
        table[key] = table.get(key, 0) + 1
    return table


def submodule_count(
    cls: CyclicIsoClass, sub: CyclicIsoClass, quot: CyclicIsoClass, q: int
) -> int:
    """Number of submodules of cls isomorphic to sub with quotient quot."""
    if tuple(a + b for a, b in zip(sub.dim_vector(), quot.dim_vector())) != cls.dim_vector():
        return 0
    return submodule_table(cls, q, sub.dim_vector()).get((sub, quot), 0)


def invariant_subspace_count(cls: CyclicIsoClass, q: int) -> int:
    """Raw count of arrow-invariant subspace tuples, with no classification."""
    _check_prime(q)
    mod = realize(cls, q)
    return sum(1 for _ in _invariant_tuples(mod))


# ---------------------------------------------------------------------------
# hom spaces, endomorphisms, automorphisms
# ---------------------------------------------------------------------------


def hom_dim(src: FqModule, dst: FqModule) -> int:
    """dim Hom(src, dst): nullity of the intertwiner equations."""
    p = src.q
    m = src.m
    offs = []
    total = 0
    for h in range(m):
        offs.append(total)
        total += dst.dims[h] * src.dims[h]
    if total == 0:
        return 0
    rows = []
    for h in range(m):
        tgt = (h - 1) % m
        # f_tgt @ A_src[h] - A_dst[h] @ f_h = 0
        for r in range(dst.dims[tgt]):
            for c in range(src.dims[h]):
                row = [0] * total
                for k in range(src.dims[tgt]):
                    row[offs[tgt] + r * src.dims[tgt] + k] = src.arrows[h][k][c] % p
                for k in range(dst.dims[h]):
                    row[offs[h] + k * src.dims[h] + c] = (
                        row[offs[h] + k * src.dims[h] + c] - dst.arrows[h][r][k]
                    ) % p
                rows.append(tuple(row))
    return total - fl.rank(rows, p)


def end_dim(cls: CyclicIsoClass, q: int) -> int:
    """Dimension of the endomorphism algebra over F_q."""
    _check_prime(q)
    mod = realize(cls, q)
    return hom_dim(mod, mod)


def _end_basis(mod: FqModule):
    """Basis of End as per-vertex matrix tuples."""
    p, m = mod.q, mod.m
    offs = []
    total = 0
    for h in range(m):
        offs.append(total)
        total += mod.dims[h] * mod.dims[h]
    rows = []
    for h in range(m):
        tgt = (h - 1) % m
        for r in range(mod.dims[tgt]):
            for c in range(mod.dims[h]):
                row = [0] * total
                for k in range(mod.dims[tgt]):
                    row[offs[tgt] + r * mod.dims[tgt] + k] = mod.arrows[h][k][c] % p
                for k in range(mod.dims[h]):
                    row[offs[h] + k * mod.dims[h] + c] = (
                        row[offs[h] + k * mod.dims[h] + c] - mod.arrows[h][r][k]
                    ) % p
                rows.append(tuple(row))
    basis = fl.nullspace(rows, p) if rows else fl.rref(fl.identity(total), p)[0]
    return basis, offs, total


def _aut_count_enumerate(mod: FqModule) -> int:
    """List the endomorphism space and count the invertible elements."""
    p, m = mod.q, mod.m
    basis, offs, total = _end_basis(mod)
    e = len(basis)
    if p**e > AUT_ENUM_CAP:
        raise CapExceededError(f"|End| = {p}^{e} exceeds enumeration cap {AUT_ENUM_CAP}")
    if e == 0:
        return 1
    basis_np = np.array(basis, dtype=np.int64)
    count = 0
    chunk = 1 << 15
    n_total = p**e
    powers = p ** np.arange(e, dtype=np.int64)
    start = 0
    while start < n_total:
        stop = min(start + chunk, n_total)
        idx = np.arange(start, stop, dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % p
        flat = (digits @ basis_np) % p
        ok = np.ones(stop - start, dtype=bool)
        for h in range(m):
            d = mod.dims[h]
            if d == 0:
                continue
            block = flat[:, offs[h] : offs[h] + d * d].reshape(-1, d, d)
            ok &= batched_rank(block, p) == d
        count += int(ok.sum())
        start = stop
    return count


def _submodule_list(mod: FqModule) -> list:
    return list(_invariant_tuples(mod))


def _aut_count_kernel_sieve(mod: FqModule) -> int:
    """Count injective endomorphisms by inclusion-exclusion over kernels.

    Every kernel is a submodule U, and the endomorphisms killing at least U
    form Hom(M/U, M) with q^{dim} elements; Moebius inversion over the
    submodule lattice isolates the kernel-zero (injective = invertible) ones.
    """
    p = mod.q
    subs = _submodule_list(mod)
    subs.sort(key=lambda Us: sum(len(U) for U in Us))
    # span membership cache: set of all vectors per subspace, per vertex
    spans = {}
    for Us in subs:
        per_vertex = []
        for h, U in enumerate(Us):
            width = mod.dims[h]
            acc = [tuple([0] * width)]
            for row in U:
                acc = [
                    tuple((a + c * b) % p for a, b in zip(v, row))
                    for v in acc
                    for c in range(p)
                ]
            per_vertex.append(frozenset(acc))
        spans[Us] = per_vertex

    def contained(A, B):  # span(A) <= span(B), per vertex
        sb = spans[B]
        return all(
            all(row in sb[h] for row in A[h]) for h in range(mod.m)
        )

    mu: dict = {}
    total = 0
    for i, U in enumerate(subs):
        acc = 0
        for W in subs[:i]:
            if sum(len(x) for x in W) <= sum(len(x) for x in U) and contained(W, U):
                acc += mu[W]
        mu[U] = 1 if i == 0 else -acc
        h = hom_dim(_quotient(mod, U), mod)
        total += mu[U] * p**h
    return total


def aut_count(cls: CyclicIsoClass, q: int) -> int:
    """|Aut| by direct enumeration, falling back to the exact kernel sieve.

    Both routes only count; neither uses the closed-form expression that the
    symbolic side carries, so this stays an independent oracle.
    """
    _check_prime(q)
    if cls.total_dim() == 0:
        return 1
    mod = realize(cls, q)
    e = end_dim(cls, q)
    if q**e <= AUT_ENUM_CAP:
        return _aut_count_enumerate(mod)
    return _aut_count_kernel_sieve(mod)


@lru_cache(maxsize=None)
def string_hom_dim(m: int, a: tuple, b: tuple) -> int:
    """dim Hom of string modules: count overlaps of quotients of a with submodules of b."""
    (i, l), (j, k) = a, b
    return sum(1 for s in range(1, min(l, k) + 1) if (s - (i - j + k)) % m == 0)


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


@lru_cache(maxsize=None)
def aut_order_value(cls: CyclicIsoClass, q: int) -> int:
    """Closed-form |Aut| from string hom dimensions and GL block counts.

    Cross-checked against aut_count in the tests; used where products push
    intermediate classes past the enumeration caps.
    """
    if cls.total_dim() == 0:
        return 1
    mults: dict = {}
    for s in cls.summands:
        mults[s] = mults.get(s, 0) + 1
    kinds = sorted(mults)
    e = 0
    for x in kinds:
        for y in kinds:
            e += mults[x] * mults[y] * string_hom_dim(cls.m, x, y)
    sq = sum(n * n for n in mults.values())
    out = q ** (e - sq)
    for n in mults.values():
        out *= gl_order(n, q)
    return out


# ---------------------------------------------------------------------------
# batched rank over F_p (numpy)
# ---------------------------------------------------------------------------

_INV_TABLES = {
    p: np.array([0] + [pow(i, p - 2, p) for i in range(1, p)], dtype=np.int64)
    for p in SUPPORTED_PRIMES
}


def batched_rank(Z: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a batch of small matrices over F_p, shape (B, rows, cols)."""
    Z = np.ascontiguousarray(Z % p)
    Bn, a, b = Z.shape
    lead = np.zeros(Bn, dtype=np.int64)
    if a == 0 or b == 0:
        return lead
    inv = _INV_TABLES[p]
    row_ids = np.arange(a)
    for col in range(b):
        colv = Z[:, :, col]
        eligible = (colv != 0) & (row_ids[None, :] >= lead[:, None])
        has = eligible.any(axis=1)
        idx = np.nonzero(has)[0]
        if idx.size == 0:
            continue
        piv = eligible[idx].argmax(axis=1)
        l = lead[idx]
        tmp = Z[idx, l, :].copy()
        Z[idx, l, :] = Z[idx, piv, :]
        Z[idx, piv, :] = tmp
        pivvals = Z[idx, l, col]
        Z[idx, l, :] = (Z[idx, l, :] * inv[pivvals][:, None]) % p
        factors = Z[idx, :, col].copy()
        factors[np.arange(idx.size), l] = 0
        pivot_rows = Z[idx, l, :][:, None, :]
        Z[idx, :, :] = (Z[idx, :, :] - factors[:, :, None] * pivot_rows) % p
        lead[idx] += 1
    return lead


# ---------------------------------------------------------------------------
# elements and products
# ---------------------------------------------------------------------------


class NumHallElem:
    """Exact linear combination of iso classes at a concrete q.

    A shared factor v^k (v^2 = q) is carried as a parity in ``v_exp`` with
    even powers already folded into the coefficients.
    """

    __slots__ = ("m", "q", "v_exp", "terms")

    def __init__(self, m: int, q: int, terms=None, v_exp: int = 0):
        _check_prime(q)
        folded = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for cls, coeff in items:
                coeff = Fraction(coeff)
                if coeff == 0:
                    continue
                if cls.m != m:
                    raise ValueError("mixed vertex counts in one element")
                folded[cls] = folded.get(cls, Fraction(0)) + coeff
        folded = {c: v for c, v in folded.items() if v != 0}
        parity = v_exp % 2
        shift = (v_exp - parity) // 2
        if shift and folded:
            scale = Fraction(q) ** shift
            folded = {c: v * scale for c, v in folded.items()}
        self.m = m
        self.q = q
        self.v_exp = parity if folded else 0
        self.terms = folded

    @staticmethod
    def unit(m: int, q: int) -> "NumHallElem":
        return NumHallElem(m, q, {CyclicIsoClass(m, ()): Fraction(1)})

    @staticmethod
    def iso(cls: CyclicIsoClass, q: int) -> "NumHallElem":
        return NumHallElem(cls.m, q, {cls: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def _compat(self, other: "NumHallElem"):
        if self.m != other.m or self.q != other.q:
            raise ValueError("elements live over different quivers or fields")

    def __add__(self, other: "NumHallElem") -> "NumHallElem":
        self._compat(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.v_exp != other.v_exp:
            raise ConsistencyError("cannot add elements of different v-parity")
        out = dict(self.terms)
        for c, v in other.terms.items():
            out[c] = out.get(c, Fraction(0)) + v
        return NumHallElem(self.m, self.q, out, self.v_exp)

    def __sub__(self, other: "NumHallElem") -> "NumHallElem":
        return self + other.scale(-1)

    def scale(self, f) -> "NumHallElem":
        return NumHallElem(
            self.m, self.q, {c: v * Fraction(f) for c, v in self.terms.items()}, self.v_exp
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NumHallElem)
            and self.m == other.m
            and self.q == other.q
            and self.v_exp == other.v_exp
            and self.terms == other.terms
        )

    def as_rational_terms(self) -> dict:
        """Coefficients as plain rationals; rejects a surviving odd v-power."""
        if self.v_exp:
            raise ConsistencyError("odd power of v cannot be read as rationals")
        return dict(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __repr__(self):
        body = " + ".join(f"({v})[{c.render()}]" for c, v in self.sorted_terms())
        head = f"v^{self.v_exp} * " if self.v_exp else ""
        return f"NumHallElem(m={self.m}, q={self.q}: {head}{body or '0'})"


def euler_form(m: int, d: tuple, e: tuple) -> int:
    """Additive Euler form: sum d_h e_h - sum d_h e_{h-1}."""
    return sum(d[h] * e[h] for h in range(m)) - sum(
        d[h] * e[(h - 1) % m] for h in range(m)
    )


def _paths_np(mod: FqModule, max_len: int):
    p, m = mod.q, mod.m
    arrows = [np.array(a, dtype=np.int64).reshape(mod.dims[(h - 1) % m], mod.dims[h])
              for h, a in enumerate(mod.arrows)]
    P = [[np.eye(mod.dims[u], dtype=np.int64) for u in range(m)]]
    for s in range(1, max_len + 1):
        row = []
        for u in range(m):
            row.append(P[s - 1][(u - 1) % m] @ arrows[u] % p)
        P.append(row)
    return P


@lru_cache(maxsize=None)
def _mul_classes_fillings(quot: CyclicIsoClass, sub: CyclicIsoClass, q: int) -> tuple:
    """[quot][sub] coefficients by enumerating extensions of quot by sub.

    Every extension arises from filling the off-diagonal arrow blocks; each
    middle-term class R occurs for a number of fillings proportional to the
    submodule count, with the proportionality fixed by automorphism orders:
    g = fillings * |Aut R| / (|Aut quot| |Aut sub| q^{sum_v dim_quot_v dim_sub_v}).
    """
    m, p = quot.m, q
    A = realize(quot, q)  # quotient on top
    B = realize(sub, q)  # submodule at the bottom
    nA, nB = A.dims, B.dims
    D = quot.total_dim() + sub.total_dim()
    k = sum(nA[h] * nB[(h - 1) % m] for h in range(m))
    n_fill = p**k
    if n_fill > FILLING_CAP:
        raise CapExceededError(f"extension space {p}^{k} exceeds cap {FILLING_CAP}")
    PA = _paths_np(A, D)
    PB = _paths_np(B, D)

    # entry layout: per source vertex h, row-major block (nB[h-1] x nA[h])
    powers = p ** np.arange(k, dtype=np.int64)
    idx = np.arange(n_fill, dtype=np.int64)
    digits = (idx[:, None] // powers[None, :]) % p
    C_blocks = []
    off = 0
    for h in range(m):
        size = nB[(h - 1) % m] * nA[h]
        C_blocks.append(
            digits[:, off : off + size].reshape(n_fill, nB[(h - 1) % m], nA[h])
        )
        off += size

    fingerprints = np.empty((n_fill, (D - 1) * m if D > 1 else 0), dtype=np.int64)
    colpos = 0
    for s in range(1, D):
        for u in range(m):
            rA = int(fl.rank(tuple(map(tuple, PA[s][u].tolist())), p)) if nA[u] else 0
            tgtB = (u - s) % m
            PBmat = PB[s][u]
            rB = int(fl.rank(tuple(map(tuple, PBmat.tolist())), p)) if nB[u] else 0
            # kernel of the quotient path (columns K) and cokernel of the
            # submodule path (rows Q) compress the mixed block
            if nA[u] == 0:
                kerA = ()
            elif PA[s][u].shape[0] == 0:
                kerA = fl.rref(fl.identity(nA[u]), p)[0]
            else:
                kerA = fl.nullspace(tuple(map(tuple, PA[s][u].tolist())), p)
            colsB = fl.rref(tuple(zip(*PBmat.tolist())) if PBmat.size else (), p)
            Qrows, _ = fl.quotient_projection(colsB[0], colsB[1], nB[tgtB], p)
            a_dim, b_dim = len(Qrows), len(kerA)
            if a_dim == 0 or b_dim == 0 or k == 0:
                fingerprints[:, colpos] = rA + rB
                colpos += 1
                continue
            K = np.array(kerA, dtype=np.int64).T  # nA[u] x b
            Qm = np.array(Qrows, dtype=np.int64)  # a x nB[tgtB]
            L = np.zeros((n_fill, nB[tgtB], nA[u]), dtype=np.int64)
            for j in range(s):
                hsrc = (u - j) % m
                if nA[hsrc] == 0 or nB[(hsrc - 1) % m] == 0:
                    continue
                mid = C_blocks[hsrc] @ PA[j][u] % p
                L = (L + PB[s - 1 - j][(u - j - 1) % m] @ mid) % p
            Z = Qm @ L @ K % p
            fingerprints[:, colpos] = rA + rB + batched_rank(Z, p)
            colpos += 1

    dims_E = tuple(nA[u] + nB[u] for u in range(m))
    if D <= 1:
        uniq = np.zeros((1, 0), dtype=np.int64)
        counts = np.array([n_fill])
    else:
        uniq, counts = np.unique(fingerprints, axis=0, return_counts=True)
    a_quot = aut_order_value(quot, q)
    a_sub = aut_order_value(sub, q)
    hom_pairs = sum(nA[v] * nB[v] for v in range(m))
    denom = a_quot * a_sub * p**hom_pairs
    out = []
    for row, cnt in zip(uniq, counts):
        ranks = {}
        pos = 0
        for s in range(1, D):
            for u in range(m):
                ranks[(s, u)] = int(row[pos])
                pos += 1
        R = _class_from_ranks(m, dims_E, ranks, D)
        num = int(cnt) * aut_order_value(R, q)
        if num % denom:
            raise ConsistencyError("extension counting produced a non-integer")
        out.append((R, num // denom))
    return tuple(sorted(out, key=lambda rc: rc[0].sort_key()))


@lru_cache(maxsize=None)
def _mul_classes_submodules(quot: CyclicIsoClass, sub: CyclicIsoClass, q: int) -> tuple:
    dsum = tuple(a + b for a, b in zip(quot.dim_vector(), sub.dim_vector()))
    out = []
    for R in enumerate_iso(quot.m, dsum):
        g = submodule_count(R, sub, quot, q)
        if g:
            out.append((R, g))
    return tuple(sorted(out, key=lambda rc: rc[0].sort_key()))


def mul_classes(quot: CyclicIsoClass, sub: CyclicIsoClass, q: int) -> tuple:
    """Structure constants of [quot]*[sub] (untwisted): pairs (R, count)."""
    if quot.is_zero():
        return ((sub, 1),)
    if sub.is_zero():
        return ((quot, 1),)
    total = quot.total_dim() + sub.total_dim()
    if total <= DIM_CAP_COUNT:
        return _mul_classes_submodules(quot, sub, q)
    return _mul_classes_fillings(quot, sub, q)


def mul_numeric(x: NumHallElem, y: NumHallElem) -> NumHallElem:
    """[M][N] = v^{<dim M, dim N>} sum_R g^R_{M,N} [R], extended bilinearly."""
    x._compat(y)
    m, q = x.m, x.q
    out: dict = {}
    parity = None
    for A, ca in x.terms.items():
        for B, cb in y.terms.items():
            e = x.v_exp + y.v_exp + euler_form(m, A.dim_vector(), B.dim_vector())
            r = e % 2
            if parity is None:
                parity = r
            elif parity != r:
                raise ConsistencyError("mixed v-parities in one product")
            scale = ca * cb * Fraction(q) ** ((e - r) // 2)
            for R, g in mul_classes(A, B, q):
                out[R] = out.get(R, Fraction(0)) + scale * g
    return NumHallElem(m, q, out, parity or 0)


# ---------------------------------------------------------------------------
# central elements, coproduct, primitivity
# ---------------------------------------------------------------------------


def z_r_numeric(m: int, r: int, q: int) -> NumHallElem:
    """(-1/q)^{r m} sum over square-free-socle classes of dim r*delta of
    (-1)^{dim End} |Aut| [M]."""
    _check_prime(q)
    if r < 1:
        raise ValueError("r must be positive")
    if r * m > DIM_CAP_REALIZE:
        raise CapExceededError(f"r*m = {r * m} exceeds cap {DIM_CAP_REALIZE}")
    terms = {}
    for cls in enumerate_iso(m, delta_dim(m, r)):
        if not socle_squarefree(cls):
            continue
        sign = (-1) ** (r * m + end_dim(cls, q))
        terms[cls] = Fraction(sign * aut_count(cls, q), q ** (r * m))
    return NumHallElem(m, q, terms)


def primitive_center_numeric(m: int, n: int, q: int) -> NumHallElem:
    """The центр-generator primitive combination at a concrete q.

    n/(1 - q^{-mn}) sum over lam |- n of (-1)^{l+1}/l binom(l; m_1..m_n)
    z_{lam_1} ... z_{lam_l}, products taken in the Hall algebra.
    """
    from .partitions import multinomial, multiplicity_vector, partitions_of

    front = Fraction(n) / (1 - Fraction(q) ** (-m * n))
    acc = NumHallElem(m, q)
    for lam in partitions_of(n):
        l = len(lam)
        coeff = Fraction((-1) ** (l + 1) * multinomial(l, multiplicity_vector(lam, n)), l)
        prod = NumHallElem.unit(m, q)
        for part in lam:
            prod = mul_numeric(prod, z_r_numeric(m, part, q))
        acc = acc + prod.scale(front * coeff)
    return acc


def coproduct_numeric(x: NumHallElem) -> dict:
    """Coefficients of Delta(x) on [M] (x) [N]: (class pair) -> (rational, v-parity).

    Delta([R]) = sum v^{<dim M, dim N>} g^R_{M,N} |Aut M| |Aut N| / |Aut R|
    with g counted by submodule enumeration.
    """
    m, q = x.m, x.q
    out: dict = {}
    for R, cR in x.terms.items():
        aR = aut_count(R, q)
        for (subN, quotM), g in submodule_table(R, q).items():
            e = x.v_exp + euler_form(m, quotM.dim_vector(), subN.dim_vector())
            r = e % 2
            coeff = (
                cR
                * g
                * Fraction(aut_count(quotM, q) * aut_count(subN, q), aR)
                * Fraction(q) ** ((e - r) // 2)
            )
            key = (quotM, subN)
            prev = out.get(key)
            if prev is None:
                out[key] = (coeff, r)
            else:
                if prev[1] != r:
                    raise ConsistencyError("mixed v-parities at one tensor coefficient")
                out[key] = (prev[0] + coeff, r)
    return {k: v for k, v in out.items() if v[0] != 0}


def is_primitive_numeric(x: NumHallElem) -> bool:
    """Whether Delta(x) = x (x) [0] + [0] (x) x exactly."""
    delta = coproduct_numeric(x)
    zero = CyclicIsoClass(x.m, ())
    for cls, c in x.terms.items():
        for key in ((cls, zero), (zero, cls)):
            prev = delta.get(key)
            if prev is None:
                delta[key] = (-c, x.v_exp)
            else:
                delta[key] = (prev[0] - c, prev[1])
    return all(v[0] == 0 for v in delta.values())


def is_central(x: NumHallElem, dim_cap: int) -> bool:
    """Whether x commutes with every iso class of total dimension <= dim_cap."""
    for cls in classes_up_to_dim(x.m, dim_cap):
        t = NumHallElem.iso(cls, x.q)
        if mul_numeric(x, t) != mul_numeric(t, x):
            return False
    return True


def central_failures(x: NumHallElem, dim_cap: int) -> list:
    out = []
    for cls in classes_up_to_dim(x.m, dim_cap):
        t = NumHallElem.iso(cls, x.q)
        if mul_numeric(x, t) != mul_numeric(t, x):
            out.append(cls)
    return out


def c_recursion_holds(m: int, r: int, q: int) -> bool:
    """r z_r = sum_{a=1}^r (1 - q^{-m a}) p_a z_{r-a} with p_a the primitive elements."""
    lhs = z_r_numeric(m, r, q).scale(r)
    rhs = NumHallElem(m, q)
    for a in range(1, r + 1):
        pa = primitive_center_numeric(m, a, q)
        zr = (
            NumHallElem.unit(m, q)
            if r - a == 0
            else z_r_numeric(m, r - a, q)
        )
        rhs = rhs + mul_numeric(pa, zr).scale(1 - Fraction(q) ** (-m * a))
    return lhs == rhs
