"""The ring of symmetric functions with coefficients in Q(t).

Internally every element is stored in the power-sum basis: a ``SymFunc`` maps
a partition lam (indexing the monomial p_lam = p_{lam_1} ... p_{lam_l}) to a
rational function of t.  Products are then free (concatenate and re-sort the
partitions) and the Hopf operations are diagonal.  ``CExpr`` is the same
structure over the c-basis, where c_n is the degree-n coefficient of the
generating series H(T)/H(tT) and c_lam = c_1^{m_1} ... c_n^{m_n}.

The Hall-Littlewood functions P_lam are produced by Gram-Schmidt against the
t-deformed inner product <p_lam, p_mu> = delta * zee(lam) * prod 1/(1-t^{lam_i}),
orthogonalizing the monomial functions along a linear extension of dominance
order.  The construction lives entirely in the abstract ring; no variable
count is ever chosen.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb

from .exactalg import Poly, RatFunc
from .partitions import (
    check_partition,
    compositions_of,
    multinomial,
    multiplicity,
    multiplicity_vector,
    n_stat,
    partitions_of,
    weight,
    zee,
)

DEFAULT_DEGREE_CAP = 10


class DegreeCapError(ValueError):
    """A Hall-Littlewood computation beyond the configured degree cap."""


def t_const(c) -> RatFunc:
    return RatFunc.const(c, "t")


def t_zero() -> RatFunc:
    return RatFunc.zero("t")


def t_one() -> RatFunc:
    return RatFunc.one("t")


def one_minus_t_power(a: int) -> RatFunc:
    """1 - t^a as a rational function of t."""
    return RatFunc.from_poly(Poly((1,) + (0,) * (a - 1) + (-1,)), "t")


def term_sort_key(lam):
    """Ascending weight, then the canonical reverse-lexicographic order."""
    return (sum(lam), tuple(-p for p in lam))


def _merge_parts(a, b):
    return tuple(sorted(a + b, reverse=True))


class _Combo:
    """Shared plumbing for finite linear combinations keyed by partitions."""

    __slots__ = ("terms",)

    coeff_var = "t"

    def __init__(self, terms=None):
        out = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, coeff in items:
                key = tuple(key)
                if isinstance(coeff, (int, Fraction)):
                    coeff = RatFunc.const(coeff, self.coeff_var)
                if coeff.is_zero():
                    continue
                if key in out:
                    s = out[key] + coeff
                    if s.is_zero():
                        del out[key]
                    else:
                        out[key] = s
                else:
                    out[key] = coeff
        self.terms = out

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: term_sort_key(kv[0]))

    def coefficient(self, lam) -> RatFunc:
        return self.terms.get(tuple(lam), RatFunc.zero(self.coeff_var))

    def _binop(self, other, sign):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            c = coeff if sign > 0 else -coeff
            if key in out:
                s = out[key] + c
                if s.is_zero():
                    del out[key]
                else:
                    out[key] = s
            else:
                out[key] = c
        return type(self)(out)

    def __add__(self, other):
        return self._binop(other, +1)

    def __sub__(self, other):
        return self._binop(other, -1)

    def __neg__(self):
        return type(self)({k: -c for k, c in self.terms.items()})

    def scale(self, factor):
        if isinstance(factor, (int, Fraction)):
            factor = RatFunc.const(factor, self.coeff_var)
        if factor.is_zero():
            return type(self)()
        return type(self)({k: c * factor for k, c in self.terms.items()})

    def __mul__(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot multiply {type(self).__name__} by {type(other).__name__}")
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = _merge_parts(k1, k2)
                c = c1 * c2
                if key in out:
                    out[key] = out[key] + c
                else:
                    out[key] = c
        return type(self)(out)

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and self.terms == other.terms

    def __hash__(self):
        return hash((type(self).__name__, tuple(self.sorted_terms())))

    def max_degree(self) -> int:
        return max((weight(k) for k in self.terms), default=0)

    def homogeneous_component(self, d: int):
        return type(self)({k: c for k, c in self.terms.items() if weight(k) == d})

    def __repr__(self):
        body = " + ".join(f"({c.render()})*{k}" for k, c in self.sorted_terms())
        return f"{type(self).__name__}({body or '0'})"


class SymFunc(_Combo):
    """Element of the ring, stored in the power-sum basis."""

    @staticmethod
    def p(*parts) -> "SymFunc":
        return SymFunc({check_partition(parts): t_one()})

    @staticmethod
    def unit() -> "SymFunc":
        return SymFunc({(): t_one()})


class CExpr(_Combo):
    """Element written in c-monomials; keys are the partitions of c-indices."""

    @staticmethod
    def c(*parts) -> "CExpr":
        return CExpr({check_partition(parts): t_one()})

    @staticmethod
    def unit() -> "CExpr":
        return CExpr({(): t_one()})


class SymTensor:
    """Finite sum of pure tensors in the p-basis: (lam, mu) -> coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, coeff in items:
                if isinstance(coeff, (int, Fraction)):
                    coeff = t_const(coeff)
                if not coeff.is_zero():
                    k = (tuple(key[0]), tuple(key[1]))
                    if k in out:
                        s = out[k] + coeff
                        if s.is_zero():
                            del out[k]
                        else:
                            out[k] = s
                    else:
                        out[k] = coeff
        self.terms = out

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SymTensor") -> "SymTensor":
        out = dict(self.terms)
        for k, c in other.terms.items():
            if k in out:
                s = out[k] + c
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = c
        return SymTensor(out)

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        return self + SymTensor({k: -c for k, c in other.terms.items()})

    def __mul__(self, other: "SymTensor") -> "SymTensor":
        """Componentwise product (a x b)(c x d) = ac x bd; no twist on this ring."""
        out = {}
        for (a, b), c1 in self.terms.items():
            for (cc, d), c2 in other.terms.items():
                key = (_merge_parts(a, cc), _merge_parts(b, d))
                c = c1 * c2
                if key in out:
                    out[key] = out[key] + c
                else:
                    out[key] = c
        return SymTensor(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymTensor) and self.terms == other.terms

    def __repr__(self):
        body = " + ".join(
            f"({c.render()})*{a}(x){b}" for (a, b), c in sorted(self.terms.items())
        )
        return f"SymTensor({body or '0'})"


# ---------------------------------------------------------------------------
# basis families
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def c_in_p(n: int) -> SymFunc:
    """c_n in the p-basis, from the recursion n*c_n = sum_a (1-t^a) p_a c_{n-a}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return SymFunc.unit()
    acc = SymFunc()
    for a in range(1, n + 1):
        acc = acc + (SymFunc.p(a) * c_in_p(n - a)).scale(one_minus_t_power(a))
    return acc.scale(Fraction(1, n))


@lru_cache(maxsize=None)
def h_in_p(n: int) -> SymFunc:
    """Complete symmetric function: h_n = sum_{lam |- n} p_lam / zee(lam)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return SymFunc({lam: t_const(Fraction(1, zee(lam))) for lam in partitions_of(n)})


@lru_cache(maxsize=None)
def e_in_p(n: int) -> SymFunc:
    """Elementary symmetric function: e_n = sum_lam (-1)^{n-l(lam)} p_lam / zee(lam)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return SymFunc(
        {
            lam: t_const(Fraction((-1) ** (n - len(lam)), zee(lam)))
            for lam in partitions_of(n)
        }
    )


def p_from_c_closed(n: int) -> CExpr:
    """p_n over the c-basis via the closed partition-indexed formula.

    The coefficient of c_lam is n/(1-t^n) * (-1)^{l+1} / l * binom(l; m_1,...,m_n)
    with l the length of lam.
    """
    if n < 1:
        raise ValueError("n must be positive")
    front = RatFunc.one("t") / one_minus_t_power(n)
    terms = {}
    for lam in partitions_of(n):
        l = len(lam)
        coeff = Fraction((-1) ** (l + 1) * multinomial(l, multiplicity_vector(lam, n)), l)
        terms[lam] = front.scale(Fraction(n) * coeff)
    return CExpr(terms)


def p_from_c_compositions(n: int) -> CExpr:
    """p_n over the c-basis by direct enumeration of compositions.

    Sums (-1)^{k+1} * i_k * c_{i_k} ... c_{i_1} over all compositions
    (i_1, ..., i_k) of n, then divides by 1 - t^n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    collected: dict = {}
    for k in range(1, n + 1):
        sign = (-1) ** (k + 1)
        for comp in compositions_of(n, k):
            key = tuple(sorted(comp, reverse=True))
            collected[key] = collected.get(key, 0) + sign * comp[-1]
    front = RatFunc.one("t") / one_minus_t_power(n)
    return CExpr({k: front.scale(v) for k, v in collected.items() if v})


@lru_cache(maxsize=None)
def _c_monomial_in_p(lam) -> SymFunc:
    out = SymFunc.unit()
    for part in lam:
        out = out * c_in_p(part)
    return out


def cexpr_to_p(x: CExpr) -> SymFunc:
    """Expand every c-monomial via the recursion and collect in the p-basis."""
    out = SymFunc()
    for lam, coeff in x.terms.items():
        out = out + _c_monomial_in_p(lam).scale(coeff)
    return out


@lru_cache(maxsize=None)
def _p_monomial_in_c(lam) -> CExpr:
    out = CExpr.unit()
    for part in lam:
        out = out * p_from_c_closed(part)
    return out


def p_to_cexpr(x: SymFunc) -> CExpr:
    """Rewrite a p-basis element over the c-basis (inverse of cexpr_to_p)."""
    out = CExpr()
    for lam, coeff in x.terms.items():
        out = out + _p_monomial_in_c(lam).scale(coeff)
    return out


# ---------------------------------------------------------------------------
# Hopf structure
# ---------------------------------------------------------------------------


def coproduct(x: SymFunc) -> SymTensor:
    """The coproduct determined by every p_n being primitive."""
    total = SymTensor()
    for lam, coeff in x.terms.items():
        acc = {((), ()): coeff}
        for part in lam:
            nxt: dict = {}
            for (a, b), c in acc.items():
                for key in ((_merge_parts(a, (part,)), b), (a, _merge_parts(b, (part,)))):
                    if key in nxt:
                        nxt[key] = nxt[key] + c
                    else:
                        nxt[key] = c
            acc = nxt
        total = total + SymTensor(acc)
    return total


def counit(x: SymFunc) -> RatFunc:
    """Constant-term projection."""
    return x.coefficient(())


def antipode(x: SymFunc) -> SymFunc:
    """p_lam -> (-1)^{l(lam)} p_lam, extended linearly."""
    return SymFunc({lam: c.scale((-1) ** len(lam)) for lam, c in x.terms.items()})


def inner_product(x: SymFunc, y: SymFunc) -> RatFunc:
    """<p_lam, p_mu> = delta_{lam,mu} * zee(lam) * prod_i 1/(1 - t^{lam_i})."""
    acc = t_zero()
    for lam, cx in x.terms.items():
        cy = y.terms.get(lam)
        if cy is None:
            continue
        norm = t_const(zee(lam))
        for part in lam:
            norm = norm / one_minus_t_power(part)
        acc = acc + cx * cy * norm
    return acc


# ---------------------------------------------------------------------------
# monomial basis transitions
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _filling_count(parts, mu) -> int:
    # number of index assignments of the multiset `parts` into the slots of mu
    # such that the parts sent to slot j sum to mu_j
    if not mu:
        return 1 if not parts else 0
    target = mu[0]
    values = sorted(set(parts), reverse=True)
    counts = {v: parts.count(v) for v in values}
    total = 0

    def pick(idx, remaining, chosen):
        nonlocal total
        if remaining == 0:
            ways = 1
            rest = list(parts)
            for v, k in chosen:
                ways *= comb(counts[v], k)
                for _ in range(k):
                    rest.remove(v)
            total += ways * _filling_count(tuple(rest), mu[1:])
            return
        if idx == len(values):
            return
        v = values[idx]
        for k in range(0, min(counts[v], remaining // v) + 1):
            pick(idx + 1, remaining - k * v, chosen + [(v, k)] if k else chosen)

    pick(0, target, [])
    return total


@lru_cache(maxsize=None)
def p_to_m_matrix(n: int) -> dict:
    """R[lam][mu] = coefficient of the monomial function m_mu in p_lam (integers)."""
    parts_n = partitions_of(n)
    return {
        lam: {mu: _filling_count(lam, mu) for mu in parts_n if _filling_count(lam, mu)}
        for lam in parts_n
    }


@lru_cache(maxsize=None)
def _m_in_p_table(n: int) -> dict:
    """Inverse transition: each m_mu as a Fraction combination of p_lam."""
    parts_n = partitions_of(n)
    size = len(parts_n)
    R = p_to_m_matrix(n)
    # invert the integer matrix over Q by Gaussian elimination
    mat = [[Fraction(R[lam].get(mu, 0)) for mu in parts_n] for lam in parts_n]
    inv = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    for col in range(size):
        piv = next(r for r in range(col, size) if mat[r][col] != 0)
        mat[col], mat[piv] = mat[piv], mat[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = mat[col][col]
        mat[col] = [v / f for v in mat[col]]
        inv[col] = [v / f for v in inv[col]]
        for r in range(size):
            if r != col and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
                inv[r] = [a - f * b for a, b in zip(inv[r], inv[col])]
    # row mu of inv expresses m_mu over the p-basis
    table = {}
    for i, mu in enumerate(parts_n):
        table[mu] = {
            lam: inv[i][j] for j, lam in enumerate(parts_n) if inv[i][j]
        }
    return table


@lru_cache(maxsize=None)
def m_in_p(mu) -> SymFunc:
    """The monomial symmetric function m_mu in the p-basis."""
    mu = check_partition(mu)
    if not mu:
        return SymFunc.unit()
    table = _m_in_p_table(weight(mu))[mu]
    return SymFunc({lam: t_const(c) for lam, c in table.items()})


def to_m_expansion(x: SymFunc) -> dict:
    """Coefficients of x over the monomial basis, per partition."""
    out: dict = {}
    for lam, coeff in x.terms.items():
        if not lam:
            out[()] = out.get((), t_zero()) + coeff
            continue
        for mu, count in p_to_m_matrix(weight(lam))[lam].items():
            c = coeff.scale(count)
            if mu in out:
                out[mu] = out[mu] + c
            else:
                out[mu] = c
    return {k: v for k, v in out.items() if not v.is_zero()}


# ---------------------------------------------------------------------------
# Hall-Littlewood functions
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _hl_basis(n: int) -> dict:
    """All P_lam for lam |- n, by Gram-Schmidt up a linear extension of dominance."""
    basis: dict = {}
    # ascending reverse-lex order refines dominance from below
    for lam in reversed(partitions_of(n)):
        cand = m_in_p(lam)
        for mu, p_mu in basis.items():
            num = inner_product(cand, p_mu)
            if not num.is_zero():
                cand = cand - p_mu.scale(num / inner_product(p_mu, p_mu))
        basis[lam] = cand
    return basis


def hall_littlewood_P(lam, degree_cap: int = DEFAULT_DEGREE_CAP) -> SymFunc:
    """P_lam in the p-basis; monic and unitriangular over the monomial basis."""
    lam = check_partition(lam)
    n = weight(lam)
    if n > degree_cap:
        raise DegreeCapError(
            f"degree {n} exceeds the Hall-Littlewood cap {degree_cap}"
        )
    if not lam:
        return SymFunc.unit()
    return _hl_basis(n)[lam]


@lru_cache(maxsize=None)
def _hl_in_m(n: int) -> dict:
    return {lam: to_m_expansion(P) for lam, P in _hl_basis(n).items()}


def hl_expand(x: SymFunc, degree_cap: int = DEFAULT_DEGREE_CAP) -> dict:
    """Coefficients of x over the P-basis, peeling down dominance order."""
    out: dict = {}
    for d in sorted({weight(k) for k in x.terms}):
        if d > degree_cap:
            raise DegreeCapError(f"degree {d} exceeds the Hall-Littlewood cap {degree_cap}")
        comp = x.homogeneous_component(d)
        if d == 0:
            c = comp.coefficient(())
            if not c.is_zero():
                out[()] = c
            continue
        rem = to_m_expansion(comp)
        hl_m = _hl_in_m(d)
        for lam in partitions_of(d):
            c = rem.get(lam)
            if c is None or c.is_zero():
                continue
            out[lam] = c
            for mu, pc in hl_m[lam].items():
                v = rem.get(mu, t_zero()) - c * pc
                if v.is_zero():
                    rem.pop(mu, None)
                else:
                    rem[mu] = v
        if any(not v.is_zero() for v in rem.values()):
            raise RuntimeError("P-basis peeling left a nonzero remainder")
    return out


def macdonald_primitive(n: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> SymFunc:
    """sum over lam |- n of t^{n(lam)} * prod_{i=1}^{l-1} (1 - t^{-i}) * P_lam."""
    if n < 1:
        raise ValueError("n must be positive")
    acc = SymFunc()
    for lam in partitions_of(n):
        coeff = RatFunc.monomial("t", n_stat(lam))
        for i in range(1, len(lam)):
            coeff = coeff * (t_one() - RatFunc.monomial("t", -i))
        acc = acc + hall_littlewood_P(lam, degree_cap).scale(coeff)
    return acc


def schur_in_p(lam) -> SymFunc:
    """Schur function via the Jacobi-Trudi determinant of complete functions."""
    lam = check_partition(lam)
    if not lam:
        return SymFunc.unit()
    l = len(lam)
    acc = SymFunc()
    for sigma in permutations(range(l)):
        sign = 1
        for i in range(l):
            for j in range(i + 1, l):
                if sigma[i] > sigma[j]:
                    sign = -sign
        term = SymFunc.unit()
        ok = True
        for i in range(l):
            k = lam[i] - (i + 1) + (sigma[i] + 1)
            if k < 0:
                ok = False
                break
            term = term * h_in_p(k)
        if ok:
            acc = acc + term.scale(sign)
    return acc


def specialize_t(x: SymFunc, value) -> SymFunc:
    """Evaluate every coefficient at a rational t-value (constants stay RatFuncs)."""
    return SymFunc({lam: t_const(c.eval_at(value)) for lam, c in x.terms.items()})
