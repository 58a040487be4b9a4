"""Symbolic Hall algebra of nilpotent single-loop (Jordan) quiver representations.

Isomorphism classes are indexed by partitions: [I_lam] is the nilpotent
module with Jordan block sizes lam over F_q, and elements are finite linear
combinations with coefficients in Q(q).  Structure constants come from
Hall-Littlewood functions: if P_mu P_nu = sum f^lam_{mu,nu}(t) P_lam then

    g^lam_{mu,nu}(q) = q^{n(lam) - n(mu) - n(nu)} * f^lam_{mu,nu}(1/q)

is the number of submodules of I_lam isomorphic to I_nu with quotient I_mu,
a polynomial in q with integer coefficients (asserted on every computation).
The correspondence normalizes t^{n(lam)} P_lam <-> [I_lam] with t = 1/q.

The single-vertex loop quiver has identically zero additive Euler form, so
no square roots of q appear and the tensor-square product is untwisted.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .exactalg import ConsistencyError, RatFunc
from .partitions import (
    check_partition,
    multinomial,
    multiplicity_vector,
    n_stat,
    partitions_of,
    weight,
)
from .symfunc import (
    CExpr,
    SymFunc,
    _Combo,
    cexpr_to_p,
    hall_littlewood_P,
    hl_expand,
    macdonald_primitive,
)


def q_const(c) -> RatFunc:
    return RatFunc.const(c, "q")


def q_zero() -> RatFunc:
    return RatFunc.zero("q")


def q_one() -> RatFunc:
    return RatFunc.one("q")


def one_minus_q_power(a: int) -> RatFunc:
    """1 - q^a (a may be negative, giving a genuine rational function)."""
    return q_one() - RatFunc.monomial("q", a)


class HallElem(_Combo):
    """Q(q)-linear combination of iso classes [I_lam]; () is the unit [0]."""

    coeff_var = "q"

    @staticmethod
    def iso(*parts) -> "HallElem":
        return HallElem({check_partition(parts): q_one()})

    @staticmethod
    def unit() -> "HallElem":
        return HallElem({(): q_one()})

    def __mul__(self, other):
        if not isinstance(other, HallElem):
            raise TypeError("HallElem multiplies with HallElem")
        return mul(self, other)


class HallTensor:
    """Finite sum over pairs of iso classes; product is componentwise.

    (The loop quiver's Euler form vanishes, so the general twisted tensor
    product degenerates to the untwisted one used here.)
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for (a, b), coeff in items:
                if isinstance(coeff, (int, Fraction)):
                    coeff = q_const(coeff)
                if coeff.is_zero():
                    continue
                key = (tuple(a), tuple(b))
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

    def __add__(self, other: "HallTensor") -> "HallTensor":
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
        return HallTensor(out)

    def __sub__(self, other: "HallTensor") -> "HallTensor":
        return self + HallTensor({k: -c for k, c in other.terms.items()})

    def __mul__(self, other: "HallTensor") -> "HallTensor":
        out: dict = {}
        for (a, b), c1 in self.terms.items():
            for (c, d), c2 in other.terms.items():
                left = mul(HallElem({a: c1}), HallElem({c: c2}))
                right = mul(HallElem({b: q_one()}), HallElem({d: q_one()}))
                for la, ca in left.terms.items():
                    for lb, cb in right.terms.items():
                        key = (la, lb)
                        v = ca * cb
                        if key in out:
                            out[key] = out[key] + v
                        else:
                            out[key] = v
        return HallTensor(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, HallTensor) and self.terms == other.terms

    def __repr__(self):
        body = " + ".join(
            f"({c.render()})*{a}(x){b}" for (a, b), c in sorted(self.terms.items())
        )
        return f"HallTensor({body or '0'})"


# ---------------------------------------------------------------------------
# structure constants
# ---------------------------------------------------------------------------


def _t_to_q_inverse(f: RatFunc, extra_q_power: int) -> RatFunc:
    """q^extra * f(1/q), as a rational function of q."""
    return f.subst_power("q", 1) * RatFunc.monomial("q", extra_q_power)


@lru_cache(maxsize=None)
def _hl_product_expansion(mu, nu) -> tuple:
    prod = hall_littlewood_P(mu) * hall_littlewood_P(nu)
    return tuple(hl_expand(prod).items())


@lru_cache(maxsize=None)
def hall_polynomial(mu, nu, lam) -> RatFunc:
    """g^lam_{mu,nu}(q): submodules of I_lam isomorphic to I_nu with quotient I_mu."""
    mu, nu, lam = check_partition(mu), check_partition(nu), check_partition(lam)
    if weight(mu) + weight(nu) != weight(lam):
        return q_zero()
    f = dict(_hl_product_expansion(mu, nu)).get(lam)
    if f is None:
        return q_zero()
    g = _t_to_q_inverse(f, n_stat(lam) - n_stat(mu) - n_stat(nu))
    if not g.is_polynomial() or any(c.denominator != 1 for c in g.num.coeffs):
        raise ConsistencyError(
            f"Hall number g^{lam}_{mu},{nu} = {g.render()} is not an integer polynomial"
        )
    return g


@lru_cache(maxsize=None)
def aut_order(lam) -> RatFunc:
    """|Aut(I_lam)| as a polynomial in q.

    Closed form q^{|lam| + 2 n(lam)} * prod_i phi_{m_i}(1/q) with
    phi_r(u) = (1-u)...(1-u^r); its correctness is cross-checked against the
    finite-field enumeration oracle in the test suite.
    """
    lam = check_partition(lam)
    out = RatFunc.monomial("q", weight(lam) + 2 * n_stat(lam))
    for v in set(lam):
        for j in range(1, multiplicity_vector(lam, max(lam))[v - 1] + 1):
            out = out * one_minus_q_power(-j)
    if not out.is_polynomial():
        raise ConsistencyError(f"automorphism count {out.render()} is not polynomial")
    return out


def mul(x: HallElem, y: HallElem) -> HallElem:
    """[I_mu][I_nu] = sum_lam g^lam_{mu,nu}(q) [I_lam], extended bilinearly."""
    out = HallElem()
    for mu, cx in x.terms.items():
        for nu, cy in y.terms.items():
            c = cx * cy
            n = weight(mu) + weight(nu)
            acc = {}
            for lam in partitions_of(n):
                g = hall_polynomial(mu, nu, lam)
                if not g.is_zero():
                    acc[lam] = g * c
            out = out + HallElem(acc)
    return out


def counit(x: HallElem) -> RatFunc:
    return x.coefficient(())


def coproduct(x: HallElem) -> HallTensor:
    """Delta([I_lam]) = sum g^lam_{mu,nu} a_mu a_nu / a_lam [I_mu] (x) [I_nu]."""
    out = HallTensor()
    for lam, coeff in x.terms.items():
        n = weight(lam)
        a_lam = aut_order(lam)
        acc = {}
        for d in range(n + 1):
            for mu in partitions_of(d):
                for nu in partitions_of(n - d):
                    g = hall_polynomial(mu, nu, lam)
                    if g.is_zero():
                        continue
                    acc[(mu, nu)] = coeff * g * aut_order(mu) * aut_order(nu) / a_lam
        out = out + HallTensor(acc)
    return out


# ---------------------------------------------------------------------------
# transport from the symmetric-function side
# ---------------------------------------------------------------------------


def phi(x) -> HallElem:
    """The ring correspondence: t^{n(lam)} P_lam -> [I_lam], t -> 1/q."""
    if isinstance(x, CExpr):
        x = cexpr_to_p(x)
    if not isinstance(x, SymFunc):
        raise TypeError("phi expects a symmetric-function element")
    out = {}
    for lam, c in hl_expand(x).items():
        out[lam] = _t_to_q_inverse(c, n_stat(lam))
    return HallElem(out)


def z_generator(r: int) -> HallElem:
    """(1 - 1/q) [I_(r)] -- the degree-r central generator."""
    if r < 1:
        raise ValueError("r must be positive")
    return HallElem.iso(r).scale(one_minus_q_power(-1))


def _z_monomial(lam) -> HallElem:
    out = HallElem.unit()
    for part in lam:
        out = mul(out, z_generator(part))
    return out


def primitive_center(n: int, vertices: int = 1) -> HallElem:
    """The primitive element from the central-generator closed formula.

    n/(1 - q^{-n*vertices}) * sum over lam |- n of
    (-1)^{l+1}/l * binom(l; m_1..m_n) * z_{lam_1} ... z_{lam_l}.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if vertices != 1:
        raise ValueError("the symbolic algebra here is the single-vertex case")
    front = q_const(n) / one_minus_q_power(-n * vertices)
    out = HallElem()
    for lam in partitions_of(n):
        l = len(lam)
        coeff = Fraction((-1) ** (l + 1) * multinomial(l, multiplicity_vector(lam, n)), l)
        out = out + _z_monomial(lam).scale(front.scale(coeff))
    return out


def primitive_macdonald_image(n: int) -> HallElem:
    """sum over lam |- n of (1-q)(1-q^2)...(1-q^{l(lam)-1}) [I_lam]."""
    if n < 1:
        raise ValueError("n must be positive")
    out = {}
    for lam in partitions_of(n):
        c = q_one()
        for j in range(1, len(lam)):
            c = c * one_minus_q_power(j)
        out[lam] = c
    return HallElem(out)


def is_primitive(x: HallElem) -> bool:
    """Whether Delta(x) = x (x) [0] + [0] (x) x exactly."""
    delta = coproduct(x)
    boundary = HallTensor(
        {(lam, ()): c for lam, c in x.terms.items()}
    ) + HallTensor({((), lam): c for lam, c in x.terms.items()})
    return (delta - boundary).is_zero()


# ---------------------------------------------------------------------------
# the Hall-number identity
# ---------------------------------------------------------------------------


def hall_identity_sides(n: int, lam) -> tuple:
    """Both sides of the identity relating the two primitive closed forms.

    Left: (1-q)...(1-q^{l(lam)-1}).  Right: n/(1-q^{-n}) times the signed
    multinomial sum of (1-1/q)^{l(mu)} weighted by the coefficient of [I_lam]
    in the iterated product prod_i [I_(i)]^{m_i(mu)}.
    """
    lam = check_partition(lam)
    if weight(lam) != n:
        raise ValueError("lam must be a partition of n")
    lhs = q_one()
    for j in range(1, len(lam)):
        lhs = lhs * one_minus_q_power(j)
    front = q_const(n) / one_minus_q_power(-n)
    rhs = q_zero()
    for mu in partitions_of(n):
        l = len(mu)
        prod = HallElem.unit()
        for part in mu:
            prod = mul(prod, HallElem.iso(part))
        f = prod.coefficient(lam)
        if f.is_zero():
            continue
        coeff = Fraction((-1) ** (l + 1) * multinomial(l, multiplicity_vector(mu, n)), l)
        pw = q_one()
        for _ in range(l):
            pw = pw * one_minus_q_power(-1)
        rhs = rhs + front.scale(coeff) * pw * f
    return lhs, rhs


def verify_hall_identity(n: int, lam) -> bool:
    lhs, rhs = hall_identity_sides(n, lam)
    return lhs == rhs
