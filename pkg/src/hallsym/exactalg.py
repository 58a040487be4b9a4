"""Exact scalar arithmetic: rationals, dense univariate polynomials, rational functions.

Conventions used throughout the package:

* ``BigRational`` is ``fractions.Fraction`` (already stored reduced, with a
  positive denominator and 0 == 0/1).
* ``Poly`` is a dense univariate polynomial with Fraction coefficients,
  indexed by exponent, trailing zeros stripped.  The zero polynomial has an
  empty coefficient tuple and degree -1.
* ``RatFunc`` is a reduced fraction of two polynomials in one formal
  variable, tagged ``"t"`` or ``"q"``.  After reduction the denominator is
  made monic, so structural equality is semantic equality.  Negative powers
  are ordinary rational functions (q^-2 is 1/q^2); no Laurent monomials.
* ``HalfPower`` tracks an exact scalar times an integer power of v, where
  v^2 = q.  Only even powers convert to rational functions in q.

All values are immutable; every operation returns a fresh value, so the
types are safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
import re

BigRational = Fraction

VARIABLES = ("t", "q")


class VariableMismatchError(ValueError):
    """Arithmetic between rational functions with different variable tags."""


class PoleError(ZeroDivisionError):
    """Evaluation of a rational function at a zero of its denominator."""


class ConsistencyError(RuntimeError):
    """An internal invariant failed; indicates a bug, not bad input."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class Poly:
    """Dense univariate polynomial over Q.  Coefficient i is the x^i coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def zero() -> "Poly":
        return Poly(())

    @staticmethod
    def one() -> "Poly":
        return Poly((1,))

    @staticmethod
    def const(c) -> "Poly":
        return Poly((c,))

    @staticmethod
    def x(power: int = 1) -> "Poly":
        if power < 0:
            raise ValueError("monomial power must be nonnegative")
        return Poly((0,) * power + (1,))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.coeffs or not other.coeffs:
            return Poly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = _as_fraction(c)
        return Poly(tuple(c * a for a in self.coeffs))

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree()
        lead = other.coeffs[-1]
        quo = [Fraction(0)] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i]:
                f = rem[i] / lead
                quo[i - d] = f
                for j, b in enumerate(other.coeffs):
                    rem[i - d + j] -= f * b
        return Poly(quo), Poly(rem)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.coeffs[-1])

    def eval_at(self, value) -> Fraction:
        value = _as_fraction(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k (k >= 0)."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        if self.is_zero():
            return self
        return Poly((Fraction(0),) * k + self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"


def _int_coeff_lists(a: Poly, b: Poly):
    # scale both to primitive integer coefficient lists
    def to_int(p: Poly):
        if p.is_zero():
            return []
        denom = 1
        for c in p.coeffs:
            denom = denom * c.denominator // int_gcd(denom, c.denominator)
        ints = [int(c * denom) for c in p.coeffs]
        g = 0
        for v in ints:
            g = int_gcd(g, abs(v))
        if g > 1:
            ints = [v // g for v in ints]
        return ints

    return to_int(a), to_int(b)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd via a primitive PRS over the integers (keeps coefficients small)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    fa, fb = _int_coeff_lists(a, b)
    if len(fa) < len(fb):
        fa, fb = fb, fa
    while fb:
        # pseudo-remainder of fa by fb
        rem = list(fa)
        d = len(fb) - 1
        lead = fb[-1]
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i]:
                c = rem[i]
                for j in range(len(rem)):
                    rem[j] *= lead
                for j, bv in enumerate(fb):
                    rem[i - d + j] -= c * bv
        while rem and rem[-1] == 0:
            rem.pop()
        if rem:
            g = 0
            for v in rem:
                g = int_gcd(g, abs(v))
            if g > 1:
                rem = [v // g for v in rem]
        fa, fb = fb, rem
    return Poly(fa).monic()


_TERM_RE = re.compile(
    r"^(?P<sign>-)?(?P<coef>\d+(?:/\d+)?)?(?P<star>\*)?(?:(?P<var>[tq])(?:\^(?P<exp>-?\d+))?)?$"
)


def _render_term(c: Fraction, e: int, var: str, lead: bool) -> str:
    sign = "-" if c < 0 else "+"
    mag = abs(c)
    if e == 0:
        body = str(mag)
    elif mag == 1:
        body = var if e == 1 else f"{var}^{e}"
    else:
        body = f"{mag}*{var}" if e == 1 else f"{mag}*{var}^{e}"
    if lead:
        return body if sign == "+" else f"-{body}"
    return f" {sign} {body}"


def render_poly(p: Poly, var: str) -> str:
    """Canonical text form.

    Terms are listed by descending exponent, except that a polynomial with a
    negative leading and positive trailing coefficient is listed ascending
    (so 1 - q renders as written, while q^2 - 1 stays descending).
    """
    if p.is_zero():
        return "0"
    terms = [(e, c) for e, c in enumerate(p.coeffs) if c != 0]
    ascending = terms[-1][1] < 0 and terms[0][1] > 0
    if not ascending:
        terms.reverse()
    out = []
    for k, (e, c) in enumerate(terms):
        out.append(_render_term(c, e, var, lead=(k == 0)))
    return "".join(out)


def parse_poly(s: str, var: str) -> Poly:
    """Parse the canonical polynomial text form (inverse of render_poly)."""
    s = s.strip()
    if s == "0":
        return Poly.zero()
    s = s.replace(" - ", " +-").replace(" + ", " +")
    coeffs: dict[int, Fraction] = {}
    for chunk in s.split(" +"):
        chunk = chunk.strip()
        if not chunk:
            continue
        m = _TERM_RE.match(chunk)
        if not m or (m.group("var") not in (None, var)) or chunk in ("", "-"):
            raise ValueError(f"cannot parse polynomial term {chunk!r}")
        coef = m.group("coef")
        if coef is None and m.group("var") is None:
            raise ValueError(f"cannot parse polynomial term {chunk!r}")
        c = Fraction(coef) if coef is not None else Fraction(1)
        if m.group("sign"):
            c = -c
        if m.group("var") is None:
            e = 0
        else:
            e = int(m.group("exp") or 1)
        if e < 0:
            raise ValueError("negative exponents are not polynomial")
        coeffs[e] = coeffs.get(e, Fraction(0)) + c
    out = [Fraction(0)] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return Poly(out)


class RatFunc:
    """Reduced rational function num/den in one formal variable.

    Invariants: den != 0, gcd(num, den) = 1, den monic.  Equality and hashing
    are structural, which the invariants make semantic.
    """

    __slots__ = ("num", "den", "var")

    def __init__(self, num: Poly, den: Poly, var: str):
        if var not in VARIABLES:
            raise ValueError(f"variable tag must be one of {VARIABLES}")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly.zero(), Poly.one()
        else:
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num, _ = divmod(num, g)
                den, _ = divmod(den, g)
            lc = den.leading()
            if lc != 1:
                num = num.scale(1 / lc)
                den = den.scale(1 / lc)
        self.num = num
        self.den = den
        self.var = var

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_poly(p: Poly, var: str) -> "RatFunc":
        return RatFunc(p, Poly.one(), var)

    @staticmethod
    def const(c, var: str) -> "RatFunc":
        return RatFunc(Poly.const(c), Poly.one(), var)

    @staticmethod
    def zero(var: str) -> "RatFunc":
        return RatFunc.const(0, var)

    @staticmethod
    def one(var: str) -> "RatFunc":
        return RatFunc.const(1, var)

    @staticmethod
    def monomial(var: str, power: int, coeff=1) -> "RatFunc":
        """coeff * var^power, with negative powers as 1/var^|power|."""
        if power >= 0:
            return RatFunc(Poly.x(power).scale(coeff), Poly.one(), var)
        return RatFunc(Poly.const(coeff), Poly.x(-power), var)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == Poly.one()

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ConsistencyError(f"{self.render()} is not a polynomial")
        return self.num

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "RatFunc"):
        if not isinstance(other, RatFunc):
            raise TypeError("expected a RatFunc")
        if other.var != self.var:
            raise VariableMismatchError(
                f"mixed variables {self.var!r} and {other.var!r}"
            )

    def __add__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        return RatFunc(
            self.num * other.den + other.num * self.den,
            self.den * other.den,
            self.var,
        )

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        return RatFunc(
            self.num * other.den - other.num * self.den,
            self.den * other.den,
            self.var,
        )

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, self.var)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        return RatFunc(self.num * other.num, self.den * other.den, self.var)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num, self.var)

    def scale(self, c) -> "RatFunc":
        return RatFunc(self.num.scale(c), self.den, self.var)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatFunc)
            and self.var == other.var
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.var, self.num.coeffs, self.den.coeffs))

    # -- evaluation and substitution ------------------------------------

    def eval_at(self, value) -> Fraction:
        """Exact evaluation; raises PoleError when the denominator vanishes."""
        value = _as_fraction(value)
        d = self.den.eval_at(value)
        if d == 0:
            raise PoleError(f"pole at {self.var} = {value}")
        return self.num.eval_at(value) / d

    def subst_power(self, target_var: str, m: int) -> "RatFunc":
        """Substitute var -> target_var^(-m), m >= 1, clearing negative powers."""
        if m < 1:
            raise ValueError("power must be >= 1")
        d = max(self.num.degree(), self.den.degree())
        num_c = [Fraction(0)] * (m * d + 1)
        den_c = [Fraction(0)] * (m * d + 1)
        for i, c in enumerate(self.num.coeffs):
            num_c[m * (d - i)] += c
        for i, c in enumerate(self.den.coeffs):
            den_c[m * (d - i)] += c
        return RatFunc(Poly(num_c), Poly(den_c), target_var)

    # -- rendering -------------------------------------------------------

    def render(self) -> str:
        if self.is_polynomial():
            return render_poly(self.num, self.var)
        return f"({render_poly(self.num, self.var)})/({render_poly(self.den, self.var)})"

    @staticmethod
    def parse(s: str, var: str) -> "RatFunc":
        s = s.strip()
        if s.startswith("(") and ")/(" in s and s.endswith(")"):
            num_s, den_s = s[1:-1].split(")/(", 1)
            return RatFunc(parse_poly(num_s, var), parse_poly(den_s, var), var)
        return RatFunc.from_poly(parse_poly(s, var), var)

    def __repr__(self) -> str:
        return f"RatFunc({self.render()!r}, {self.var!r})"


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    """Dispatch add/sub/mul/div by name (used by the service layer)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def substitute_t_to_q_power(f: RatFunc, m: int) -> RatFunc:
    """Replace every t by q^(-m) and clear denominators to a genuine rational function."""
    if f.var != "t":
        raise VariableMismatchError("substitution applies to functions of t")
    return f.subst_power("q", m)


class HalfPower:
    """scalar * v^e with v^2 = q; the bookkeeping type for Euler-form twists."""

    __slots__ = ("scalar", "v_exp")

    def __init__(self, scalar, v_exp: int = 0):
        self.scalar = _as_fraction(scalar)
        self.v_exp = int(v_exp) if self.scalar else 0

    def __mul__(self, other: "HalfPower") -> "HalfPower":
        return HalfPower(self.scalar * other.scalar, self.v_exp + other.v_exp)

    def is_integral_power(self) -> bool:
        return self.v_exp % 2 == 0

    def to_ratfunc(self) -> RatFunc:
        """As a rational function of q; only even v-exponents qualify."""
        if not self.is_integral_power():
            raise ConsistencyError(
                f"v^{self.v_exp} is not a rational function of q"
            )
        return RatFunc.monomial("q", self.v_exp // 2, self.scalar)

    def eval_at_q(self, q: int) -> Fraction:
        """Exact value at a concrete q; requires an even v-exponent."""
        if not self.is_integral_power():
            raise ConsistencyError(f"v^{self.v_exp} at q={q} is irrational")
        e = self.v_exp // 2
        return self.scalar * (Fraction(q) ** e)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HalfPower)
            and self.scalar == other.scalar
            and self.v_exp == other.v_exp
        )

    def __hash__(self) -> int:
        return hash((self.scalar, self.v_exp))

    def __repr__(self) -> str:
        return f"HalfPower({self.scalar}, v_exp={self.v_exp})"
