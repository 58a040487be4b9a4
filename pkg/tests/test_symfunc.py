"""Symmetric-function identities, with finite-variable expansions as oracles."""

import random
from fractions import Fraction

import pytest

from hallsym.exactalg import RatFunc
from hallsym.partitions import partitions_of, weight, zee
from hallsym import symfunc as sf


def t(s):
    return RatFunc.parse(s, "t")


# ---------------------------------------------------------------------------
# finite-variable expansion oracle
# ---------------------------------------------------------------------------


def expand_in_vars(x: sf.SymFunc, nvars: int) -> dict:
    """Expand a p-basis element into honest polynomials in nvars variables.

    Returns the coefficient of each weakly-decreasing exponent tuple (one
    representative per symmetric orbit).  Completely independent of the
    monomial transition matrices inside the package.
    """
    out = {}
    for lam, coeff in x.terms.items():
        monos = {(0,) * nvars: sf.t_one()}
        for part in lam:
            nxt = {}
            for expo, c in monos.items():
                for i in range(nvars):
                    e2 = list(expo)
                    e2[i] += part
                    key = tuple(e2)
                    nxt[key] = nxt.get(key, sf.t_zero()) + c
            monos = nxt
        for expo, c in monos.items():
            if any(expo[i] < expo[i + 1] for i in range(nvars - 1)):
                continue  # keep only the sorted orbit representative
            out[expo] = out.get(expo, sf.t_zero()) + coeff * c
    return {k: v for k, v in out.items() if not v.is_zero()}


def elementary_poly(n: int, nvars: int) -> dict:
    """e_n in nvars variables: the single square-free representative monomial."""
    assert nvars >= n
    return {(1,) * n + (0,) * (nvars - n): sf.t_one()}


def monomial_poly(lam, nvars: int) -> dict:
    """m_lam in nvars variables: coefficient 1 on the exponent representative."""
    assert nvars >= len(lam)
    return {tuple(lam) + (0,) * (nvars - len(lam)): sf.t_one()}


# ---------------------------------------------------------------------------
# c-basis
# ---------------------------------------------------------------------------


class TestCyclicFamily:
    def test_base_cases(self):
        assert sf.c_in_p(0) == sf.SymFunc.unit()
        assert sf.c_in_p(1) == sf.SymFunc({(1,): t("1 - t")})

    def test_c2_hand_unrolled(self):
        # 2 c_2 = (1-t) p_1 c_1 + (1-t^2) p_2 with c_1 = (1-t) p_1
        expected = sf.SymFunc(
            {(2,): t("1 - t^2").scale(Fraction(1, 2)), (1, 1): (t("1 - t") * t("1 - t")).scale(Fraction(1, 2))}
        )
        assert sf.c_in_p(2) == expected

    def test_recursion_verbatim(self):
        for n in range(1, 9):
            lhs = sf.c_in_p(n).scale(n)
            rhs = sf.SymFunc()
            for a in range(1, n + 1):
                rhs = rhs + (sf.SymFunc.p(a) * sf.c_in_p(n - a)).scale(sf.one_minus_t_power(a))
            assert lhs == rhs

    def test_c_at_zero_is_complete_function(self):
        for n in range(9):
            assert sf.specialize_t(sf.c_in_p(n), 0) == sf.h_in_p(n)


class TestPOverCBasis:
    def test_closed_small_values(self):
        one_over_1mt = RatFunc.one("t") / sf.one_minus_t_power(1)
        assert sf.p_from_c_closed(1) == sf.CExpr({(1,): one_over_1mt})
        front2 = RatFunc.const(2, "t") / sf.one_minus_t_power(2)
        assert sf.p_from_c_closed(2) == sf.CExpr(
            {(2,): front2, (1, 1): front2.scale(Fraction(-1, 2))}
        )
        # the square-cube coefficient is 1/3, not 1
        front3 = RatFunc.const(3, "t") / sf.one_minus_t_power(3)
        assert sf.p_from_c_closed(3) == sf.CExpr(
            {
                (3,): front3,
                (2, 1): front3.scale(-1),
                (1, 1, 1): front3.scale(Fraction(1, 3)),
            }
        )

    def test_compositions_small(self):
        front2 = RatFunc.one("t") / sf.one_minus_t_power(2)
        assert sf.p_from_c_compositions(2) == sf.CExpr(
            {(2,): front2.scale(2), (1, 1): front2.scale(-1)}
        )

    def test_composition_equals_closed(self):
        for n in range(1, 9):
            assert sf.p_from_c_compositions(n) == sf.p_from_c_closed(n)

    def test_expansion_recovers_power_sum(self):
        for n in range(1, 11):
            assert sf.cexpr_to_p(sf.p_from_c_closed(n)) == sf.SymFunc.p(n)

    def test_round_trips(self):
        c21 = sf.CExpr.c(2, 1)
        assert sf.p_to_cexpr(sf.cexpr_to_p(c21)) == c21
        x = sf.SymFunc.p(2, 1) + sf.SymFunc.p(1).scale(Fraction(3, 2))
        assert sf.cexpr_to_p(sf.p_to_cexpr(x)) == x
        assert sf.cexpr_to_p(sf.CExpr.unit()) == sf.SymFunc.unit()


class TestCompleteAndElementary:
    def test_h_small(self):
        assert sf.h_in_p(1) == sf.SymFunc.p(1)
        assert sf.h_in_p(2) == sf.SymFunc(
            {(2,): Fraction(1, 2), (1, 1): Fraction(1, 2)}
        )

    def test_e_vs_direct_expansion(self):
        for n in range(1, 6):
            assert expand_in_vars(sf.e_in_p(n), n + 1) == elementary_poly(n, n + 1)


# ---------------------------------------------------------------------------
# Hopf structure
# ---------------------------------------------------------------------------


class TestHopf:
    def test_coproduct_examples(self):
        d = sf.coproduct(sf.SymFunc.p(3))
        assert d == sf.SymTensor({((3,), ()): 1, ((), (3,)): 1})
        assert sf.coproduct(sf.SymFunc.unit()) == sf.SymTensor({((), ()): 1})
        d11 = sf.coproduct(sf.SymFunc.p(1, 1))
        assert d11 == sf.SymTensor(
            {((1, 1), ()): 1, ((1,), (1,)): 2, ((), (1, 1)): 1}
        )

    def test_counit_and_antipode(self):
        x = sf.SymFunc.p(2) + sf.SymFunc.unit().scale(5)
        assert sf.counit(x) == sf.t_const(5)
        assert sf.antipode(sf.SymFunc.p(2, 1)) == sf.SymFunc.p(2, 1)
        assert sf.antipode(sf.SymFunc.p(3)) == sf.SymFunc.p(3).scale(-1)

    def _random_symfunc(self, rng, max_deg):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            n = rng.randint(0, max_deg)
            lam = rng.choice(partitions_of(n))
            terms[lam] = sf.t_const(Fraction(rng.randint(-3, 3)))
        return sf.SymFunc(terms)

    def test_coproduct_is_multiplicative(self):
        rng = random.Random(5)
        for _ in range(50):
            x = self._random_symfunc(rng, 3)
            y = self._random_symfunc(rng, 2)
            assert sf.coproduct(x * y) == sf.coproduct(x) * sf.coproduct(y)

    def test_counit_axiom(self):
        rng = random.Random(9)
        for _ in range(25):
            x = self._random_symfunc(rng, 4)
            recovered = sf.SymFunc()
            for (a, b), c in sf.coproduct(x).terms.items():
                if not a:  # (counit (x) id) picks the left-constant part
                    recovered = recovered + sf.SymFunc({b: c})
            assert recovered == x


# ---------------------------------------------------------------------------
# Hall-Littlewood family
# ---------------------------------------------------------------------------


class TestHallLittlewood:
    def test_degree_one(self):
        assert sf.hall_littlewood_P((1,)) == sf.SymFunc.p(1)

    def test_P2_known_value(self):
        expected = sf.SymFunc({(2,): t("(t + 1)/(2)"), (1, 1): t("(1 - t)/(2)")})
        assert sf.hall_littlewood_P((2,)) == expected

    def test_columns_are_elementary(self):
        for n in range(1, 6):
            assert sf.hall_littlewood_P((1,) * n) == sf.e_in_p(n)

    def test_at_t_zero_schur(self):
        for n in range(1, 6):
            for lam in partitions_of(n):
                spec = sf.specialize_t(sf.hall_littlewood_P(lam), 0)
                assert spec == sf.schur_in_p(lam), lam

    def test_at_t_one_monomial(self):
        for n in range(1, 6):
            for lam in partitions_of(n):
                spec = sf.specialize_t(sf.hall_littlewood_P(lam), 1)
                assert expand_in_vars(spec, n) == monomial_poly(lam, n), lam

    def test_orthogonality(self):
        for n in range(1, 6):
            parts = partitions_of(n)
            for i, lam in enumerate(parts):
                for mu in parts[i + 1 :]:
                    assert sf.inner_product(
                        sf.hall_littlewood_P(lam), sf.hall_littlewood_P(mu)
                    ).is_zero()

    def test_monic_over_monomial_basis(self):
        for n in range(1, 6):
            for lam in partitions_of(n):
                exp = sf.to_m_expansion(sf.hall_littlewood_P(lam))
                assert exp[lam] == sf.t_one()
                from hallsym.partitions import dominates

                for mu in exp:
                    assert dominates(lam, mu)

    def test_degree_cap(self):
        with pytest.raises(sf.DegreeCapError):
            sf.hall_littlewood_P((11,), degree_cap=10)


class TestMacdonaldExpansion:
    def test_equals_power_sum(self):
        for n in range(1, 7):
            assert sf.macdonald_primitive(n) == sf.SymFunc.p(n)

    def test_degree_two_by_hand(self):
        # t^{n(lam)} prod (1 - t^-i) P_lam over (2) and (1,1)
        target = sf.hall_littlewood_P((2,)) + sf.hall_littlewood_P((1, 1)).scale(
            t("t") * (sf.t_one() - t("(1)/(t)"))
        )
        assert target == sf.SymFunc.p(2)


class TestInnerProduct:
    def test_power_sum_norms(self):
        assert sf.inner_product(sf.SymFunc.p(2), sf.SymFunc.p(2)) == RatFunc.const(
            2, "t"
        ) / sf.one_minus_t_power(2)
        assert sf.inner_product(sf.SymFunc.p(1, 1), sf.SymFunc.p(2)).is_zero()
        norm = sf.inner_product(sf.SymFunc.p(1, 1), sf.SymFunc.p(1, 1))
        assert norm == RatFunc.const(zee((1, 1)), "t") / (
            sf.one_minus_t_power(1) * sf.one_minus_t_power(1)
        )


def test_monomial_transition_against_variables():
    for n in range(1, 6):
        for lam in partitions_of(n):
            assert expand_in_vars(sf.m_in_p(lam), n) == monomial_poly(lam, n)
