"""The verification suite: every acceptance criterion as a callable check.

Each check returns a CheckResult with a pass flag and a human-readable
detail block; ``run_all`` executes the full battery in order.  The CLI's
``verify all`` and the test suite both drive these functions, so the
printed table and the tests can never disagree.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct

from .exactalg import RatFunc
from .partitions import (
    compositions_of,
    multiplicity_vector,
    partitions_of,
    render_partition,
    weight,
)
from . import symfunc as sf
from . import hall_jordan as hj
from . import cyclic_fq as cf


@dataclass
class CheckResult:
    key: str
    title: str
    passed: bool
    details: str = ""
    seconds: float = 0.0
    warnings: list = field(default_factory=list)


def _timed(fn):
    def wrapper(*args, **kwargs) -> CheckResult:
        t0 = time.time()
        res = fn(*args, **kwargs)
        res.seconds = time.time() - t0
        return res

    return wrapper


# ---------------------------------------------------------------------------
# discrepancy notes (emitted as CLI warnings where relevant)
# ---------------------------------------------------------------------------

P3_NOTE = (
    "degree-3 note: a previously published worked example carries coefficient 1 "
    "on the cube of the degree-1 central generator, where the closed formula's "
    "multinomial term gives 1/3; the closed form printed here follows the "
    "recursion-consistent evaluation, which the coproduct primitivity check "
    "certifies independently."
)

SIGN_NOTE = (
    "sign convention: the central generators use the prefactor (-1/q)^(r*m) with "
    "m the vertex count; a published two-vertex line instead carries (-1)^r q^(-2r), "
    "which differs by the global sign (-1)^r for odd r. Centrality and primitivity "
    "are insensitive to this global sign."
)


def published_p3_closed_form() -> hj.HallElem:
    """The previously published degree-3 closed form, transcribed verbatim."""
    front = RatFunc.const(3, "q") / (RatFunc.monomial("q", 3) - hj.q_one())
    qm1 = RatFunc.parse("q - 1", "q")
    c21 = qm1 * qm1 * RatFunc.parse("q^2 - q - 1", "q")
    c111 = qm1 * qm1 * qm1 * RatFunc.parse("q + 1", "q") * RatFunc.parse("q^2 + q + 1", "q")
    return hj.HallElem({(3,): front, (2, 1): front * c21, (1, 1, 1): front * c111})


def published_two_vertex_display(n: int, q: int) -> dict:
    """The published two-vertex central-generator line, evaluated at q.

    Coefficients: (-1)^n (q-1)^2 q^-(n+2) on [1;2a] (+) [0;2(n-a)] and
    (-1)^{n+1} (q-1)^2 q^-(n+1) on [1;2a-1] (+) [0;2(n-a)+1], a = 1..n.
    """
    c1 = Fraction((-1) ** n * (q - 1) ** 2, q ** (n + 2))
    c2 = Fraction((-1) ** (n + 1) * (q - 1) ** 2, q ** (n + 1))
    out: dict = {}
    for a in range(1, n + 1):
        parts1 = [(1, 2 * a)] + ([(0, 2 * (n - a))] if n - a >= 1 else [])
        parts2 = [(1, 2 * a - 1), (0, 2 * (n - a) + 1)]
        out[cf.CyclicIsoClass(2, parts1)] = out.get(cf.CyclicIsoClass(2, parts1), Fraction(0)) + c1
        out[cf.CyclicIsoClass(2, parts2)] = out.get(cf.CyclicIsoClass(2, parts2), Fraction(0)) + c2
    return out


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


@_timed
def criterion_1(fast: bool = False) -> CheckResult:
    """Recursion and closed partition formula give identical p-expansions."""
    nmax = 8 if fast else 12
    lines = []
    ok = True
    for n in range(1, nmax + 1):
        closed = sf.cexpr_to_p(sf.p_from_c_closed(n))
        good = closed == sf.SymFunc.p(n)
        # the recursion itself, verbatim
        lhs = sf.c_in_p(n).scale(n)
        rhs = sf.SymFunc()
        for a in range(1, n + 1):
            rhs = rhs + (sf.SymFunc.p(a) * sf.c_in_p(n - a)).scale(sf.one_minus_t_power(a))
        good = good and lhs == rhs
        ok &= good
        lines.append(f"n={n}: {'ok' if good else 'MISMATCH'}")
    return CheckResult(
        "criterion-01",
        f"recursion == closed form, n <= {nmax}",
        ok,
        "; ".join(lines),
    )


@_timed
def criterion_2(fast: bool = False) -> CheckResult:
    """Composition-indexed formula equals the closed partition formula."""
    nmax = 6 if fast else 8
    ok = True
    lines = []
    for n in range(1, nmax + 1):
        direct = sf.p_from_c_compositions(n)
        closed = sf.p_from_c_closed(n)
        # collect the composition sum through the last-part counting coefficients
        from .partitions import composition_count_g

        collected_terms = {}
        for lam in partitions_of(n):
            r = multiplicity_vector(lam, n)
            k = sum(r)
            total = 0
            for l in set(lam):
                total += l * composition_count_g(r, l)
            collected_terms[lam] = RatFunc.const((-1) ** (k + 1) * total, "t") / sf.one_minus_t_power(n)
        collected = sf.CExpr(collected_terms)
        good = direct == closed == collected
        ok &= good
        lines.append(f"n={n}: {'ok' if good else 'MISMATCH'}")
    return CheckResult(
        "criterion-02",
        f"composition formula == partition formula, n <= {nmax}",
        ok,
        "; ".join(lines),
    )


@_timed
def criterion_3(fast: bool = False) -> CheckResult:
    """The orthogonal-basis expansion of p_n collapses to the single monomial."""
    nmax = 5 if fast else 6
    ok = True
    lines = []
    for n in range(1, nmax + 1):
        good = sf.macdonald_primitive(n) == sf.SymFunc.p(n)
        ok &= good
        lines.append(f"n={n}: {'ok' if good else 'MISMATCH'}")
    return CheckResult(
        "criterion-03",
        f"orthogonal expansion of p_n == p_n, n <= {nmax}",
        ok,
        "; ".join(lines),
    )


@_timed
def criterion_4(fast: bool = False) -> CheckResult:
    """Degree-2 primitive matches the published line; both methods agree; the
    degree-3 discrepancy in the published worked example is real and reported."""
    nmax = 4 if fast else 5
    expected_p2 = hj.HallElem({(2,): hj.q_one(), (1, 1): hj.one_minus_q_power(1)})
    got = hj.primitive_center(2)
    ok = got == expected_p2
    lines = [f"p_2 == [2] + (1-q)[1,1]: {'ok' if ok else 'MISMATCH'}"]
    for n in range(1, nmax + 1):
        agree = (
            hj.primitive_center(n)
            == hj.primitive_macdonald_image(n)
            == hj.phi(sf.SymFunc.p(n))
        )
        ok &= agree
        lines.append(f"methods agree n={n}: {'ok' if agree else 'MISMATCH'}")
    published = published_p3_closed_form()
    computed_p3 = hj.primitive_center(3)
    differs = published != computed_p3
    ok &= differs  # the discrepancy must be detected, not silently absorbed
    lines.append(
        "published degree-3 line differs from the recursion-consistent value: "
        + ("confirmed (reported)" if differs else "UNEXPECTEDLY EQUAL")
    )
    return CheckResult(
        "criterion-04",
        "degree-2 primitive, method agreement, degree-3 report",
        ok,
        "; ".join(lines),
        warnings=[P3_NOTE],
    )


@_timed
def criterion_5(fast: bool = False) -> CheckResult:
    """Symbolic primitivity of the transported power sums."""
    nmax = 4 if fast else 5
    ok = True
    lines = []
    for n in range(1, nmax + 1):
        good = hj.is_primitive(hj.primitive_macdonald_image(n))
        ok &= good
        lines.append(f"n={n}: {'primitive' if good else 'NOT PRIMITIVE'}")
    return CheckResult(
        "criterion-05",
        f"symbolic primitivity, n <= {nmax}",
        ok,
        "; ".join(lines),
    )


@_timed
def criterion_6(fast: bool = False) -> CheckResult:
    """Finite-field counts equal symbolic Hall polynomials and aut orders."""
    qs = (2,) if fast else (2, 3)
    nmax = 5
    bad = []
    checked = 0
    for q in qs:
        for n in range(1, nmax + 1):
            for lam in partitions_of(n):
                R = cf.CyclicIsoClass.from_partition(lam)
                table = cf.submodule_table(R, q)
                for d in range(n + 1):
                    for mu in partitions_of(d):
                        for nu in partitions_of(n - d):
                            g_sym = hj.hall_polynomial(mu, nu, lam).eval_at(q)
                            g_num = table.get(
                                (
                                    cf.CyclicIsoClass.from_partition(nu),
                                    cf.CyclicIsoClass.from_partition(mu),
                                ),
                                0,
                            )
                            checked += 1
                            if g_sym != g_num:
                                bad.append((q, lam, mu, nu, g_sym, g_num))
                a_sym = hj.aut_order(lam).eval_at(q)
                a_num = cf.aut_count(R, q)
                checked += 1
                if a_sym != a_num:
                    bad.append((q, lam, "aut", a_sym, a_num))
    details = f"{checked} comparisons at q in {qs}; mismatches: {len(bad)}"
    if bad:
        details += " " + "; ".join(map(str, bad[:5]))
    return CheckResult(
        "criterion-06",
        "counting oracle == symbolic Hall numbers and aut orders",
        not bad,
        details,
    )


CENTRALITY_CASES = ((1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2))


@_timed
def criterion_7(fast: bool = False) -> CheckResult:
    """Centrality of the z generators against every class of total dim <= 4."""
    qs = (2,) if fast else (2, 3)
    cases = tuple(c for c in CENTRALITY_CASES if not (fast and c == (3, 2)))
    lines = []
    ok = True
    for q in qs:
        for m, r in cases:
            z = cf.z_r_numeric(m, r, q)
            fails = cf.central_failures(z, 4)
            good = not fails
            ok &= good
            msg = f"m={m} r={r} q={q}: {'central' if good else 'FAILS at ' + str([c.render() for c in fails[:3]])}"
            lines.append(msg)
    return CheckResult(
        "criterion-07",
        "centrality of z_r (dim cap 4)",
        ok,
        "; ".join(lines),
        warnings=[SIGN_NOTE],
    )


PRIMITIVITY_CASES = ((1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1))


@_timed
def criterion_8(fast: bool = False) -> CheckResult:
    """Numeric primitivity of the central-generator combination at q = 2."""
    ok = True
    lines = []
    for m, n in PRIMITIVITY_CASES:
        x = cf.primitive_center_numeric(m, n, 2)
        good = cf.is_primitive_numeric(x)
        ok &= good
        lines.append(f"(m={m}, n={n}): {'primitive' if good else 'NOT PRIMITIVE'}")
    return CheckResult(
        "criterion-08",
        "numeric primitivity of the primitive combination, q=2",
        ok,
        "; ".join(lines),
    )


@_timed
def criterion_9(fast: bool = False) -> CheckResult:
    """The Hall-number identity between the two primitive closed forms."""
    nmax = 4 if fast else 5
    ok = True
    lines = []
    for n in range(1, nmax + 1):
        for lam in partitions_of(n):
            good = hj.verify_hall_identity(n, lam)
            ok &= good
            if not good:
                lines.append(f"FAILS at n={n}, lam={render_partition(lam)}")
    lines.insert(0, f"all lam |- n for n <= {nmax}: {'ok' if ok else 'mismatches'}")
    return CheckResult(
        "criterion-09",
        "Hall-number identity",
        ok,
        "; ".join(lines),
    )


def two_vertex_comparison(n: int, q: int) -> dict:
    """Term-by-term comparison of z_n (m=2) with the published display.

    Returns the per-class coefficients of both sides and which global sign,
    if any, reconciles every term.
    """
    computed = cf.z_r_numeric(2, n, q).as_rational_terms()
    published = published_two_vertex_display(n, q)
    classes = sorted(set(computed) | set(published), key=lambda c: c.sort_key())
    rows = []
    match_plus = match_minus = True
    for cls in classes:
        a = computed.get(cls, Fraction(0))
        b = published.get(cls, Fraction(0))
        match_plus &= a == b
        match_minus &= a == -b
        rows.append(
            {
                "class": cls.render(),
                "computed": str(a),
                "published": str(b),
                "equal": a == b,
                "equal_up_to_sign": a == b or a == -b,
            }
        )
    sign = "+1" if match_plus else ("-1" if match_minus else None)
    return {"n": n, "q": q, "rows": rows, "global_sign": sign}


@_timed
def criterion_10(fast: bool = False) -> CheckResult:
    """The two-vertex z_n against the published closed form, up to a global sign."""
    ok = True
    lines = []
    for n in (1, 2):
        for q in (2, 3):
            cmpres = two_vertex_comparison(n, q)
            good = cmpres["global_sign"] is not None
            ok &= good
            mism = [r for r in cmpres["rows"] if not r["equal_up_to_sign"]]
            lines.append(
                f"n={n} q={q}: "
                + (
                    f"matches with global sign {cmpres['global_sign']}"
                    if good
                    else "no global sign reconciles all terms; "
                    + "; ".join(
                        f"{r['class']}: computed {r['computed']} vs published {r['published']}"
                        for r in cmpres["rows"]
                        if not r["equal"]
                    )
                )
            )
    return CheckResult(
        "criterion-10",
        "two-vertex z_n vs published display (up to global sign)",
        ok,
        "\n".join(lines),
        warnings=[SIGN_NOTE],
    )


@_timed
def criterion_11(fast: bool = False) -> CheckResult:
    """Structural battery: associativity, coassociativity, compatibility,
    orthogonality, and the realize/decompose round trip."""
    lines = []
    ok = True

    # associativity, total degree <= 6
    deg_cap = 5 if fast else 6
    good = True
    singles = [lam for n in range(1, deg_cap - 1) for lam in partitions_of(n)]
    for a in singles:
        for b in singles:
            for c in singles:
                if weight(a) + weight(b) + weight(c) > deg_cap:
                    continue
                x, y, z = hj.HallElem({a: hj.q_one()}), hj.HallElem({b: hj.q_one()}), hj.HallElem({c: hj.q_one()})
                if hj.mul(hj.mul(x, y), z) != hj.mul(x, hj.mul(y, z)):
                    good = False
    ok &= good
    lines.append(f"associativity (deg <= {deg_cap}): {'ok' if good else 'FAIL'}")

    # coassociativity, degree <= 4
    good = True
    for n in range(1, 5):
        for lam in partitions_of(n):
            delta = hj.coproduct(hj.HallElem({lam: hj.q_one()}))
            left: dict = {}
            right: dict = {}
            for (a, b), c in delta.terms.items():
                for (a1, a2), c1 in hj.coproduct(hj.HallElem({a: hj.q_one()})).terms.items():
                    key = (a1, a2, b)
                    left[key] = left.get(key, hj.q_zero()) + c * c1
                for (b1, b2), c2 in hj.coproduct(hj.HallElem({b: hj.q_one()})).terms.items():
                    key = (a, b1, b2)
                    right[key] = right.get(key, hj.q_zero()) + c * c2
            left = {k: v for k, v in left.items() if not v.is_zero()}
            right = {k: v for k, v in right.items() if not v.is_zero()}
            if left != right:
                good = False
    ok &= good
    lines.append(f"coassociativity (deg <= 4): {'ok' if good else 'FAIL'}")

    # compatibility Delta(xy) = Delta(x) Delta(y), total degree <= 4
    good = True
    for n1 in range(1, 4):
        for n2 in range(1, 5 - n1):
            for a in partitions_of(n1):
                for b in partitions_of(n2):
                    x, y = hj.HallElem({a: hj.q_one()}), hj.HallElem({b: hj.q_one()})
                    if hj.coproduct(hj.mul(x, y)) != hj.coproduct(x) * hj.coproduct(y):
                        good = False
    ok &= good
    lines.append(f"product/coproduct compatibility (deg <= 4): {'ok' if good else 'FAIL'}")

    # orthogonality of the Hall-Littlewood family
    good = True
    for n in range(1, 6):
        parts = partitions_of(n)
        for i, lam in enumerate(parts):
            for mu in parts[i + 1 :]:
                ip = sf.inner_product(sf.hall_littlewood_P(lam), sf.hall_littlewood_P(mu))
                if not ip.is_zero():
                    good = False
    ok &= good
    lines.append(f"orthogonality (deg <= 5): {'ok' if good else 'FAIL'}")

    # realize/decompose round trip
    dim_cap = 5 if fast else 6
    good = True
    count = 0
    for m in (1, 2, 3):
        for cls in cf.classes_up_to_dim(m, dim_cap):
            count += 1
            if cf.decompose(cf.realize(cls, 2)) != cls:
                good = False
    ok &= good
    lines.append(
        f"decompose(realize) identity on {count} classes (dim <= {dim_cap}, m <= 3, q=2): "
        + ("ok" if good else "FAIL")
    )

    return CheckResult(
        "criterion-11",
        "structural property suite",
        ok,
        "; ".join(lines),
    )


ALL_CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
)


def run_all(fast: bool = False) -> list:
    return [fn(fast) for fn in ALL_CRITERIA]


def format_table(results) -> str:
    lines = []
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.key}  {mark}  {r.seconds:7.2f}s  {r.title}")
    total = sum(r.seconds for r in results)
    npass = sum(1 for r in results if r.passed)
    lines.append(f"{npass}/{len(results)} criteria passed in {total:.1f}s")
    return "\n".join(lines)
