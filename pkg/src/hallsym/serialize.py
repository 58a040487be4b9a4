"""Canonical text, LaTeX, and JSON forms for every element type.

Term order is always ascending total degree, then the canonical
reverse-lexicographic partition order, and rational functions render through
their reduced monic-denominator form, so equal elements always produce
byte-identical output.
"""

from __future__ import annotations

from fractions import Fraction

from .exactalg import RatFunc
from .partitions import parse_partition, render_partition
from .symfunc import CExpr, SymFunc
from .hall_jordan import HallElem
from .cyclic_fq import CyclicIsoClass, NumHallElem


def _coeff_prefix(c: RatFunc) -> str:
    if c == RatFunc.one(c.var):
        return ""
    return f"({c.render()})"


def _render_combo(terms, bracket) -> str:
    if not terms:
        return "0"
    return " + ".join(f"{_coeff_prefix(c)}{bracket(lam)}" for lam, c in terms)


def render_symfunc(x: SymFunc) -> str:
    return _render_combo(x.sorted_terms(), lambda lam: f"p[{render_partition(lam)}]" if lam else "1")


def render_cexpr(x: CExpr) -> str:
    return _render_combo(x.sorted_terms(), lambda lam: f"c[{render_partition(lam)}]" if lam else "1")


def render_hallelem(x: HallElem) -> str:
    return _render_combo(x.sorted_terms(), lambda lam: f"[{render_partition(lam)}]")


def render_numhallelem(x: NumHallElem) -> str:
    if x.is_zero():
        return "0"
    body = " + ".join(
        (f"({v})" if v != 1 else "") + f"[{cls.render()}]" for cls, v in x.sorted_terms()
    )
    return f"v*({body})" if x.v_exp else body


# ---------------------------------------------------------------------------
# LaTeX
# ---------------------------------------------------------------------------


def latex_ratfunc(f: RatFunc) -> str:
    def poly_tex(p):
        from .exactalg import render_poly

        return render_poly(p, f.var).replace("*", " ").replace("^", "^")

    if f.is_polynomial():
        return poly_tex(f.num)
    return rf"\frac{{{poly_tex(f.num)}}}{{{poly_tex(f.den)}}}"


def _latex_terms(terms, symbol) -> str:
    if not terms:
        return "0"
    parts = []
    for lam, c in terms:
        coeff = "" if c == RatFunc.one(c.var) else rf"\left({latex_ratfunc(c)}\right)"
        parts.append(f"{coeff}{symbol(lam)}")
    return " + ".join(parts)


def latex_symfunc(x: SymFunc) -> str:
    return _latex_terms(
        x.sorted_terms(), lambda lam: rf"p_{{({render_partition(lam)})}}" if lam else "1"
    )


def latex_cexpr(x: CExpr) -> str:
    return _latex_terms(
        x.sorted_terms(), lambda lam: rf"c_{{({render_partition(lam)})}}" if lam else "1"
    )


def latex_hallelem(x: HallElem) -> str:
    return _latex_terms(x.sorted_terms(), lambda lam: rf"I_{{({render_partition(lam)})}}")


def latex_numhallelem(x: NumHallElem) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for cls, v in x.sorted_terms():
        sym = (
            r" \oplus ".join(rf"I_{{[{i};{l}]}}" for i, l in cls.summands)
            if cls.summands
            else "[0]"
        )
        coeff = "" if v == 1 else rf"\left({v}\right)"
        parts.append(f"{coeff}[{sym}]")
    body = " + ".join(parts)
    return rf"v \cdot \left({body}\right)" if x.v_exp else body


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def symfunc_to_json(x: SymFunc) -> dict:
    return {
        "basis": "p",
        "variable": "t",
        "terms": [
            {"partition": render_partition(lam), "coefficient": c.render()}
            for lam, c in x.sorted_terms()
        ],
    }


def cexpr_to_json(x: CExpr) -> dict:
    out = symfunc_to_json(x)  # same record shape
    out["basis"] = "c"
    return out


def symfunc_from_json(data: dict) -> SymFunc | CExpr:
    cls = {"p": SymFunc, "c": CExpr}[data["basis"]]
    return cls(
        {
            parse_partition(rec["partition"]): RatFunc.parse(rec["coefficient"], "t")
            for rec in data["terms"]
        }
    )


def hallelem_to_json(x: HallElem) -> dict:
    return {
        "variable": "q",
        "terms": [
            {"partition": render_partition(lam), "coefficient": c.render()}
            for lam, c in x.sorted_terms()
        ],
    }


def hallelem_from_json(data: dict) -> HallElem:
    return HallElem(
        {
            parse_partition(rec["partition"]): RatFunc.parse(rec["coefficient"], "q")
            for rec in data["terms"]
        }
    )


def numhallelem_to_json(x: NumHallElem) -> dict:
    return {
        "m": x.m,
        "q": x.q,
        "terms": [
            {"class": cls.render(), "coeff": str(v), "v_exp": x.v_exp}
            for cls, v in x.sorted_terms()
        ],
    }


def numhallelem_from_json(data: dict) -> NumHallElem:
    m, q = data["m"], data["q"]
    v_exp = data["terms"][0]["v_exp"] if data["terms"] else 0
    return NumHallElem(
        m,
        q,
        {
            CyclicIsoClass.parse(rec["class"], m): Fraction(rec["coeff"])
            for rec in data["terms"]
        },
        v_exp,
    )
