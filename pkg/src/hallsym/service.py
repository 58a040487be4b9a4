"""HTTP service exposing every computation, with self-describing envelopes.

Each response carries the command echo, the convention block in force
(vertex count, substitution, sign convention), the result payload, and any
discrepancy warnings, so downstream consumers never have to guess which
normalization produced a number.
"""

from __future__ import annotations

from typing import Any, Optional

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .exactalg import PoleError, VariableMismatchError
from .partitions import parse_partition, render_partition
from . import symfunc as sf
from . import hall_jordan as hj
from . import cyclic_fq as cf
from . import serialize as ser
from . import checks

app = FastAPI(
    title="hallsym",
    description="Exact symmetric-function and Hall-algebra computations "
    "with a finite-field counting oracle.",
    version="0.1.0",
)


class Convention(BaseModel):
    vertices: int
    substitution: str
    sign: str = "(-1/q)^(r*m)"


class Envelope(BaseModel):
    command: str
    convention: Convention
    warnings: list[str] = Field(default_factory=list)
    result: Any = None


def _envelope(command: str, result: Any, m: int = 1, warnings=None) -> Envelope:
    return Envelope(
        command=command,
        convention=Convention(vertices=m, substitution=f"t -> q^-{m}"),
        warnings=list(warnings or []),
        result=result,
    )


@app.exception_handler(ValueError)
async def _value_error(request: Request, exc: ValueError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(PoleError)
async def _pole_error(request: Request, exc: PoleError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


# ---------------------------------------------------------------------------
# symmetric functions
# ---------------------------------------------------------------------------


class DegreeRequest(BaseModel):
    n: int = Field(ge=0, le=30)


class PFromCRequest(BaseModel):
    n: int = Field(ge=1, le=30)
    via: str = "closed"  # "closed" (alias "partitions") or "compositions"


class PartitionRequest(BaseModel):
    partition: str


def _symfunc_payload(x: sf.SymFunc) -> dict:
    return {
        "text": ser.render_symfunc(x),
        "latex": ser.latex_symfunc(x),
        "element": ser.symfunc_to_json(x),
    }


def _cexpr_payload(x: sf.CExpr) -> dict:
    return {
        "text": ser.render_cexpr(x),
        "latex": ser.latex_cexpr(x),
        "element": ser.cexpr_to_json(x),
    }


@app.post("/symf/c-in-p", response_model=Envelope)
def symf_c_in_p(req: DegreeRequest):
    return _envelope(f"symf c-in-p {req.n}", _symfunc_payload(sf.c_in_p(req.n)))


@app.post("/symf/p-from-c", response_model=Envelope)
def symf_p_from_c(req: PFromCRequest):
    if req.via in ("closed", "partitions"):
        x = sf.p_from_c_closed(req.n)
    elif req.via == "compositions":
        x = sf.p_from_c_compositions(req.n)
    else:
        raise HTTPException(400, f"unknown route {req.via!r}; use closed or compositions")
    return _envelope(f"symf p-from-c {req.n} --via {req.via}", _cexpr_payload(x))


@app.post("/symf/hl-p", response_model=Envelope)
def symf_hl_p(req: PartitionRequest):
    lam = parse_partition(req.partition)
    return _envelope(
        f"symf hl-P {render_partition(lam)}",
        _symfunc_payload(sf.hall_littlewood_P(lam)),
    )


@app.post("/symf/macdonald", response_model=Envelope)
def symf_macdonald(req: DegreeRequest):
    if req.n < 1:
        raise HTTPException(400, "n must be positive")
    return _envelope(
        f"symf macdonald {req.n}", _symfunc_payload(sf.macdonald_primitive(req.n))
    )


# ---------------------------------------------------------------------------
# symbolic Hall algebra (single vertex)
# ---------------------------------------------------------------------------


class MulRequest(BaseModel):
    a: str
    b: str


class HallPolyRequest(BaseModel):
    mu: str
    nu: str
    lam: str


class PrimitiveRequest(BaseModel):
    n: int = Field(ge=1, le=8)
    method: str = "center"  # or "macdonald"


class IdentityRequest(BaseModel):
    n: int = Field(ge=1, le=8)
    partition: str


def _hall_payload(x: hj.HallElem) -> dict:
    return {
        "text": ser.render_hallelem(x),
        "latex": ser.latex_hallelem(x),
        "element": ser.hallelem_to_json(x),
    }


def _p3_warnings(n: int) -> list:
    return [checks.P3_NOTE] if n >= 3 else []


@app.post("/hall/mul", response_model=Envelope)
def hall_mul(req: MulRequest):
    a, b = parse_partition(req.a), parse_partition(req.b)
    x = hj.mul(hj.HallElem({a: hj.q_one()}), hj.HallElem({b: hj.q_one()}))
    return _envelope(
        f"hall mul {render_partition(a)} {render_partition(b)}", _hall_payload(x)
    )


@app.post("/hall/coproduct", response_model=Envelope)
def hall_coproduct(req: PartitionRequest):
    lam = parse_partition(req.partition)
    delta = hj.coproduct(hj.HallElem({lam: hj.q_one()}))
    terms = [
        {
            "left": render_partition(a),
            "right": render_partition(b),
            "coefficient": c.render(),
        }
        for (a, b), c in sorted(
            delta.terms.items(), key=lambda kv: (sum(kv[0][0]), kv[0])
        )
    ]
    return _envelope(
        f"hall coproduct {render_partition(lam)}", {"terms": terms}
    )


@app.post("/hall/polynomial", response_model=Envelope)
def hall_polynomial_ep(req: HallPolyRequest):
    mu, nu, lam = (parse_partition(s) for s in (req.mu, req.nu, req.lam))
    g = hj.hall_polynomial(mu, nu, lam)
    return _envelope(
        f"hall polynomial {render_partition(mu)} {render_partition(nu)} {render_partition(lam)}",
        {"text": g.render(), "coefficient": g.render()},
    )


@app.post("/hall/primitive", response_model=Envelope)
def hall_primitive(req: PrimitiveRequest):
    if req.method == "center":
        x = hj.primitive_center(req.n)
    elif req.method == "macdonald":
        x = hj.primitive_macdonald_image(req.n)
    else:
        raise HTTPException(400, f"unknown method {req.method!r}; use center or macdonald")
    return _envelope(
        f"hall primitive {req.n} --method {req.method}",
        _hall_payload(x),
        warnings=_p3_warnings(req.n),
    )


@app.post("/hall/verify-primitive", response_model=Envelope)
def hall_verify_primitive(req: DegreeRequest):
    if req.n < 1:
        raise HTTPException(400, "n must be positive")
    x = hj.primitive_center(req.n)
    ok = hj.is_primitive(x)
    agree = x == hj.primitive_macdonald_image(req.n)
    return _envelope(
        f"hall verify-primitive {req.n}",
        {"primitive": ok, "methods_agree": agree, "element": _hall_payload(x)},
        warnings=_p3_warnings(req.n),
    )


@app.post("/hall/identity", response_model=Envelope)
def hall_identity(req: IdentityRequest):
    lam = parse_partition(req.partition)
    lhs, rhs = hj.hall_identity_sides(req.n, lam)
    return _envelope(
        f"hall identity {req.n} {render_partition(lam)}",
        {"holds": lhs == rhs, "lhs": lhs.render(), "rhs": rhs.render()},
    )


# ---------------------------------------------------------------------------
# finite-field oracle
# ---------------------------------------------------------------------------


class EnumerateRequest(BaseModel):
    m: int = Field(ge=1, le=4)
    q: int = 2
    deg: Optional[int] = Field(default=None, ge=1)
    dim: Optional[str] = None  # comma-separated dimension vector


class HallNumRequest(BaseModel):
    m: int = Field(ge=1, le=4)
    q: int
    R: str
    sub: str
    quot: str


class ZRequest(BaseModel):
    m: int = Field(ge=1, le=4)
    r: int = Field(ge=1)
    q: int


class CentralRequest(BaseModel):
    m: int = Field(ge=1, le=4)
    r: int = Field(ge=1)
    q: int
    dim_cap: int = Field(default=4, ge=1, le=6)


class FqPrimitiveRequest(BaseModel):
    m: int = Field(ge=1, le=4)
    n: int = Field(ge=1)
    q: int


class CrosscheckRequest(BaseModel):
    max_weight: int = Field(default=5, ge=1, le=5)
    qs: list[int] = Field(default_factory=lambda: [2, 3])


class CompareDisplayRequest(BaseModel):
    n: int = Field(ge=1, le=3)
    q: int


def _num_payload(x: cf.NumHallElem) -> dict:
    return {
        "text": ser.render_numhallelem(x),
        "latex": ser.latex_numhallelem(x),
        "element": ser.numhallelem_to_json(x),
    }


def _sign_warnings(m: int) -> list:
    return [checks.SIGN_NOTE] if m >= 2 else []


@app.post("/fq/enumerate", response_model=Envelope)
def fq_enumerate(req: EnumerateRequest):
    if (req.deg is None) == (req.dim is None):
        raise HTTPException(400, "give exactly one of deg (multiple of delta) or dim")
    d = (
        cf.delta_dim(req.m, req.deg)
        if req.deg is not None
        else tuple(int(x) for x in req.dim.split(","))
    )
    if len(d) != req.m:
        raise HTTPException(400, f"dimension vector {d} has wrong length for m={req.m}")
    classes = cf.enumerate_iso(req.m, d)
    return _envelope(
        f"fq enumerate --m {req.m} --dim {','.join(map(str, d))}",
        {"classes": [c.render() for c in classes], "count": len(classes)},
        m=req.m,
    )


@app.post("/fq/hallnum", response_model=Envelope)
def fq_hallnum(req: HallNumRequest):
    R = cf.CyclicIsoClass.parse(req.R, req.m)
    sub = cf.CyclicIsoClass.parse(req.sub, req.m)
    quot = cf.CyclicIsoClass.parse(req.quot, req.m)
    count = cf.submodule_count(R, sub, quot, req.q)
    return _envelope(
        f"fq hallnum --m {req.m} --q {req.q} --R {R.render()} --sub {sub.render()} --quot {quot.render()}",
        {"count": count},
        m=req.m,
    )


@app.post("/fq/z", response_model=Envelope)
def fq_z(req: ZRequest):
    z = cf.z_r_numeric(req.m, req.r, req.q)
    return _envelope(
        f"fq z --m {req.m} --r {req.r} --q {req.q}",
        _num_payload(z),
        m=req.m,
        warnings=_sign_warnings(req.m),
    )


@app.post("/fq/verify-central", response_model=Envelope)
def fq_verify_central(req: CentralRequest):
    z = cf.z_r_numeric(req.m, req.r, req.q)
    failures = cf.central_failures(z, req.dim_cap)
    return _envelope(
        f"fq verify-central --m {req.m} --r {req.r} --q {req.q} --dim-cap {req.dim_cap}",
        {
            "central": not failures,
            "dim_cap": req.dim_cap,
            "failures": [c.render() for c in failures],
        },
        m=req.m,
        warnings=_sign_warnings(req.m),
    )


@app.post("/fq/verify-primitive", response_model=Envelope)
def fq_verify_primitive(req: FqPrimitiveRequest):
    x = cf.primitive_center_numeric(req.m, req.n, req.q)
    ok = cf.is_primitive_numeric(x)
    return _envelope(
        f"fq verify-primitive --m {req.m} --n {req.n} --q {req.q}",
        {"primitive": ok, "element": _num_payload(x)},
        m=req.m,
        warnings=_sign_warnings(req.m) + _p3_warnings(req.n),
    )


@app.post("/fq/crosscheck", response_model=Envelope)
def fq_crosscheck(req: CrosscheckRequest):
    from .partitions import partitions_of

    mismatches = []
    checked = 0
    for q in req.qs:
        for n in range(1, req.max_weight + 1):
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
                                mismatches.append(
                                    {
                                        "q": q,
                                        "lam": render_partition(lam),
                                        "mu": render_partition(mu),
                                        "nu": render_partition(nu),
                                        "symbolic": str(g_sym),
                                        "counted": g_num,
                                    }
                                )
                checked += 1
                if hj.aut_order(lam).eval_at(q) != cf.aut_count(R, q):
                    mismatches.append({"q": q, "lam": render_partition(lam), "kind": "aut"})
    return _envelope(
        f"fq crosscheck --max-weight {req.max_weight} --q {','.join(map(str, req.qs))}",
        {"checked": checked, "mismatches": mismatches, "all_equal": not mismatches},
    )


@app.post("/fq/compare-display", response_model=Envelope)
def fq_compare_display(req: CompareDisplayRequest):
    cmpres = checks.two_vertex_comparison(req.n, req.q)
    return _envelope(
        f"fq compare-display --n {req.n} --q {req.q}",
        cmpres,
        m=2,
        warnings=[checks.SIGN_NOTE],
    )


# ---------------------------------------------------------------------------
# verification battery
# ---------------------------------------------------------------------------


class VerifyRequest(BaseModel):
    fast: bool = False


@app.post("/verify/all", response_model=Envelope)
def verify_all(req: VerifyRequest):
    results = checks.run_all(fast=req.fast)
    payload = {
        "all_passed": all(r.passed for r in results),
        "table": checks.format_table(results),
        "results": [
            {
                "key": r.key,
                "title": r.title,
                "passed": r.passed,
                "seconds": round(r.seconds, 2),
                "details": r.details,
            }
            for r in results
        ],
    }
    warnings = sorted({w for r in results for w in r.warnings})
    return _envelope(
        "verify all" + (" --fast" if req.fast else ""), payload, warnings=warnings
    )


@app.get("/health")
def health():
    return {"status": "ok"}
