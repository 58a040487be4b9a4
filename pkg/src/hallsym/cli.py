"""Command-line client for the computation service.

By default every command talks to an in-process instance of the HTTP app,
so no server is needed; pass --server to point the same commands at a
running instance instead.  Output is deterministic: fixed term order,
canonical rational-function rendering, and a convention header on every
result.
"""

from __future__ import annotations

import json
import sys

import click
import httpx


def _make_client(server: str | None):
    if server:
        return httpx.Client(base_url=server, timeout=3600.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def _post(ctx, path: str, payload: dict) -> dict:
    client = _make_client(ctx.obj.get("server"))
    resp = client.post(path, json=payload)
    if resp.status_code >= 400:
        try:
            detail = resp.json().get("detail", resp.text)
        except Exception:
            detail = resp.text
        raise click.UsageError(str(detail))
    return resp.json()


def _emit(ctx, envelope: dict, body_lines):
    """Print an envelope: JSON verbatim, or the fixed text layout."""
    if ctx.obj.get("json"):
        click.echo(json.dumps(envelope, indent=2, sort_keys=True))
        return
    conv = envelope["convention"]
    click.echo(f"# {envelope['command']}")
    click.echo(
        f"# convention: vertices={conv['vertices']}, {conv['substitution']}, sign={conv['sign']}"
    )
    for line in body_lines:
        click.echo(line)
    for w in envelope.get("warnings", []):
        click.echo(f"# warning: {w}")


def _element_lines(ctx, result: dict) -> list:
    if ctx.obj.get("latex"):
        return [result["latex"]]
    return [result["text"]]


@click.group()
@click.option("--server", default=None, help="Base URL of a running service; default is in-process.")
@click.option("--json", "as_json", is_flag=True, help="Print the full response envelope as JSON.")
@click.option("--latex", is_flag=True, help="Render elements as LaTeX instead of plain text.")
@click.pass_context
def main(ctx, server, as_json, latex):
    """Exact symmetric functions, Hall algebras, and finite-field counting."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server
    ctx.obj["json"] = as_json
    ctx.obj["latex"] = latex


# ---------------------------------------------------------------------------
# symf
# ---------------------------------------------------------------------------


@main.group()
def symf():
    """Symmetric functions over Q(t)."""


@symf.command("c-in-p")
@click.argument("n", type=int)
@click.pass_context
def symf_c_in_p(ctx, n):
    """Expansion of c_N in the power-sum basis."""
    env = _post(ctx, "/symf/c-in-p", {"n": n})
    _emit(ctx, env, _element_lines(ctx, env["result"]))


@symf.command("p-from-c")
@click.argument("n", type=int)
@click.option("--via", default="closed", type=click.Choice(["closed", "partitions", "compositions"]))
@click.pass_context
def symf_p_from_c(ctx, n, via):
    """p_N over the c-basis, by the closed formula or by composition sums."""
    env = _post(ctx, "/symf/p-from-c", {"n": n, "via": via})
    _emit(ctx, env, _element_lines(ctx, env["result"]))


@symf.command("hl-P")
@click.argument("partition")
@click.pass_context
def symf_hl_p(ctx, partition):
    """Hall-Littlewood P for a partition like 2,1."""
    env = _post(ctx, "/symf/hl-p", {"partition": partition})
    _emit(ctx, env, _element_lines(ctx, env["result"]))


@symf.command("macdonald")
@click.argument("n", type=int)
@click.pass_context
def symf_macdonald(ctx, n):
    """The orthogonal-basis expansion of p_N (collapses to p_N)."""
    env = _post(ctx, "/symf/macdonald", {"n": n})
    _emit(ctx, env, _element_lines(ctx, env["result"]))


# ---------------------------------------------------------------------------
# hall
# ---------------------------------------------------------------------------


@main.group()
def hall():
    """Symbolic single-vertex Hall algebra over Q(q)."""


@hall.command("mul")
@click.argument("a")
@click.argument("b")
@click.pass_context
def hall_mul(ctx, a, b):
    """Product [A]*[B] of iso classes given as partitions."""
    env = _post(ctx, "/hall/mul", {"a": a, "b": b})
    _emit(ctx, env, _element_lines(ctx, env["result"]))


@hall.command("coproduct")
@click.argument("partition")
@click.pass_context
def hall_coproduct(ctx, partition):
    """Coproduct of an iso class."""
    env = _post(ctx, "/hall/coproduct", {"partition": partition})
    lines = [
        f"[{t['left']}] (x) [{t['right']}]: {t['coefficient']}"
        for t in env["result"]["terms"]
    ]
    _emit(ctx, env, lines)


@hall.command("polynomial")
@click.argument("mu")
@click.argument("nu")
@click.argument("lam")
@click.pass_context
def hall_poly(ctx, mu, nu, lam):
    """Hall number g^LAM_{MU,NU} as a polynomial in q."""
    env = _post(ctx, "/hall/polynomial", {"mu": mu, "nu": nu, "lam": lam})
    _emit(ctx, env, [env["result"]["coefficient"]])


@hall.command("primitive")
@click.argument("n", type=int)
@click.option("--method", default="center", type=click.Choice(["center", "macdonald"]))
@click.pass_context
def hall_primitive(ctx, n, method):
    """Primitive element of degree N via either closed form."""
    env = _post(ctx, "/hall/primitive", {"n": n, "method": method})
    _emit(ctx, env, _element_lines(ctx, env["result"]))


@hall.command("verify-primitive")
@click.argument("n", type=int)
@click.pass_context
def hall_verify_primitive(ctx, n):
    """Check primitivity of the degree-N element symbolically."""
    env = _post(ctx, "/hall/verify-primitive", {"n": n})
    res = env["result"]
    lines = [
        f"primitive: {str(res['primitive']).lower()}",
        f"methods agree: {str(res['methods_agree']).lower()}",
        res["element"]["text"],
    ]
    _emit(ctx, env, lines)
    if not (res["primitive"] and res["methods_agree"]):
        sys.exit(1)


@hall.command("identity")
@click.argument("n", type=int)
@click.argument("lam")
@click.pass_context
def hall_identity(ctx, n, lam):
    """The Hall-number identity at degree N for partition LAM."""
    env = _post(ctx, "/hall/identity", {"n": n, "partition": lam})
    res = env["result"]
    lines = [
        f"holds: {str(res['holds']).lower()}",
        f"lhs = {res['lhs']}",
        f"rhs = {res['rhs']}",
    ]
    _emit(ctx, env, lines)
    if not res["holds"]:
        sys.exit(1)


# ---------------------------------------------------------------------------
# fq
# ---------------------------------------------------------------------------


@main.group()
def fq():
    """Finite-field counting oracle for cyclic quivers."""


@fq.command("enumerate")
@click.option("--m", type=int, required=True)
@click.option("--deg", type=int, default=None, help="degree r: dimension vector r*(1,..,1)")
@click.option("--dim", default=None, help="explicit dimension vector, e.g. 2,1")
@click.option("--q", type=int, default=2)
@click.pass_context
def fq_enumerate(ctx, m, deg, dim, q):
    """List the iso classes with a given dimension vector."""
    env = _post(ctx, "/fq/enumerate", {"m": m, "deg": deg, "dim": dim, "q": q})
    lines = env["result"]["classes"] + [f"count: {env['result']['count']}"]
    _emit(ctx, env, lines)


@fq.command("hallnum")
@click.option("--m", type=int, required=True)
@click.option("--q", type=int, required=True)
@click.option("--r", "--R", "big", required=True, help="ambient class, e.g. [0;2]+[0;1] (or 1,1 partition syntax for m=1)")
@click.option("--sub", required=True)
@click.option("--quot", required=True)
@click.pass_context
def fq_hallnum(ctx, m, q, big, sub, quot):
    """Count submodules of --R isomorphic to --sub with quotient --quot."""
    payload = {"m": m, "q": q, "R": _cls_arg(big, m), "sub": _cls_arg(sub, m), "quot": _cls_arg(quot, m)}
    env = _post(ctx, "/fq/hallnum", payload)
    _emit(ctx, env, [str(env["result"]["count"])])


def _cls_arg(s: str, m: int) -> str:
    """Accept either [i;l]+... syntax or, for m=1, bare partition syntax."""
    s = s.strip()
    if m == 1 and "[" not in s and s != "0":
        parts = [int(x) for x in s.split(",")]
        return "+".join(f"[0;{l}]" for l in sorted(parts, reverse=True))
    return s


@fq.command("z")
@click.option("--m", type=int, required=True)
@click.option("--r", type=int, required=True)
@click.option("--q", type=int, required=True)
@click.pass_context
def fq_z(ctx, m, r, q):
    """The degree-r central element, all coefficients exact."""
    env = _post(ctx, "/fq/z", {"m": m, "r": r, "q": q})
    _emit(ctx, env, _element_lines(ctx, env["result"]))


@fq.command("verify-central")
@click.option("--m", type=int, required=True)
@click.option("--r", type=int, required=True)
@click.option("--q", type=int, required=True)
@click.option("--dim-cap", type=int, default=4)
@click.pass_context
def fq_verify_central(ctx, m, r, q, dim_cap):
    """Check the central element commutes with all small classes."""
    env = _post(ctx, "/fq/verify-central", {"m": m, "r": r, "q": q, "dim_cap": dim_cap})
    res = env["result"]
    lines = [f"central: {str(res['central']).lower()} (dim cap {res['dim_cap']})"]
    lines += [f"fails against {c}" for c in res["failures"]]
    _emit(ctx, env, lines)
    if not res["central"]:
        sys.exit(1)


@fq.command("verify-primitive")
@click.option("--m", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--q", type=int, required=True)
@click.pass_context
def fq_verify_primitive(ctx, m, n, q):
    """Numeric primitivity of the degree-n primitive combination."""
    env = _post(ctx, "/fq/verify-primitive", {"m": m, "n": n, "q": q})
    res = env["result"]
    lines = [f"primitive: {str(res['primitive']).lower()}", res["element"]["text"]]
    _emit(ctx, env, lines)
    if not res["primitive"]:
        sys.exit(1)


@fq.command("crosscheck")
@click.option("--max-weight", type=int, default=5)
@click.option("--q", "qs", default="2,3", help="comma-separated primes")
@click.pass_context
def fq_crosscheck(ctx, max_weight, qs):
    """Compare every count against the symbolic Hall polynomials."""
    qlist = [int(x) for x in qs.split(",")]
    env = _post(ctx, "/fq/crosscheck", {"max_weight": max_weight, "qs": qlist})
    res = env["result"]
    lines = [f"checked: {res['checked']}", f"all equal: {str(res['all_equal']).lower()}"]
    lines += [str(mm) for mm in res["mismatches"]]
    _emit(ctx, env, lines)
    if not res["all_equal"]:
        sys.exit(1)


@fq.command("compare-display")
@click.option("--n", type=int, required=True)
@click.option("--q", type=int, required=True)
@click.pass_context
def fq_compare_display(ctx, n, q):
    """Term-by-term comparison of z_n (two vertices) with the published line."""
    env = _post(ctx, "/fq/compare-display", {"n": n, "q": q})
    res = env["result"]
    lines = []
    for row in res["rows"]:
        status = "equal" if row["equal"] else ("sign-flipped" if row["equal_up_to_sign"] else "DIFFERS")
        lines.append(
            f"{row['class']}: computed {row['computed']}, published {row['published']} [{status}]"
        )
    sign = res["global_sign"]
    lines.append(
        f"global sign reconciling all terms: {sign if sign else 'none'}"
    )
    _emit(ctx, env, lines)


# ---------------------------------------------------------------------------
# verify / serve
# ---------------------------------------------------------------------------


@main.group()
def verify():
    """Verification batteries."""


@verify.command("all")
@click.option("--fast", is_flag=True, help="Trimmed bounds for a quick development pass.")
@click.pass_context
def verify_all(ctx, fast):
    """Run every acceptance check and print a pass/fail table."""
    env = _post(ctx, "/verify/all", {"fast": fast})
    res = env["result"]
    lines = res["table"].splitlines()
    for r in res["results"]:
        if not r["passed"]:
            lines.append(f"--- {r['key']} details ---")
            lines.extend(r["details"].splitlines())
    _emit(ctx, env, lines)
    if not res["all_passed"]:
        sys.exit(1)


@main.command("serve")
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
