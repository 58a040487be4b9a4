"""HTTP surface: every endpoint responds with a well-formed envelope."""

import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from hallsym.service import app
from hallsym import serialize as ser
from hallsym import symfunc as sf
from hallsym import hall_jordan as hj


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def _check_envelope(data, vertices=1):
    assert set(data) == {"command", "convention", "warnings", "result"}
    assert data["convention"]["vertices"] == vertices
    assert data["convention"]["substitution"] == f"t -> q^-{vertices}"


def test_symf_c_in_p(client):
    r = client.post("/symf/c-in-p", json={"n": 2})
    assert r.status_code == 200
    data = r.json()
    _check_envelope(data)
    assert ser.symfunc_from_json(data["result"]["element"]) == sf.c_in_p(2)


def test_symf_p_from_c_routes_agree(client):
    a = client.post("/symf/p-from-c", json={"n": 4, "via": "closed"}).json()
    b = client.post("/symf/p-from-c", json={"n": 4, "via": "compositions"}).json()
    assert a["result"]["element"] == b["result"]["element"]
    # "partitions" is an accepted alias for the closed route
    c = client.post("/symf/p-from-c", json={"n": 4, "via": "partitions"}).json()
    assert c["result"]["element"] == a["result"]["element"]


def test_symf_hl_p(client):
    r = client.post("/symf/hl-p", json={"partition": "2,1"})
    assert r.status_code == 200
    got = ser.symfunc_from_json(r.json()["result"]["element"])
    assert got == sf.hall_littlewood_P((2, 1))


def test_symf_macdonald_is_power_sum(client):
    r = client.post("/symf/macdonald", json={"n": 3}).json()
    assert ser.symfunc_from_json(r["result"]["element"]) == sf.SymFunc.p(3)


def test_hall_mul(client):
    r = client.post("/hall/mul", json={"a": "1", "b": "2"}).json()
    assert r["result"]["text"] == "[3] + (q)[2,1]"


def test_hall_coproduct(client):
    r = client.post("/hall/coproduct", json={"partition": "2"}).json()
    terms = {(t["left"], t["right"]): t["coefficient"] for t in r["result"]["terms"]}
    assert terms[("1", "1")] == "(q - 1)/(q)"


def test_hall_polynomial(client):
    r = client.post("/hall/polynomial", json={"mu": "1", "nu": "1", "lam": "1,1"}).json()
    assert r["result"]["coefficient"] == "q + 1"


def test_hall_primitive_with_warning(client):
    r2 = client.post("/hall/primitive", json={"n": 2, "method": "center"}).json()
    assert r2["result"]["text"] == "[2] + (1 - q)[1,1]"
    assert r2["warnings"] == []
    r3 = client.post("/hall/primitive", json={"n": 3, "method": "center"}).json()
    assert len(r3["warnings"]) == 1
    assert ser.hallelem_from_json(r3["result"]["element"]) == hj.primitive_center(3)


def test_hall_verify_primitive(client):
    r = client.post("/hall/verify-primitive", json={"n": 2}).json()
    assert r["result"]["primitive"] is True
    assert r["result"]["methods_agree"] is True


def test_hall_identity(client):
    r = client.post("/hall/identity", json={"n": 2, "partition": "1,1"}).json()
    assert r["result"]["holds"] is True
    assert r["result"]["lhs"] == "1 - q"


def test_fq_enumerate(client):
    r = client.post("/fq/enumerate", json={"m": 2, "deg": 1, "q": 2}).json()
    _check_envelope(r, vertices=2)
    assert r["result"]["count"] == 3
    r = client.post("/fq/enumerate", json={"m": 1, "dim": "4", "q": 2}).json()
    assert r["result"]["count"] == 5


def test_fq_enumerate_needs_exactly_one_shape(client):
    r = client.post("/fq/enumerate", json={"m": 2, "q": 2})
    assert r.status_code == 400
    r = client.post("/fq/enumerate", json={"m": 2, "q": 2, "deg": 1, "dim": "1,1"})
    assert r.status_code == 400


def test_fq_hallnum(client):
    r = client.post(
        "/fq/hallnum",
        json={"m": 1, "q": 2, "R": "[0;1]+[0;1]", "sub": "[0;1]", "quot": "[0;1]"},
    ).json()
    assert r["result"]["count"] == 3


def test_fq_z_and_warning(client):
    r = client.post("/fq/z", json={"m": 2, "r": 1, "q": 2}).json()
    _check_envelope(r, vertices=2)
    assert len(r["warnings"]) == 1
    assert "(1/4)" in r["result"]["text"]


def test_fq_verify_central(client):
    r = client.post(
        "/fq/verify-central", json={"m": 2, "r": 1, "q": 2, "dim_cap": 3}
    ).json()
    assert r["result"]["central"] is True
    assert r["result"]["failures"] == []


def test_fq_verify_primitive(client):
    r = client.post("/fq/verify-primitive", json={"m": 2, "n": 1, "q": 2}).json()
    assert r["result"]["primitive"] is True


def test_fq_crosscheck_small(client):
    r = client.post("/fq/crosscheck", json={"max_weight": 3, "qs": [2]}).json()
    assert r["result"]["all_equal"] is True
    assert r["result"]["checked"] > 0


def test_fq_compare_display(client):
    r = client.post("/fq/compare-display", json={"n": 1, "q": 2}).json()
    rows = {row["class"]: row for row in r["result"]["rows"]}
    assert rows["[0;1]+[1;1]"]["equal"] is True
    assert rows["[0;2]"]["published"] == "0"
    assert r["result"]["global_sign"] is None


def test_bad_partition_is_400(client):
    r = client.post("/hall/mul", json={"a": "1,2", "b": "1"})
    assert r.status_code == 400


def test_unsupported_prime_is_400(client):
    r = client.post("/fq/z", json={"m": 1, "r": 1, "q": 7})
    assert r.status_code == 400


def test_determinism(client):
    a = client.post("/hall/primitive", json={"n": 4, "method": "center"}).content
    b = client.post("/hall/primitive", json={"n": 4, "method": "center"}).content
    assert a == b


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}
