import io
import json

import pytest

from hypoly.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, json.loads(out.getvalue()), out.getvalue()


def test_intersect_envelope():
    code, data, raw = call("intersect", "--alpha", "1,1,3,3,3", "--S", "1,2", "--monomial", "2,0,0,0,0")
    assert code == 0
    assert raw.strip() == '{"ok":true,"result":{"value":-2}}'


def test_shortsets():
    code, data, _ = call("shortsets", "--alpha", "2,1,5,1,2", "--min-card", "2")
    assert code == 0 and data["result"]["count"] == 10
    assert [1, 2, 5] in data["result"]["sets"]


def test_non_generic_exit_2():
    code, data, _ = call("intersect", "--alpha", "1,1,1,1", "--S", "1,2", "--monomial", "1,0,0,0")
    assert code == 2 and data["ok"] is False and data["error"]["code"] == "NON_GENERIC"


@pytest.mark.parametrize(
    "argv,code,err",
    [
        (("intersect", "--alpha", "1,1,3,3,3", "--S", "3,4", "--monomial", "2,0,0,0,0"), 3, "SET_NOT_SHORT"),
        (("intersect", "--alpha", "1,1,3,3,3", "--S", "1,2", "--monomial", "1,0,0,0,0"), 3, "DEGREE_MISMATCH"),
        (("wallcross", "--minus", "2,1,5,1,2", "--plus", "1,10,1,1,1"), 3, "NOT_ADJACENT"),
        (("generic", "--alpha", "1.5,2,3"), 2, "PARSE_ERROR"),
        (("nope",), 2, "PARSE_ERROR"),
        (("generic",), 2, "PARSE_ERROR"),
    ],
)
def test_error_codes(argv, code, err):
    got, data, _ = call(*argv)
    assert got == code and data["error"]["code"] == err


def test_max_n(monkeypatch):
    monkeypatch.setenv("HYPOLY_MAX_N", "4")
    code, data, _ = call("shortsets", "--alpha", "1,1,3,3,3")
    assert code == 2 and data["error"]["code"] == "TOO_LARGE"


def test_json_in(tmp_path):
    f = tmp_path / "req.json"
    f.write_text(json.dumps({"alpha": ["1", "1", "3", "3", "3"], "S": [1, 2, 3], "monomial": [1, 0, 0, 0, 1]}))
    code, data, _ = call("intersect", "--json-in", str(f))
    assert code == 0 and data["result"]["value"] == -1


def test_deterministic_bytes():
    runs = {call("wallcross", "--minus", "2,1,5,1,2", "--plus", "3,3/2,5,1,2")[2] for _ in range(3)}
    assert len(runs) == 1


def test_pretty():
    code, data, raw = call("--pretty", "betti", "--alpha", "10,1,1,2")
    assert code == 0 and "\n" in raw.strip()
    assert data["result"]["morse_sum"] == [1, 4] and data["result"]["polygon"] == [0, 0]


def test_ring_and_verify_ideal():
    _, data, _ = call("ring", "--space", "US", "--alpha", "1,1,3,3,3", "--S", "1,2")
    assert data["result"]["dims"] == [1, 4, 1]
    _, data, _ = call("ring", "--space", "X", "--n", "5")
    assert data["result"]["dims"] == [1, 5, 11]
    _, data, _ = call("verify-ideal", "--alpha", "1,1,3,3,3", "--S", "1,2,3")
    assert data["result"]["consistent"] is True


def test_pairing(tmp_path):
    f = tmp_path / "basis.json"
    half = "1/2"
    basis = [
        {"linear": [half, "0", half, half, half]},
        {"linear": ["-1/2", "0", "-1/2", "0", "0"]},
        {"linear": ["-1/2", "0", "0", "-1/2", "0"]},
        {"linear": ["-1/2", "0", "0", "0", "-1/2"]},
    ]
    f.write_text(json.dumps({"basis": basis}))
    code, data, _ = call("pairing", "--alpha", "1,1,3,3,3", "--S", "1,2", "--basis", str(f))
    assert code == 0 and data["result"]["matrix"] == [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]


def test_phb_critical(tmp_path):
    f = tmp_path / "w.json"
    f.write_text(json.dumps({"beta1": ["0"] * 4, "beta2": ["1/10", "1/5", "3/10", "1/4"]}))
    _, data, _ = call("phb-critical", "--g", "0", "--d", "0", "--weights", str(f))
    assert len(data["result"]["components"]) == 4
    _, data, _ = call("phb-critical", "--g", "0", "--d", "0", "--weights", str(f), "--restrict-H")
    assert all(c["d0"] == 0 for c in data["result"]["components"])


def test_verify_isom(tmp_path):
    import numpy as np

    from hypoly import isom_bridge as B

    pt = B.core_sample((1, 1, 3, 3, 3), 0b11, np.random.default_rng(3))
    f = tmp_path / "pt.json"
    f.write_text(json.dumps({
        "alpha": ["1", "1", "3", "3", "3"],
        "p": [[z.real, z.imag] for z in pt.p.ravel()],
        "q": [[z.real, z.imag] for z in pt.q.ravel()],
    }))
    code, data, _ = call("verify-isom", "--point", str(f))
    assert code == 0 and data["result"]["verified"] is True


def test_all_subcommands_answer():
    for argv in (
        ("generic", "--alpha", "1,1,3,3,3"),
        ("chamber", "--alpha", "1,2,2"),
        ("polygon-nonempty", "--alpha", "10,1,1,2,3"),
        ("fixed", "--alpha", "1,1,3,3,3"),
        ("core", "--alpha", "1,1,3,3,3", "--S", "1,3", "--T", "2,3"),
        ("triangular", "--alpha", "3,3,3,2"),
    ):
        code, data, _ = call(*argv)
        assert code == 0 and data["ok"] is True
