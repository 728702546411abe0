import json

import pytest

from ebcodes.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_field(capsys):
    code, out, _ = _run(capsys, "field", "--q", "256")
    doc = json.loads(out)
    assert code == 0
    assert doc["field"] == {"m": 8, "modulus": 0x11B}
    assert doc["primitive"] == 3 and doc["schema_version"] == 1


def test_build_hyperoval_and_roundtrip(capsys, tmp_path):
    path = tmp_path / "h.json"
    code, _, _ = _run(capsys, "build", "hyperoval", "--q", "16", "--out", str(path))
    assert code == 0
    built = json.loads(path.read_text())
    assert built["code"]["n"] == 18 and built["code"]["k"] == 3
    assert len(built["points"]["points"]) == 18
    code, out, _ = _run(capsys, "analyze", "--in", str(path))
    assert code == 0
    assert json.loads(out)["parameters"] == built["parameters"] == {"n": 18, "k": 3, "d": 16}
    code, out, _ = _run(capsys, "geometry-check", "--in", str(path))
    geo = json.loads(out)
    assert geo["geometry"]["is_hyperoval"] and geo["lemma1"]["ok"]


def test_analyze_ovoid_code(capsys, tmp_path):
    path = tmp_path / "o.json"
    _run(capsys, "build", "ovoid", "--q", "4", "--out", str(path))
    code, out, _ = _run(capsys, "analyze", "--in", str(path))
    prof = json.loads(out)["profile"]
    assert prof["histogram"] == {"0": 1, "12": 204, "16": 51}
    assert prof["flags"] == {"mds": False, "projective": True, "two_weight": True}


def test_geometry_check_point_set(capsys, tmp_path):
    path = tmp_path / "o.json"
    _run(capsys, "build", "ovoid", "--q", "4", "--out", str(path))
    pts = tmp_path / "p.json"
    pts.write_text(json.dumps(json.loads(path.read_text())["points"]))
    code, out, _ = _run(capsys, "geometry-check", "--in", str(pts), "--format", "table")
    assert code == 0 and "is_ovoid" in out


def test_verify_t3_passes(capsys):
    code, out, err = _run(capsys, "verify", "t3", "--q", "16", "--t", "4")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "pass" and doc["claim_id"] == "T3"
    assert "T3: pass" in err


def test_output_is_byte_identical(capsys):
    a = _run(capsys, "verify", "t1", "--q", "8")[1]
    b = _run(capsys, "verify", "t1", "--q", "8")[1]
    assert a == b
    a = _run(capsys, "build", "denniston", "--q", "16", "--t", "4")[1]
    b = _run(capsys, "build", "denniston", "--q", "16", "--t", "4")[1]
    assert a == b


def test_table_format(capsys):
    code, out, _ = _run(capsys, "verify", "t5", "--q", "4", "--format", "table")
    assert code == 0
    assert "verdict    PASS" in out
    assert "[17,4,12]" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["frobnicate"],
        ["field", "--q", "3"],
        ["field", "--q", "512"],
        ["verify", "t4", "--q", "16"],
        ["verify", "t3", "--q", "16"],
        ["verify", "t5", "--q", "16"],
        ["build", "denniston", "--q", "16", "--t", "8"],
        ["analyze"],
        ["analyze", "--in", "/nonexistent/file.json"],
        ["field", "--q", "4", "--bogus"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 2
    assert err.strip()


def test_malformed_json_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _, err = _run(capsys, "analyze", "--in", str(p))
    assert code == 2 and "not valid JSON" in err
    p.write_text(json.dumps({"gen": 3}))
    code, _, err = _run(capsys, "analyze", "--in", str(p))
    assert code == 2 and "malformed code JSON" in err


def test_budget_flag_and_env(capsys, tmp_path, monkeypatch):
    path = tmp_path / "h.json"
    _run(capsys, "build", "hyperoval", "--q", "16", "--out", str(path))
    code, _, err = _run(capsys, "analyze", "--in", str(path), "--budget", "100")
    assert code == 2 and "budget" in err
    monkeypatch.setenv("EBCODES_BUDGET", "100")
    code, _, err = _run(capsys, "analyze", "--in", str(path))
    assert code == 2
    code, _, _ = _run(capsys, "analyze", "--in", str(path), "--budget", "5000")
    assert code == 0


def test_failing_verification_exits_1(capsys, monkeypatch):
    from ebcodes import verify as vf

    def broken(q, budget, jobs):
        r = vf.VerificationReport("T1", {"q": q})
        r.check("forced failure", False)
        return r

    monkeypatch.setitem(vf.CLAIMS, "t1", lambda q, t, budget, jobs: broken(q, budget, jobs))
    code, out, _ = _run(capsys, "verify", "t1", "--q", "4")
    assert code == 1 and json.loads(out)["failures"] == ["forced failure"]
