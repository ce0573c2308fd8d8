import json

import pytest

from charvar.cli import format_product, main, parse_matrix
from charvar.errors import ParseError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "g1^2 g2")
    assert code == 0 and out.strip() == "t1*t12 - t2"


def test_reduce_copy_json(capsys):
    code, out, _ = run(capsys, "reduce", "g1 g2", "--copy", "2", "--json")
    assert code == 0
    assert json.loads(out) == {"word": "g1 g2", "trace": "t12_2"}


def test_parse_error_points_at_input(capsys):
    code, _, err = run(capsys, "reduce", "g1 g3")
    assert code == 2
    assert "^" in err.splitlines()[-1]


def test_argparse_error_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["davenport", "-m", "x", "-N", "2"])
    assert exc.value.code == 2


def test_davenport(capsys):
    code, out, _ = run(capsys, "davenport", "-m", "3", "-N", "2")
    assert code == 0 and out.strip() == "5"


def test_zerosum_json(capsys):
    code, out, _ = run(capsys, "zerosum", "-m", "2", "-N", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["count"] == 5
    assert [[0, 1], [1, 0], [1, 1]] in data["multisets"]


def test_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("CHARVAR_BUDGET", "2")
    code, _, err = run(capsys, "zerosum", "-m", "2", "-N", "2")
    assert code == 2 and "budget" in err


def test_synth(capsys, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"m": 2, "generators": [
        {"name": "t1", "weight": [1, 0]},
        {"name": "t2", "weight": [0, 1]},
        {"name": "t12", "weight": [1, 1]},
    ]}))
    code, out, _ = run(capsys, "synth", "--spec", str(spec))
    assert code == 0
    assert out.split() == ["t1^2", "t12^2", "t2^2", "t1*t12*t2"]


def test_synth_bad_spec(capsys, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"generators": []}))
    assert run(capsys, "synth", "--spec", str(spec))[0] == 2
    assert run(capsys, "synth", "--spec", str(tmp_path / "missing.json"))[0] == 2


def test_pfaffian(capsys, tmp_path):
    f = tmp_path / "s.json"
    f.write_text("[[0, 1, 2, 3], [-1, 0, 4, 5], [-2, -4, 0, 6], [-3, -5, -6, 0]]")
    code, out, _ = run(capsys, "pfaffian", "--file", str(f))
    assert code == 0 and out.strip() == "8"
    f.write_text("[[0, 1], [2, 0]]")
    assert run(capsys, "pfaffian", "--file", str(f))[0] == 2


def test_phi_and_q4(capsys):
    code, out, _ = run(capsys, "phi", "--a", "1,0;0,1", "--b", "[[1, 0], [0, 1]]", "--json")
    assert code == 0
    assert len(json.loads(out)["phi"]) == 4
    code, out, _ = run(capsys, "q4", "--w1", "g1", "--w2", "g2")
    assert code == 0 and "t12_2" in out


def test_torus(capsys):
    code, out, _ = run(capsys, "torus", "-n", "2", "-k", "0")
    assert code == 0 and out.strip() == "0"


def test_parse_matrix():
    assert parse_matrix("1,2;3,4")[1, 0] == 3
    with pytest.raises(ParseError):
        parse_matrix("[[1, 2]")


def test_format_product():
    assert format_product(("t1", "t1", "t2")) == "t1^2*t2"


def test_verify_suite_output_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "verify", "--suite", "zerosum", "--json", "--out", str(a))[0] == 0
    assert run(capsys, "verify", "--suite", "zerosum", "--json", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert data["suite"] == "zerosum" and data["elapsed"] is None
    assert all(i["verdict"] == "ok" for i in data["items"])


def test_verify_timing(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "torus", "--json", "--timing")
    assert code == 0 and isinstance(json.loads(out)["elapsed"], float)


def test_failed_verdict_exits_one(capsys, monkeypatch):
    from charvar import checks

    monkeypatch.setitem(checks.SUITES, "torus", lambda seed, degree: [checks.Item("forced", False, "1")])
    code, out, _ = run(capsys, "verify", "--suite", "torus")
    assert code == 1 and "FAIL forced" in out


def test_figures(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", "--suite", "completeness", "--degree", "5", "--figures", str(tmp_path))
    assert code == 0
    assert (tmp_path / "completeness_so4.png").stat().st_size > 0
    code, _, _ = run(capsys, "zerosum", "-m", "3", "-N", "2", "--figures", str(tmp_path))
    assert (tmp_path / "zerosum_3_2.png").exists()


def test_words(capsys):
    code, out, _ = run(capsys, "words", "--nu", "2", "--json")
    assert code == 0 and json.loads(out)["words"] == ["e", "g1", "g2"]
