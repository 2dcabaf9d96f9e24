"""Command-line behavior: outputs, exit codes, JSON shape."""

import json
from fractions import Fraction

import pytest

from flagcert.certificates import builtin_certificate, save_certificate
from flagcert.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def test_enumerate_orders(capsys):
    status, out, _ = run(capsys, "enumerate", "--order", "5")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "582"
    assert len(lines) == 583
    status, out, _ = run(capsys, "enumerate", "--order", "0")
    assert status == 0
    assert out.splitlines() == ["1", "0:"]


def test_enumerate_flags(capsys):
    status, out, _ = run(capsys, "enumerate", "--order", "3", "--type-order", "1")
    assert status == 0
    assert out.splitlines()[0] == "15"


def test_enumerate_json(capsys):
    status, out, _ = run(capsys, "enumerate", "--order", "2", "--format", "json")
    assert status == 0
    doc = json.loads(out)
    assert doc == {"count": 2, "encodings": ["2:0", "2:1"]}


def test_enumerate_bad_order(capsys):
    status, _, err = run(capsys, "enumerate", "--order", "9")
    assert status == 2
    assert "order" in err


def test_verify_builtins_exit_zero(capsys):
    for name in ("p3", "c4", "k12", "k2e1", "p3-order3"):
        status, out, _ = run(capsys, "verify", "--builtin", name)
        assert status == 0, name
        assert "PASS" in out


def test_verify_json_keys(capsys):
    status, out, _ = run(capsys, "verify", "--builtin", "p3", "--format", "json")
    assert status == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    assert doc["bound"] == "2223/5000"
    assert doc["min_slack"] == "73/500000"
    # every rational is rendered p/q
    assert "/" in doc["implied_bound"]


def test_verify_lowered_bound_exits_one(capsys, tmp_path):
    cert = builtin_certificate("p3")
    path = tmp_path / "weak.json"
    save_certificate(cert, path)
    doc = json.loads(path.read_text())
    doc["bound"] = "11/25"  # 0.44, below the certified value
    path.write_text(json.dumps(doc))
    status, out, _ = run(capsys, "verify", str(path))
    assert status == 1
    assert "FAIL" in out
    assert "-" in out.split("min slack:")[1].splitlines()[0]


def test_verify_garbage_file_exits_two(capsys, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    status, _, err = run(capsys, "verify", str(path))
    assert status == 2
    assert err


def test_construct_builtin_targets(capsys):
    for args, expect in [
        (("construct", "--builtin", "c4", "--target", "3:101"), "2/5"),
        (("construct", "--builtin", "c3", "--target", "3:121"), "1/4"),
        (("construct", "--builtin", "2tournaments", "--target", "3:001"), "3/4"),
    ]:
        status, out, _ = run(capsys, *args)
        assert status == 0
        assert out.strip() == expect


def test_construct_k12_decimal(capsys):
    status, out, _ = run(capsys, "construct", "--builtin", "k12",
                         "--target", "3:022")
    assert status == 0
    assert abs(float(out) - 0.34314575050762) < 1e-11


def test_construct_table_lines(capsys):
    status, out, _ = run(capsys, "construct", "--builtin", "c4",
                         "--max-order", "3")
    assert status == 0
    lines = out.splitlines()
    assert "3 3:012 2/5" in lines
    assert "2 2:1 2/3" in lines
    # orders 0..3 with 1 + 1 + 2 + 7 rows
    assert len(lines) == 11


def test_construct_spec_file(capsys, tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({
        "host": "2:0",
        "weights": ["1/2", "1/2"],
        "fill": ["transitive", "transitive"],
    }))
    status, out, _ = run(capsys, "construct", str(path),
                         "--target", "3:001")
    assert status == 0
    assert out.strip() == "3/4"


def test_construct_malformed_spec(capsys, tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"host": "2:0", "weights": ["1/2"],
                                "fill": ["recurse"]}))
    status, _, err = run(capsys, "construct", str(path))
    assert status == 2
    assert err


def test_sdp_export_and_round(capsys, tmp_path):
    prob = tmp_path / "p.dat-s"
    status, out, _ = run(capsys, "sdp", "export", "--target", "3:001",
                         "--order", "3", "--out", str(prob))
    assert status == 0
    assert prob.exists()

    cert = builtin_certificate("k2e1")
    sol = tmp_path / "sol.txt"
    d = cert.matrix.dimension
    with open(sol, "w") as fh:
        for i in range(d):
            fh.write(" ".join(str(float(cert.matrix[i][j])) for j in range(d)) + "\n")
        fh.write("0.75\n")
    out_cert = tmp_path / "cert.json"
    # the entries are multiples of 1/4, so denominator 4 recovers them
    status, out, _ = run(capsys, "sdp", "round", "--problem", str(prob),
                         "--solution", str(sol), "--denominators", "4,100",
                         "--out", str(out_cert))
    assert status == 0
    assert "certified bound 3/4" in out
    status, out, _ = run(capsys, "verify", str(out_cert))
    assert status == 0
    # a grid that misses the true scale still certifies, just coarser:
    # at denominator 10 the entries round from 3/4 to 4/5 of full strength
    status, out, _ = run(capsys, "sdp", "round", "--problem", str(prob),
                         "--solution", str(sol), "--denominators", "10")
    assert status == 0
    assert "certified bound 4/5" in out


def test_sdp_round_indefinite_exits_one(capsys, tmp_path):
    prob = tmp_path / "p.dat-s"
    run(capsys, "sdp", "export", "--target", "3:001", "--order", "3",
        "--out", str(prob))
    sol = tmp_path / "sol.txt"
    sol.write_text("0 2 0\n2 0 0\n0 0 1\n0.9\n")
    status, out, _ = run(capsys, "sdp", "round", "--problem", str(prob),
                         "--solution", str(sol), "--denominators", "10")
    assert status == 1
    assert "not PSD" in out


def test_threads_env_validation(capsys, monkeypatch):
    monkeypatch.setenv("FLAGCERT_THREADS", "0")
    status, _, err = run(capsys, "enumerate", "--order", "2")
    assert status == 2
    assert "thread" in err
    monkeypatch.setenv("FLAGCERT_THREADS", "3")
    status, out, _ = run(capsys, "enumerate", "--order", "2")
    assert status == 0
    assert out.splitlines()[0] == "2"


def test_threads_flag_does_not_change_output(capsys):
    _, base, _ = run(capsys, "verify", "--builtin", "k2e1")
    _, threaded, _ = run(capsys, "verify", "--builtin", "k2e1",
                         "--threads", "4")
    assert base == threaded


def test_usage_error_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--builtin", "nonsense"])
    assert exc.value.code == 2
    capsys.readouterr()
