"""Command-line behavior: output, formats, exit codes, determinism."""

import json

import pytest

from eqcohom import cli, verify


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def cone_dim(p, q):
    return 1 if (p >= 0 and q >= p) or (p <= 0 and q <= p - 2) else 0


def test_point_chart_csv_matches_cones(capsys):
    code, out, _ = run(["point", "chart", "--window", "-2:2,-4:3", "--format", "csv"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    ps = [int(x) for x in lines[0].split(",")[1:]]
    assert ps == [-2, -1, 0, 1, 2]
    seen = {}
    for row in lines[1:]:
        cells = row.split(",")
        q = int(cells[0])
        for p, value in zip(ps, cells[1:]):
            seen[(p, q)] = int(value)
    assert len(seen) == 5 * 8
    for (p, q), value in seen.items():
        assert value == cone_dim(p, q), (p, q)


def test_point_chart_formats_agree(capsys):
    code, csv_out, _ = run(["point", "chart", "--format", "csv"], capsys)
    assert code == 0
    code, json_out, _ = run(["point", "chart", "--format", "json"], capsys)
    assert code == 0
    code, ascii_out, _ = run(["point", "chart"], capsys)
    assert code == 0

    lines = csv_out.strip().split("\n")
    ps = [int(x) for x in lines[0].split(",")[1:]]
    from_csv = {}
    for row in lines[1:]:
        cells = row.split(",")
        for p, value in zip(ps, cells[1:]):
            from_csv[(p, int(cells[0]))] = int(value)

    data = json.loads(json_out)
    from_json = {(e["p"], e["q"]): e["dim"] for e in data["entries"]}
    assert from_csv == from_json

    grid_rows = [line for line in ascii_out.split("\n") if "|" in line]
    from_ascii = {}
    for row in grid_rows:
        label, _, cells = row.partition("|")
        q = int(label)
        for p, cell in zip(ps, cells.split()):
            from_ascii[(p, q)] = 0 if cell == "." else int(cell)
    assert from_ascii == from_json


def test_so_mul_pinned(capsys):
    code, out, _ = run(["so", "5", "mul", "B2*B2"], capsys)
    assert code == 0
    assert out.strip() == "B[4]"


def test_so_roundtrip_through_cli(capsys):
    code, out, _ = run(["so", "4", "mul", "B1*B1*B1"], capsys)
    assert code == 0
    code2, out2, _ = run(["so", "4", "mul", out.strip()], capsys)
    assert code2 == 0
    assert out2 == out


def test_so_basis_and_betti(capsys):
    code, out, _ = run(["so", "4", "basis"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 8
    assert lines[0].startswith("B[0]")
    code, out, _ = run(["so", "4", "betti", "--format", "json", "--window", "0:6,0:4"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["space"] == "so:4"
    dims = {(e["p"], e["q"]): e["dim"] for e in data["entries"]}
    assert dims[(3, 2)] == 3


def test_so_omega(capsys):
    code, out, _ = run(["so", "4", "omega", "B1"], capsys)
    assert code == 0
    assert out.strip() == "a1 + a2 + a3"
    code, out, _ = run(["so", "4", "omega", "B3"], capsys)
    assert out.strip() == "a3*b3"


def test_so_check_presentation(capsys):
    code, out, _ = run(["so", "5", "check-presentation"], capsys)
    assert code == 0
    assert "all relations hold" in out
    code, out, _ = run(["so", "6", "check-presentation"], capsys)
    assert code == 0
    assert "B3^2" in out and "r*B[5]" in out and "DIFFERS" in out


def test_rp_commands(capsys):
    code, out, _ = run(["rp", "3", "mul", "a3*a3"], capsys)
    assert code == 0
    assert out.strip() == "r*a3 + t*b3"
    code, out, _ = run(["rp", "1", "present"], capsys)
    assert code == 0
    assert "a^2 = r*a" in out
    code, out, _ = run(["rp", "4", "present"], capsys)
    assert "b^3 = 0" in out and "a*b^2 = 0" in out
    code, out, _ = run(["rp", "inf", "basis", "--limit", "4"], capsys)
    assert code == 0
    assert out.strip().split("\n")[:-1] == [
        "1  (0,0)",
        "a  (1,1)",
        "b  (2,1)",
        "a*b  (3,2)",
    ]
    code, out, _ = run(["rp", "3", "basis"], capsys)
    assert len(out.strip().split("\n")) == 4


def test_stiefel_commands(capsys):
    code, out, _ = run(["stiefel", "5", "mul", "[3]*[4]"], capsys)
    assert code == 0
    assert out.strip() == "[3,4]"
    code, out, _ = run(["stiefel", "5", "basis"], capsys)
    assert code == 0
    assert len(out.strip().split("\n")) == 4


def test_psi_command(capsys):
    code, out, _ = run(["psi", "so:4", "B1*B1"], capsys)
    assert code == 0
    assert out.strip() == "B[2]"
    code, out, _ = run(["psi", "so:4", "r*B3"], capsys)
    assert out.strip() == "0"
    code, out, _ = run(["psi", "pt", "t^3"], capsys)
    assert out.strip() == "1"


def test_parse_errors_exit_2(capsys):
    code, out, err = run(["so", "5", "mul", "B2**B3"], capsys)
    assert code == 2
    assert not out
    assert "offset" in err
    code, _, err = run(["so", "5", "mul", "B9"], capsys)
    assert code == 2
    assert "B9" in err and "so:5" in err
    code, _, err = run(["psi", "nowhere:3", "B1"], capsys)
    assert code == 2
    code, _, err = run(["point", "chart", "--window", "2:1,0:0"], capsys)
    assert code == 2
    code, _, err = run(["so", "5", "mul"], capsys)
    assert code == 2


def test_usage_errors_exit_2(capsys):
    assert run(["unknown-command"], capsys)[0] == 2
    assert run([], capsys)[0] == 2
    assert run(["so", "notanumber", "basis"], capsys)[0] == 2


def test_verify_small_and_deterministic(capsys):
    code, first, _ = run(["verify", "--max-p", "3", "--suite", "additive"], capsys)
    assert code == 0
    code, second, _ = run(["verify", "--max-p", "3", "--suite", "additive"], capsys)
    assert first == second
    assert "checks:" in first


def test_verify_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("EQCOHOM_MAX_P", "3")
    code, out, _ = run(["verify", "--suite", "additive"], capsys)
    assert code == 0
    assert "p=2..3" in out
    monkeypatch.setenv("EQCOHOM_MAX_P", "not-a-number")
    code, _, err = run(["verify", "--suite", "additive"], capsys)
    assert code == 2


def test_verify_failure_exits_1(capsys, monkeypatch):
    def fake(suites, max_p=None):
        return [verify.CheckResult("ring", "synthetic", "FAIL", "synthetic failure")]

    monkeypatch.setattr(verify, "run_suites", fake)
    code, out, _ = run(["verify", "--suite", "ring"], capsys)
    assert code == 1
    assert "FAIL" in out


def test_verify_rejects_bad_max_p(capsys):
    code, _, err = run(["verify", "--max-p", "1"], capsys)
    assert code == 2
