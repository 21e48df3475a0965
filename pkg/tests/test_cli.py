import json

import pytest

from gelfand_lab.cli import main


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr()


def test_verify_exact(capsys):
    code, out = run(["verify", "exact", "--nmax", "8"], capsys)
    assert code == 0
    assert out.out.count("pass ") == 4 and "FAIL" not in out.out
    assert "# version:" in out.out and '"command": "verify"' in out.out


def test_verify_algebra_json(capsys, tmp_path):
    code, out = run(["verify", "algebra", "--format", "json", "--out", str(tmp_path)], capsys)
    assert code == 0
    report = json.loads(out.out)
    assert report["passed"] and report["run_config"]["extra"]["suite"] == "algebra"
    powers = next(c for c in report["checks"] if c["name"] == "power_top_degree")
    assert "[1, 24, 48]" in powers["detail"]
    assert json.loads((tmp_path / "verify_algebra.json").read_text()) == report


def test_verify_oracle(capsys):
    code, out = run(["verify", "oracle", "--nmax", "5", "--samples", "20000"], capsys)
    assert code == 0
    assert "rsk_pushforward" in out.out


def test_usage_errors(capsys):
    assert main(["verify", "exact", "--nmax", "13"]) == 64
    assert main(["table", "measure", "--n", "41"]) == 64
    assert main(["table", "expectation"]) == 64
    assert main(["sample", "--n", "0", "--trials", "5"]) == 64
    with pytest.raises(SystemExit) as exc:
        main(["sample", "--n", "5", "--measure", "uniform"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 64
    capsys.readouterr()


def test_io_error_names_the_path(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, out = run(["sample", "--n", "10", "--trials", "3", "--out", str(blocker / "sub")], capsys)
    assert code == 74
    assert str(blocker / "sub") in out.err


def test_tables(capsys):
    code, out = run(["table", "involutions"], capsys)
    rows = [line for line in out.out.splitlines() if not line.startswith("#")]
    assert code == 0
    assert [int(r.split(",")[1]) for r in rows[1:]] == [1, 1, 2, 4, 10, 26, 76, 232, 764, 2620, 9496]
    _, out = run(["table", "measure", "--n", "3", "--measure", "gelfand"], capsys)
    rows = [line for line in out.out.splitlines() if not line.startswith("#")]
    assert rows == ["partition,numerator,denominator", "3,1,4", "2 1,1,2", "1 1 1,1,4"]
    _, out = run(["table", "expectation", "--mu", "2", "--nmax", "30"], capsys)
    rows = [line for line in out.out.splitlines() if not line.startswith("#")][1:]
    assert all(r.split(",")[1] == "0" for r in rows)
    _, out = run(["table", "expectation", "--mu", "3", "--nmax", "10"], capsys)
    last = [line for line in out.out.splitlines() if not line.startswith("#")][-1]
    n, num, den, _ = last.split(",")
    assert (int(n), int(num) * 9496) == (10, 720 * 232 * int(den))


def test_sample_outputs(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("GELFAND_LAB_THREADS", "1")
    argv = ["sample", "--measure", "gelfand,plancherel", "--n", "200", "--trials", "120", "--seed", "9", "--k", "2,3"]
    code, _ = run(argv + ["--out", str(tmp_path / "a")], capsys)
    assert code in (0, 1)
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert names == [
        "gelfand_n200_seed9.csv", "gelfand_n200_seed9.svg",
        "plancherel_n200_seed9.csv", "plancherel_n200_seed9.svg", "summary_n200_seed9.json",
    ]
    summary = json.loads((tmp_path / "a" / "summary_n200_seed9.json").read_text())
    assert summary["seed"] == 9 and summary["threads"] == 1 and summary["version"]
    assert summary["run_config"]["measure"] == ["gelfand", "plancherel"]
    assert [r["observable"] for r in summary["variance_ratio"]] == ["X2", "X3"]
    g = summary["measures"]["gelfand"]
    assert {"means", "variances", "covariances", "std_errors", "clt", "finite_n_exact"} <= set(g)
    csv_text = (tmp_path / "a" / "gelfand_n200_seed9.csv").read_text()
    assert csv_text.startswith("# run_config:")
    assert "trial,n,measure,X2,X3,supdist" in csv_text
    svg = (tmp_path / "a" / "gelfand_n200_seed9.svg").read_text()
    assert svg.startswith("<svg") and svg.count("<polyline") == 3 and "run_config" in svg


def test_sample_is_reproducible_across_threads(capsys, tmp_path):
    base = ["sample", "--measure", "gelfand", "--n", "80", "--trials", "130", "--seed", "4", "--format", "csv"]
    run(base + ["--out", str(tmp_path / "one"), "--threads", "1"], capsys)
    run(base + ["--out", str(tmp_path / "one"), "--threads", "1"], capsys)
    first = (tmp_path / "one" / "gelfand_n80_seed4.csv").read_bytes()
    run(base + ["--out", str(tmp_path / "one"), "--threads", "2"], capsys)
    assert (tmp_path / "one" / "gelfand_n80_seed4.csv").read_bytes() == first


def test_gate_failure_exit_code(capsys, tmp_path):
    # the k = 5 variance at n = 150 sits well above its limit, so the gate trips
    code, out = run(
        ["sample", "--n", "150", "--trials", "2000", "--seed", "1", "--k", "5", "--format", "json", "--out", str(tmp_path)],
        capsys,
    )
    assert code == 1
    assert "FAIL" in out.out
