from __future__ import annotations

import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from hermspread import cli
from hermspread.entropic import onicescu_heller_length
from hermspread.exactreal import parse
from hermspread.quadrature import PrecisionNotMet


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    return rows


def test_lengths_carry_exact_heller_lengths(capsys):
    code, out, _ = run(capsys, "lengths", "--n-max", "2", "--q", "2")
    assert code == 0
    rows = table(out)
    exact = [r["renyi_length_q2_exact[x]"] for r in rows]
    assert exact == ["1/1 * sqrt(2) * pi^(1/2)", "4/3 * sqrt(2) * pi^(1/2)", "64/41 * sqrt(2) * pi^(1/2)"]
    for n, s in enumerate(exact):
        assert parse(s) == onicescu_heller_length(n)
    assert [r["k_opt"] for r in rows] == ["2", "6", "8"]
    assert rows[0]["kl_near_cap"] == "false"


def test_every_exact_column_reparses_next_to_its_float(capsys):
    _, out, _ = run(capsys, "lengths", "--n-max", "3", "--q", "2,3", "--format", "json")
    rec = cli.OutputRecord.from_json(out)
    names = [c.name for c in rec.columns]
    for i, c in enumerate(rec.columns):
        if c.kind == "exact":
            assert names[i - 1] + "_exact" == c.name
            for row in rec.rows:
                assert float(parse(row[i]).to_float(64)) == pytest.approx(float(row[i - 1]), rel=1e-15)


def test_json_round_trip(capsys):
    _, out, _ = run(capsys, "bounds", "--n-max", "4", "--format", "json")
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["command"] == "bounds"
    rec = cli.OutputRecord.from_json(out)
    assert rec.to_json() == out
    assert rec.rows[0][:2] == (0, 2)
    with pytest.raises(ValueError):
        cli.OutputRecord.from_json(out.replace('"schema":1', '"schema":9'))


def test_byte_identical_reruns(capsys, tmp_path):
    argv = ["lengths", "--n-max", "4", "--q", "2,3", "--digits", "20"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    path = tmp_path / "t.csv"
    assert run(capsys, *argv, "--out", str(path))[0] == 0
    assert path.read_text(encoding="utf-8") == a


def test_usage_errors_exit_one(capsys):
    for argv in (
        ["lengths"],
        ["lengths", "--n-max", "200"],
        ["lengths", "--n-max", "3", "--q", "1"],
        ["lengths", "--n-max", "3", "--q", "9"],
        ["oscillator", "--n", "2", "--lam", "-1"],
        ["asymptotics", "--q", "0"],
        ["fits", "--range", "5:6"],
        ["lengths", "--n-max", "2", "--precision-bits", "20"],
        ["nonsense"],
    ):
        try:
            code = cli.main(argv)
        except SystemExit as exc:
            code = exc.code
        assert code == cli.EXIT_USAGE, argv
    capsys.readouterr()


def test_caps_can_be_lifted(capsys):
    code, out, _ = run(capsys, "entropic", "--n-max", "1", "--q", "9", "--no-cap")
    assert code == 0 and len(table(out)) == 2


def test_precision_failure_exits_two(capsys, monkeypatch):
    def boom(*a, **k):
        raise PrecisionNotMet("panel did not converge")

    monkeypatch.setattr(cli, "shannon_entropy", boom)
    code, _, err = run(capsys, "lengths", "--n-max", "1")
    assert code == cli.EXIT_PRECISION
    assert "precision failure" in err


def test_bounds_table_and_cap_warning(capsys):
    code, out, err = run(capsys, "bounds", "--n-max", "12", "--digits", "3")
    assert code == 0 and err == ""
    rows = table(out)
    assert [int(r["k_opt"]) for r in rows] == [2, 6, 8, 10, 12, 14, 16, 16, 18, 20, 22, 22, 24]
    assert rows[12]["kl_bound[x]"] == "11.1"
    code, out, err = run(capsys, "bounds", "--n-max", "12", "--k-max", "26")
    assert code == 0 and "warning" in err
    assert table(out)[12]["near_cap"] == "true"


def test_moments_and_entropic(capsys):
    _, out, _ = run(capsys, "moments", "--n", "1", "--k-max", "4")
    rows = table(out)
    assert rows[-1]["k"] == "4"
    assert any(v == "15/4" for v in rows[-1].values())
    _, out, _ = run(capsys, "entropic", "--n-max", "1", "--q", "2")
    rows = table(out)
    assert any(v == "3/8 * sqrt(2) * pi^(-1/2)" for v in rows[1].values())


def test_oscillator_scaling(capsys):
    _, out, _ = run(capsys, "oscillator", "--n", "0", "--lam", "4", "--q", "2")
    rows = {r["quantity"]: r for r in table(out)}
    assert rows["std_dev"]["oscillator_exact"] == "1/4 * sqrt(2) * pi^(0/2)"
    assert rows["fisher_information"]["oscillator_exact"] == "8"
    assert parse(rows["W_q2"]["oscillator_exact"]) == parse("1/1 * sqrt(2) * pi^(-1/2)")
    _, out, _ = run(capsys, "oscillator", "--n", "3", "--lam", "1")
    for r in table(out):
        assert r["hermite"] == r["oscillator"]


def test_asymptotics_q_one_is_exact(capsys):
    _, out, _ = run(capsys, "asymptotics", "--n", "5,30", "--q", "1", "--digits", "12")
    rows = table(out)
    assert [r["W_q_ratio"] for r in rows] == ["1.00000000000"] * 2
    assert abs(float(rows[1]["Z_4_ratio"]) - 1) < 1e-3
    _, out, _ = run(capsys, "asymptotics", "--n", "0", "--q", "1/2", "--precision-bits", "64")
    assert table(out)[0]["Z_4[1]"] == ""


def test_fits_subrange(capsys):
    _, out, _ = run(capsys, "fits", "--range", "0:20", "--precision-bits", "64")
    rows = {r["fit"]: r for r in table(out)}
    assert set(rows) == {"shannon", "heller"}
    assert rows["heller"]["n_hi"] == "20"
    assert 0.999 < float(rows["shannon"]["correlation"]) <= 1
    _, out, _ = run(capsys, "fits", "--range", "0:4", "--points", "--precision-bits", "64")
    assert [r["n"] for r in table(out) if r["fit"] == "heller"] == ["0", "1", "2", "3", "4"]


def test_threads_do_not_change_output(capsys):
    argv = ["lengths", "--n-max", "3", "--q", "2", "--precision-bits", "64"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv, "--threads", "2")
    assert a == b


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "hermspread.cli", "moments", "--n", "0", "--k-max", "2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    rows = table(proc.stdout)
    assert Fraction(rows[-1]["moment_exact[x^k]"]) == Fraction(1, 2)
