"""End-to-end command line behaviour: exit codes, outputs, resume."""

import csv
import json
from importlib import resources
from pathlib import Path

import pytest

import nagao
from nagao.cli import main


@pytest.fixture
def family_file(tmp_path):
    def _write(name: str) -> str:
        text = resources.files(nagao).joinpath(f"families/{name}.fam").read_text()
        path = tmp_path / f"{name}.fam"
        path.write_text(text)
        return str(path)

    return _write


def test_run_happy_path(tmp_path, family_file, capsys):
    out = tmp_path / "out"
    rc = main([
        "run", "--family", family_file("shioda_g1"),
        "--tmax", "60", "--out", str(out), "--checkpoints", "30,60",
    ])
    assert rc == 0
    assert (out / "ledger.csv").exists()
    assert (out / "series.csv").exists()
    summary = json.loads((out / "summary.json").read_text())
    assert summary["family"] == "shioda_g1" and summary["T"] == 60
    printed = capsys.readouterr().out
    assert "shioda_g1" in printed and "nearest integer" in printed


def test_series_writes_checkpoint_rows(tmp_path, family_file):
    out = tmp_path / "out"
    rc = main([
        "series", "--family", family_file("constant_E"),
        "--tmax", "100", "--out", str(out), "--checkpoints", "20,50,100",
    ])
    assert rc == 0
    with (out / "series.csv").open() as fh:
        rows = list(csv.DictReader(fh))
    assert [int(r["T"]) for r in rows] == [20, 50, 100]
    for r in rows:
        float(r["S_T"])  # parseable floats


def test_residue_output_and_domain_error(tmp_path, family_file):
    out = tmp_path / "out"
    fam = family_file("constant_E")
    rc = main([
        "residue", "--family", fam, "--tmax", "100",
        "--out", str(out), "--s-list", "1.25,1.125",
    ])
    assert rc == 0
    with (out / "residue.csv").open() as fh:
        rows = list(csv.DictReader(fh))
    assert [float(r["s"]) for r in rows] == [1.25, 1.125]
    assert all(int(r["T"]) == 100 for r in rows)
    # s <= 1 is rejected before any computation
    rc = main([
        "residue", "--family", fam, "--tmax", "100",
        "--out", str(out), "--s-list", "0.9",
    ])
    assert rc == 1


def test_verify_prints_one_line_per_check(family_file, capsys):
    rc = main(["verify", "--family", family_file("shioda_g1")])
    assert rc == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l.strip()]
    assert len(lines) == 3
    assert all(line.endswith("PASS") for line in lines)


def test_missing_family_file_exits_1(tmp_path, capsys):
    rc = main(["run", "--family", str(tmp_path / "nope.fam"), "--tmax", "50"])
    assert rc == 1
    assert "cannot read" in capsys.readouterr().err


def test_malformed_family_file_exits_1(tmp_path, capsys):
    bad = tmp_path / "bad.fam"
    bad.write_text('family "x"\nkind hyperelliptic\npoly x^^2\n')
    rc = main(["run", "--family", str(bad), "--tmax", "50"])
    assert rc == 1
    assert "error" in capsys.readouterr().err


def test_invalid_family_semantics_exits_1(tmp_path, capsys):
    bad = tmp_path / "bad.fam"
    bad.write_text(
        'family "x"\nkind hyperelliptic\npoly x^2*(x-t)\n'
        "genus 1\ntrace none\ninfinity trace_zero\n"
    )
    rc = main(["run", "--family", str(bad), "--tmax", "50"])
    assert rc == 1


def test_bad_checkpoints_exit_1(tmp_path, family_file):
    rc = main([
        "run", "--family", family_file("shioda_g1"),
        "--tmax", "50", "--out", str(tmp_path / "o"), "--checkpoints", "40,20",
    ])
    assert rc == 1


def test_resume_against_foreign_ledger_exits_2(tmp_path, family_file, capsys):
    out = tmp_path / "out"
    assert main([
        "run", "--family", family_file("shioda_g1"),
        "--tmax", "50", "--out", str(out),
    ]) == 0
    rc = main([
        "run", "--family", family_file("shioda_g2"),
        "--tmax", "50", "--out", str(out), "--resume",
    ])
    assert rc == 2
    assert "hash" in capsys.readouterr().err


def test_resume_series_bitwise_identical(tmp_path, family_file):
    fam = family_file("shioda_g1")
    cps = "50,150,300"
    fresh = tmp_path / "fresh"
    assert main([
        "series", "--family", fam, "--tmax", "300",
        "--out", str(fresh), "--checkpoints", cps,
    ]) == 0

    resumed = tmp_path / "resumed"
    assert main([
        "series", "--family", fam, "--tmax", "120",
        "--out", str(resumed), "--checkpoints", "50,120",
    ]) == 0
    assert main([
        "series", "--family", fam, "--tmax", "300", "--resume",
        "--out", str(resumed), "--checkpoints", cps, "--jobs", "2",
    ]) == 0

    assert (resumed / "series.csv").read_bytes() == (fresh / "series.csv").read_bytes()
