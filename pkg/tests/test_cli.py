import csv
import io
import json
import os
import subprocess
import sys

import pytest

from horseshoe import __version__
from horseshoe.cli import (EXIT_FAIL, EXIT_INPUT, EXIT_OK, InputError, build_config, main, parse_range,
                           resolve_threads, write_atomic)
from horseshoe.certifiers import SWEEP_COLUMNS


@pytest.fixture(scope="module")
def diss_cert(tmp_path_factory):
    p = tmp_path_factory.mktemp("c") / "c.json"
    assert main(["certify", "dissipative", "--a", "3", "--b", "0.8", "--out", str(p)]) == EXIT_OK
    return p


@pytest.fixture(scope="module")
def instance_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("inst")
    assert main(["instances", str(d)]) == EXIT_OK
    return d


# -- certify ----------------------------------------------------------------

def test_certify_dissipative(diss_cert, capsys):
    cert = json.loads(diss_cert.read_text())
    assert cert["verdict"] == "certified"
    assert cert["schema_version"] == 1


def test_certify_non_twist_exp(tmp_path, capsys):
    out = tmp_path / "n.json"
    code = main(["certify", "hamiltonian", "--h", "sin(2*pi*y)", "--w", "exp(x)-1",
                 "--L1", "1", "--L2", "5", "--out", str(out)])
    assert code == EXIT_OK
    assert "certified" in capsys.readouterr().out
    assert json.loads(out.read_text())["verdict"] == "certified"


def test_certify_summary_goes_to_stdout(capsys):
    assert main(["certify", "hamiltonian", "--h", "y", "--w", "x"]) == EXIT_OK
    assert "content hash" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["certify", "dissipative", "--a", "3", "--b", "1.2"],
    ["certify", "dissipative", "--a", "3", "--b", "0.8", "--epsilon", "2"],
    ["certify", "hamiltonian", "--h", "sin(2*pi*y", "--w", "x"],
    ["certify", "hamiltonian", "--L1=-1"],
    ["certify"],
    ["frobnicate"],
])
def test_certify_config_errors(argv, capsys):
    assert main(argv) == EXIT_INPUT


def test_config_file_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"a": "3", "b": "0.8", "colour": "blue"}))
    assert main(["certify", "dissipative", "--config", str(cfg)]) == EXIT_INPUT
    assert "colour" in capsys.readouterr().err


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"a": "3", "b": "1.2"}))
    out = tmp_path / "c.json"
    assert main(["certify", "dissipative", "--config", str(cfg), "--b", "0.8", "--out", str(out)]) == EXIT_OK


def test_failed_certification_exit_one(tmp_path, capsys):
    out = tmp_path / "f.json"
    assert main(["certify", "dissipative", "--a", "0.05", "--b", "0.5", "--out", str(out)]) == EXIT_FAIL
    cert = json.loads(out.read_text())
    assert cert["failure"]["stage"] == "fixed_points"
    assert "fixed_points" in capsys.readouterr().out


def test_build_config_rejects_bad_types():
    with pytest.raises(InputError):
        build_config("dissipative", {"a": "3", "b": "0.8", "N": "three"})
    with pytest.raises(InputError):
        build_config("dissipative", [1, 2])


# -- recheck ----------------------------------------------------------------

def test_recheck_fresh(diss_cert, capsys):
    assert main(["recheck", str(diss_cert)]) == EXIT_OK
    assert capsys.readouterr().out.startswith("ok:")


def test_recheck_corrupted_names_the_record(diss_cert, tmp_path, capsys):
    cert = json.loads(diss_cert.read_text())
    lo, hi = cert["fixed_points"][0]["box"]["x"]
    cert["fixed_points"][0]["box"]["x"] = [lo, float.fromhex(hi).__add__(1e-9).hex()]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(cert))
    assert main(["recheck", str(bad), "--no-hash"]) == EXIT_FAIL
    assert "violated: fixed_points[0]" in capsys.readouterr().out
    assert main(["recheck", str(bad)]) == EXIT_FAIL


def test_recheck_schema_version(diss_cert, tmp_path, capsys):
    cert = json.loads(diss_cert.read_text())
    cert["schema_version"] = 2
    bad = tmp_path / "v2.json"
    bad.write_text(json.dumps(cert))
    assert main(["recheck", str(bad)]) == EXIT_INPUT


def test_recheck_missing_file(tmp_path, capsys):
    assert main(["recheck", str(tmp_path / "nope.json")]) == EXIT_INPUT


# -- sweep ------------------------------------------------------------------

def _read_csv(path):
    return list(csv.DictReader(io.StringIO(path.read_text())))


def test_sweep_empty_grid(tmp_path, capsys):
    grid = tmp_path / "g.json"
    grid.write_text(json.dumps({"pipeline": "dissipative", "cells": []}))
    out = tmp_path / "o.csv"
    assert main(["sweep", "--grid", str(grid), "--out", str(out)]) == EXIT_OK
    assert out.read_text() == ",".join(SWEEP_COLUMNS) + "\n"


def test_sweep_b_grid_single_cell(tmp_path, capsys):
    out = tmp_path / "o.csv"
    assert main(["sweep", "--b-grid", "0.8:0.8:0.1", "--out", str(out)]) == EXIT_OK
    rows = _read_csv(out)
    assert len(rows) == 1 and rows[0]["verdict"] == "certified" and rows[0]["N"] == "3"


def test_sweep_failures_are_data(tmp_path, capsys):
    grid = tmp_path / "g.json"
    grid.write_text(json.dumps({"pipeline": "hamiltonian", "defaults": {"h": "y"},
                                "cells": [{"w": "x"}, {"w": "0*x", "max_iter": 4}]}))
    out = tmp_path / "o.csv"
    assert main(["sweep", "--grid", str(grid), "--out", str(out), "--threads", "2"]) == EXIT_OK
    assert [r["verdict"] for r in _read_csv(out)] == ["certified", "failed"]


@pytest.mark.parametrize("argv", [
    ["sweep", "--b-grid", "0.8:0.2:0"],
    ["sweep", "--b-grid", "a:b:c"],
    ["sweep", "--b-grid", "0.5"],
    ["sweep", "--b-grid", "0.5:1.2:0.7"],
    ["sweep"],
])
def test_sweep_grid_errors(argv, capsys):
    assert main(argv) == EXIT_INPUT


def test_sweep_bad_cell(tmp_path, capsys):
    grid = tmp_path / "g.json"
    grid.write_text(json.dumps({"pipeline": "dissipative", "cells": [{"a": "3", "b": "0.8"}, {"b": "2"}]}))
    assert main(["sweep", "--grid", str(grid)]) == EXIT_INPUT
    assert "cell 1" in capsys.readouterr().err
    grid.write_text(json.dumps({"pipeline": "twisty", "cells": []}))
    assert main(["sweep", "--grid", str(grid)]) == EXIT_INPUT


def test_parse_range_is_decimal_exact():
    assert parse_range("0.2:0.8:0.1") == ["0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8"]
    assert parse_range("1:0:1") == []


# -- iterates ---------------------------------------------------------------

def test_backward_neighbourhoods_cross_at_thirteen(tmp_path, capsys):
    out = tmp_path / "it.svg"
    code = main(["iterates", "dissipative", "--a", "3", "--b", "0.8", "--around-pair", "1e-8",
                 "--backward", "--steps", "13", "--out", str(out)])
    assert code == EXIT_OK
    svg = out.read_text()
    assert svg.count('class="step"') == 13
    assert 'data-crossing-step="13"' in svg
    assert 'id="step-12" class="step" data-step="12" data-crossed="0"' in svg
    assert 'id="step-13" class="step" data-step="13" data-crossed="1"' in svg


def test_zero_steps_is_seed_only(tmp_path, capsys):
    out = tmp_path / "it.csv"
    code = main(["iterates", "hamiltonian", "--h", "y", "--w", "x", "--circle", "0.5",
                 "--steps", "0", "--format", "csv", "--out", str(out)])
    assert code == EXIT_OK
    rows = _read_csv(out)
    assert rows and {r["step"] for r in rows} == {"0"}
    assert all(float(r["y"]) == 0.5 for r in rows)


def test_forward_circles_csv(tmp_path, capsys):
    out = tmp_path / "it.csv"
    code = main(["iterates", "hamiltonian", "--h", "sin(2*pi*y)", "--w", "x*(1-x)", "--circle", "5",
                 "--circle=-5", "--steps", "8", "--max-points", "20000", "--format", "csv", "--out", str(out)])
    assert code == EXIT_OK
    rows = _read_csv(out)
    first = min(int(r["step"]) for r in rows if r["crossed"] == "1")
    assert first <= 11


@pytest.mark.parametrize("seed", [["--box", "1,0,0,1"], ["--around", "0,0,-1"], ["--circle", "x"],
                                  ["--segment", "0,0,1"], ["--around-pair=-1"], []])
def test_bad_seed_specs(seed, capsys):
    assert main(["iterates", "dissipative", "--a", "3", "--b", "0.8", "--steps", "1"] + seed) == EXIT_INPUT


def test_negative_steps(capsys):
    assert main(["iterates", "dissipative", "--a", "3", "--b", "0.8", "--circle", "0", "--steps=-1"]) == EXIT_INPUT


# -- topology ---------------------------------------------------------------

def _run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out.strip()


def test_topology_theta(instance_dir, capsys):
    files = [str(instance_dir / f) for f in ("theta_four_A.json", "theta_four_B.json")]
    assert _run(["topology", "theta"] + files, capsys) == (EXIT_OK, "4")


def test_topology_nu_and_sep(instance_dir, capsys):
    files = [str(instance_dir / f) for f in ("nu_one_A.json", "nu_one_K.json")]
    assert _run(["topology", "nu"] + files, capsys) == (EXIT_OK, "1")
    files = [str(instance_dir / f) for f in ("sep_three_A.json", "sep_three_gamma.json")]
    assert _run(["topology", "sep"] + files, capsys) == (EXIT_OK, "3")
    assert _run(["topology", "sep", "--side", "lower"] + files, capsys) == (EXIT_OK, "0")


def test_topology_hdiff_and_mu(instance_dir, capsys):
    files = [str(instance_dir / f) for f in ("banner_1.json", "banner_2.json")]
    assert _run(["topology", "hdiff", "--json"] + files, capsys) == (
        EXIT_OK, json.dumps({"invariant": "hdiff", "value": 12}))
    files = [str(instance_dir / f) for f in ("banner_2_rect.json", "banner_1_B.json")]
    code, out = _run(["topology", "mu"] + files, capsys)
    assert code == EXIT_OK and int(out) >= 1


def test_topology_nu_disjoint(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(json.dumps([["0", "0"], ["1/10", "0"]]))
    b.write_text(json.dumps([["1/2", "1/2"], ["3/5", "1/2"]]))
    assert main(["topology", "nu", str(a), str(b)]) == EXIT_INPUT
    assert "NoIntersection" in capsys.readouterr().err


@pytest.mark.parametrize("payload", [[[0, 0]], {"nope": 1}, [["a", "b"], [1, 1]]])
def test_topology_malformed(tmp_path, payload, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(json.dumps(payload))
    b.write_text(json.dumps([[0, 0], [1, 1]]))
    assert main(["topology", "theta", str(a), str(b)]) == EXIT_INPUT


def test_topology_wrong_file_count(tmp_path, capsys):
    assert main(["topology", "theta"]) == EXIT_INPUT


def test_topology_lemmas_small_budget(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code = main(["topology", "lemmas", "--budget", "10", "--lemma", "interval", "--lemma", "nu_theta",
                 "--out", str(out)])
    assert code == EXIT_OK
    assert "violations: 0" in capsys.readouterr().out
    assert json.loads(out.read_text())["violations"] == 0
    assert main(["topology", "lemmas", "--lemma", "nonsense"]) == EXIT_INPUT


# -- plumbing ---------------------------------------------------------------

def test_threads_env_fallback(monkeypatch):
    monkeypatch.delenv("HORSESHOE_THREADS", raising=False)
    assert resolve_threads(None) == 1
    monkeypatch.setenv("HORSESHOE_THREADS", "3")
    assert resolve_threads(None) == 3
    assert resolve_threads(2) == 2
    monkeypatch.setenv("HORSESHOE_THREADS", "many")
    with pytest.raises(InputError):
        resolve_threads(None)
    with pytest.raises(InputError):
        resolve_threads(0)


def test_bad_threads_env_is_exit_two(monkeypatch, capsys):
    monkeypatch.setenv("HORSESHOE_THREADS", "zero")
    assert main(["sweep", "--b-grid", "1:0:1"]) == EXIT_INPUT


def test_write_atomic_replaces_and_leaves_no_temp(tmp_path):
    p = tmp_path / "f.txt"
    p.write_text("old")
    write_atomic(str(p), "new")
    assert p.read_text() == "new"
    assert os.listdir(tmp_path) == ["f.txt"]


def test_write_atomic_keeps_old_file_on_failure(tmp_path):
    p = tmp_path / "f.txt"
    p.write_text("old")
    with pytest.raises(TypeError):
        write_atomic(str(p), 42)
    assert p.read_text() == "old"
    assert os.listdir(tmp_path) == ["f.txt"]


def test_version(capsys):
    assert main(["--version"]) == EXIT_OK
    assert __version__ in capsys.readouterr().out


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "horseshoe.cli", "recheck", "/nonexistent.json"],
                       capture_output=True, text=True)
    assert r.returncode == EXIT_INPUT and r.stderr.startswith("error:")
