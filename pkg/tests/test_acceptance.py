"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Tolerances are pinned here:
  ITER_TOL        iteration counts may differ from the tables by this much
  NL2_MAX         bound on the vertical displacement for the Hamiltonian rows
  FP_WIDTH_MAX    width of the certified fixed-point boxes
  FUZZ_SECONDS    runtime budget of the interval soundness suite
  LEMMA_SECONDS   runtime budget of the lemma suite
"""
import copy
import json
import math
import time

import pytest

from horseshoe.certifiers import certify_dissipative, certify_hamiltonian, dpn_length
from horseshoe.cli import main
from horseshoe.dynamics import certify_fixed_point, rotational_difference
from horseshoe.interval import IBox
from horseshoe.maps import Dissipative
from horseshoe.recheck import SchemaError, recheck
from horseshoe.recipes import DSF, NON_TWIST, TWIST, cells
from horseshoe.topology.lemmas import lemma_suite

import mutations
import oracles

ITER_TOL = 3
NL2_MAX = 1.01
FP_WIDTH_MAX = 1e-6
FUZZ_SECONDS = 60.0
LEMMA_SECONDS = 600.0
CELL_SECONDS = 300.0
ROW_SECONDS = 120.0


def report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")


def hexpair(p):
    return tuple(float.fromhex(v) for v in p)


@pytest.fixture(scope="module")
def dsf_certs():
    out = []
    for row, cfg in zip(DSF, cells(DSF)):
        t = time.perf_counter()
        out.append((row, certify_dissipative(**cfg), time.perf_counter() - t))
    return out


@pytest.fixture(scope="module")
def ham_certs():
    out = []
    for row, cfg in zip(TWIST + NON_TWIST, cells(TWIST + NON_TWIST)):
        t = time.perf_counter()
        out.append((row, certify_hamiltonian(**cfg), time.perf_counter() - t))
    return out


def test_criterion_1_dsf_table(dsf_certs, capsys):
    bad = []
    for row, cert, dt in dsf_certs:
        it = cert.get("records", {}).get("max_backward_iterations")
        ok = (cert["verdict"] == "certified" and cert["N"] == row["expect_N"]
              and it is not None and abs(it - row["expect_iter"]) <= ITER_TOL and dt <= CELL_SECONDS)
        if not ok:
            bad.append(f"b={row['b']} verdict={cert['verdict']} N={cert.get('N')} it={it} ({dt:.1f}s)")
    its = [c["records"].get("max_backward_iterations") for _, c, _ in dsf_certs]
    report(capsys, 1, not bad, f"7 D.S.F. cells, iterations {its}" + (f"; bad: {bad}" if bad else ""))
    assert not bad


def test_criterion_2_hamiltonian_tables(ham_certs, capsys):
    bad = []
    nl2 = []
    for row, cert, dt in ham_certs:
        name = f"h={row['h']} w={row['w']}"
        if cert["verdict"] != "certified":
            bad.append(f"{name}: {cert['verdict']}")
            continue
        bound = hexpair(cert["NL2_bound"])[1]
        nl2.append(round(bound, 3))
        it = cert["records"]["crossing"]["iterations"]
        checks = {
            "L1": cert["config"]["L1"] == 1.0, "L2": cert["config"]["L2"] == 5.0,
            "rho": cert["rho"] == 2, "c_coeff": cert["c_coeff"] == 2,
            "NL2": bound <= NL2_MAX, "iterations": abs(it - row["expect_iter"]) <= ITER_TOL,
            "runtime": dt <= ROW_SECONDS,
        }
        failed = [k for k, v in checks.items() if not v]
        if failed:
            bad.append(f"{name}: {','.join(failed)} (NL2={bound:.4g}, it={it})")
    report(capsys, 2, not bad, f"10 rows, NL2 bounds {nl2}" + (f"; bad: {bad}" if bad else ""))
    assert not bad


def test_criterion_3_crude_bound_contrast(dsf_certs, capsys):
    cert = dsf_certs[0][1]
    assert cert["config"]["b"] == "0.8"
    rec = cert["records"]["dpn"]
    ok = rec["passed"] and not rec["crude_bound_holds"]
    report(capsys, 3, ok, f"sampled criterion passed={rec['passed']}, crude bound holds={rec['crude_bound_holds']}")
    assert ok


def test_criterion_4_interval_soundness(capsys):
    t = time.perf_counter()
    bad = {}
    for op in sorted(oracles.EXACT):
        bad[op] = oracles.binary_containment(op, 100_000, seed=401)
    for name in sorted(oracles.UNARY):
        v, done = oracles.unary_containment(name, 100_000, seed=402)
        bad[name] = v
        assert done >= 99_000
    mono = oracles.monotone_pairs(10_000, seed=403)
    dt = time.perf_counter() - t
    n_bad = sum(bad.values()) + sum(mono.values())
    ok = n_bad == 0 and dt <= FUZZ_SECONDS
    report(capsys, 4, ok, f"{len(bad)} ops x 1e5 samples and {len(mono)} ops x 1e4 nested pairs, "
                          f"{n_bad} violations, {dt:.1f}s")
    assert ok


def test_criterion_5_fixed_points(capsys):
    F = Dissipative("3", "0.8")
    c0 = certify_fixed_point(F, IBox.around(0.0, 0.0, 1e-3))
    x1 = math.asin((1 - 0.8) * 4) / (2 * math.pi)
    c1 = certify_fixed_point(F, IBox.around(x1, 4.0, 1e-3))
    widths = [max(float(c.box.x.width()), float(c.box.y.width())) for c in (c0, c1)]
    rho = rotational_difference(c0, c1)
    ok = ((c0.rotation, c1.rotation) == (0, 12) and max(widths) <= FP_WIDTH_MAX
          and c0.box.contains_point(0.0, 0.0) and rho == 12 and dpn_length(rho) == 3)
    report(capsys, 5, ok, f"rotations {c0.rotation}, {c1.rotation}; widths {widths[0]:.2e}, {widths[1]:.2e}; "
                          f"difference {rho}; N {dpn_length(rho)}")
    assert ok


def test_criterion_6_lemma_suite(capsys):
    t = time.perf_counter()
    rep = lemma_suite(budget=1000, seed=0)
    dt = time.perf_counter() - t
    rows = {r["lemma"]: r for r in rep["lemmas"]}
    required = ("interval", "nu_theta", "sep_nu", "mu_interval")
    enough = all(rows[k]["instances"] >= 1000 for k in required)
    mism = sum(r["oracle_mismatches"] for r in rep["lemmas"])
    ok = rep["violations"] == 0 and mism == 0 and enough and dt <= LEMMA_SECONDS
    counts = {k: r["instances"] for k, r in rows.items()}
    report(capsys, 6, ok, f"instances {counts}, violations {rep['violations']}, "
                          f"oracle mismatches {mism}, {dt:.0f}s")
    assert ok


def test_criterion_7_recheck_and_mutations(dsf_certs, ham_certs, capsys):
    certs = [c for _, c, _ in dsf_certs + ham_certs if c["verdict"] == "certified"]
    failed_fresh = [i for i, c in enumerate(certs) if not recheck(c).ok]
    survivors = []
    targets = [dsf_certs[0][1], ham_certs[0][1]]
    for t_i, cert in enumerate(targets):
        for path, m in mutations.mutations(cert, 50, seed=700 + t_i):
            try:
                if recheck(m, check_hash=False).ok:
                    survivors.append(path)
            except SchemaError:
                pass
    ok = len(certs) == 17 and not failed_fresh and not survivors
    report(capsys, 7, ok, f"{len(certs)} certificates recheck, {len(failed_fresh)} rejected; "
                          f"100 mutations, {len(survivors)} survived {survivors[:5]}")
    assert ok


def test_criterion_8_determinism(tmp_path, capsys):
    texts = []
    for k in range(2):
        out = tmp_path / f"c{k}.json"
        assert main(["certify", "dissipative", "--a", "3", "--b", "0.8", "--seed", "0", "--out", str(out)]) == 0
        cert = json.loads(out.read_text())
        cert.pop("timestamps")
        texts.append(json.dumps(cert, indent=1, sort_keys=True))
    raw = [(tmp_path / f"c{k}.json").read_text() for k in range(2)]
    ok = texts[0] == texts[1] and raw[0] != "" and len(raw[0].splitlines()) == len(raw[1].splitlines())
    diff = [a for a, b in zip(raw[0].splitlines(), raw[1].splitlines()) if a != b]
    report(capsys, 8, ok, f"two runs identical outside timestamps; raw lines differing: {len(diff)}")
    assert ok
