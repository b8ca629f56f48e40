"""Independent audit of stored certificates.

Every stored record is re-derived from the serialized parameters, fixed-point
boxes and witness points and compared bit for bit; every inequality is
re-evaluated in interval arithmetic.  No search is re-run: witnesses, crossing
seeds and sample counts are taken from the certificate.
"""
from __future__ import annotations

import json

from .certifiers import (
    SCHEMA_VERSION, c_coefficient, content_hash, dpn_check, dpn_length, free_curve_check,
    segment_samples,
)
from .dynamics import (
    CertificationError, FixedPointCert, OrbitEnclosure, SubdivisionPolicy, crossing_check,
    enclose_orbit, generalized_fixed_points, verify_fixed_point_cert,
)
from .interval import IBox, Interval
from .certifiers import _gaps_for, _pow_up, _ring
from .maps import (
    _param, Generalized, Power, check_coverage, family_from_json, infer_period, mean_quadrature,
    vertical_displacement_bound,
)

__all__ = ["SchemaError", "RecheckReport", "recheck", "recheck_file"]


class SchemaError(ValueError):
    pass


class RecheckReport:
    def __init__(self):
        self.violations = []
        self.checked = []

    @property
    def ok(self):
        return not self.violations

    def check(self, name, cond, msg=""):
        self.checked.append(name)
        if not cond:
            self.violations.append(f"{name}: {msg}" if msg else name)
        return bool(cond)

    def __repr__(self):
        return f"RecheckReport(ok={self.ok}, checked={len(self.checked)}, violations={self.violations})"


_REQUIRED = {
    "dissipative": ("family", "parameters", "config", "fixed_points", "rho", "N", "records", "verdict"),
    "hamiltonian": ("family", "parameters", "config", "fixed_points", "rho", "c_coeff", "records", "verdict"),
}


def _schema(cert):
    if not isinstance(cert, dict):
        raise SchemaError("certificate must be a JSON object")
    if cert.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError(f"schema_version {cert.get('schema_version')!r} != {SCHEMA_VERSION}")
    pipe = cert.get("pipeline")
    if pipe not in _REQUIRED:
        raise SchemaError(f"unknown pipeline {pipe!r}")
    missing = [k for k in _REQUIRED[pipe] if k not in cert]
    if missing:
        raise SchemaError(f"missing fields {missing}")
    return pipe


def _hx(v):
    return float.fromhex(v)


def _policy(cfg):
    p = cfg.get("policy")
    return SubdivisionPolicy(**p) if p else SubdivisionPolicy()


def _fixed_points(rep, F, cert):
    certs = []
    for i, d in enumerate(cert["fixed_points"]):
        try:
            c = FixedPointCert.from_json(d, F)
            good = verify_fixed_point_cert(F, c)
        except (CertificationError, ArithmeticError, KeyError, ValueError, TypeError) as exc:
            rep.check(f"fixed_points[{i}]", False, f"unreadable or invalid ({exc})")
            return None
        rep.check(f"fixed_points[{i}]", good, "existence proof does not verify")
        certs.append(c)
    if len(certs) != 2:
        rep.check("fixed_points", False, "expected two fixed points")
        return None
    rep.check("rho", cert["rho"] == certs[1].rotation - certs[0].rotation and cert["rho"] >= 1,
              f"stored {cert['rho']} vs rotations {certs[0].rotation}, {certs[1].rotation}")
    return certs


def _orbit_matches(rep, name, F, d, direction, policy):
    try:
        stored = OrbitEnclosure.from_json(d)
    except (KeyError, ValueError, TypeError) as exc:
        rep.check(name, False, f"unreadable orbit ({exc})")
        return None
    if not rep.check(f"{name}.direction", stored.direction == direction, stored.direction):
        return None
    try:
        again = enclose_orbit(F, stored.seed, len(stored.boxes) - 1, direction, policy)
    except (CertificationError, ArithmeticError, ValueError) as exc:
        rep.check(name, False, f"enclosure failed ({exc})")
        return None
    rep.check(f"{name}.boxes", again.to_json() == stored.to_json(),
              "stored enclosure differs from its recomputation")
    return stored


def _recheck_dissipative(rep, cert):
    F = family_from_json(cert["family"])
    base = F.base if isinstance(F, Power) else F
    par, cfg, rec = cert["parameters"], cert["config"], cert["records"]
    rep.check("parameters.a", par["a"] == base.a.to_hex(), "does not match family")
    rep.check("parameters.b", par["b"] == base.b.to_hex(), "does not match family")
    rep.check("parameters.power", int(par["power"]) == (F.k if isinstance(F, Power) else 1))
    rep.check("family.b", 0 < float(base.b.lo) and float(base.b.hi) < 1, "b not inside (0, 1)")
    rep.check("config.a", _param(cfg["a"]).to_hex() == par["a"], "config and parameters differ")
    rep.check("config.b", _param(cfg["b"]).to_hex() == par["b"], "config and parameters differ")
    rep.check("config.power", int(cfg["power"]) == int(par["power"]))
    certs = _fixed_points(rep, F, cert)
    if certs is None:
        return
    c0, c1 = certs
    N = cert["N"]
    need = dpn_length(cert["rho"]) if cert["rho"] >= 1 else None
    rep.check("N", need is not None and N >= need and (cfg.get("N") is not None or N == need),
              f"N={N}, ceil(34/rho)={need}")
    rep.check("config.N", cfg.get("N") is None or cfg["N"] == N, "config and certificate differ")
    rep.check("config.rho", cfg.get("rho") is None or cfg["rho"] == cert["rho"], "config and certificate differ")
    level = float(cfg["b_level"])
    eps = float(cfg["epsilon"])
    # free curves
    try:
        stored = rec["free_curves"]
        again = free_curve_check(F, level, stored[0]["slices"], max_slices=stored[0]["slices"])
        rep.check("records.free_curves", again == stored, "recomputed records differ")
        n0 = int(cfg["free_curve_slices"])
        rep.check("config.free_curve_slices",
                  all(s["slices"] % n0 == 0 and (s["slices"] // n0) & (s["slices"] // n0 - 1) == 0
                      for s in stored), "slice counts are not refinements of the configured start")
    except (CertificationError, KeyError, IndexError, ValueError, TypeError) as exc:
        rep.check("records.free_curves", False, str(exc))
    # witnesses
    policy = _policy(cfg)
    wit = rec.get("witnesses", [])
    keys = [w.get("key") for w in wit]
    rep.check("records.witnesses", keys == ["0+", "0-", "1+", "1-"], f"keys {keys}")
    ends = {}
    r = _hx(rec["witness_radius"][1])
    rep.check("records.witness_radius", rec["witness_radius"] == Interval.point(r).to_hex())
    for w in wit:
        name = f"records.witnesses[{w.get('key')}]"
        try:
            px, py = _hx(w["point"][0]), _hx(w["point"][1])
        except (KeyError, ValueError, TypeError):
            rep.check(name, False, "bad point")
            continue
        ends[w["key"]] = (px, py)
        c = certs[int(w["key"][0])]
        mx, my = c.box.mid()
        rx, ry = _ring(c, r, int(cfg["ring_seeds"]))
        rep.check(f"{name}.radius", bool(((rx == px) & (ry == py)).any()),
                  "witness is not a seed of the stored ring")
        side = "above" if w["key"][1] == "+" else "below"
        rep.check(f"{name}.side", w.get("side") == side)
        orb = _orbit_matches(rep, f"{name}.orbit", F, w["orbit"], "backward", policy)
        if orb is None:
            continue
        rep.check(f"{name}.seed", orb.seed.to_json() == IBox.point(px, py).to_json(),
                  "orbit seed is not the witness point")
        k = crossing_check(orb, level, side)
        rep.check(f"{name}.crossing_step", k is not None and k == w["crossing_step"] == len(orb.boxes) - 1,
                  f"stored {w['crossing_step']}, recomputed {k}")
    r0 = float(cfg["witness_radius"])
    k = 0
    while r0 > r * (1 + 1e-12) and k < 64:
        r0 /= 10.0
        k += 1
    rep.check("config.witness_radius", r0 == r, "stored radius is not on the configured schedule")
    rep.check("config.radius_min", float(cfg["radius_min"]) <= r * (1 + 1e-12))
    if wit:
        rep.check("config.max_back", all(w["crossing_step"] <= int(cfg["max_back"]) for w in wit))
        rep.check("records.max_backward_iterations",
                  rec.get("max_backward_iterations") == max(w["crossing_step"] for w in wit))
    # d.p.n.
    d = rec.get("dpn")
    if d is None or len(ends) != 4:
        rep.check("records.dpn", False, "missing")
        return
    try:
        segs = {}
        for s in d["segments"]:
            c = certs[int(s["segment"][0])]
            segs[s["segment"]] = segment_samples(c.box.mid(), ends[s["segment"]], s["gaps"])
        rep.check("records.dpn.epsilon", d["epsilon"] == Interval.point(eps).to_hex())
        eta_N = _pow_up(_hx(d["eta"][1]), N)
        for s in d["segments"]:
            c = certs[int(s["segment"][0])]
            n = _gaps_for(c, ends[s["segment"]], eta_N, eps)
            rep.check(f"records.dpn.segments[{s['segment']}].gaps", s["gaps"] == n <= int(cfg["max_samples"]),
                      "sample count differs from the configured gap rule")
        again = dpn_check(F, c0, c1, segs, N, eps).to_json()
        rep.check("records.dpn", again == d, "recomputed d.p.n. record differs")
        rep.check("records.dpn.inequality", _hx(d["delta_eta_N"][1]) < eps, "delta * eta^N >= epsilon")
    except (CertificationError, KeyError, ValueError, TypeError, IndexError) as exc:
        rep.check("records.dpn", False, f"{type(exc).__name__}: {exc}")


def _recheck_hamiltonian(rep, cert):
    fam = cert["family"]
    F = family_from_json(fam)
    G = F.base if isinstance(F, Power) else F
    par, cfg, rec = cert["parameters"], cert["config"], cert["records"]
    L1, L2 = _hx(par["L1"][0]), _hx(par["L2"][0])
    rep.check("parameters.L", par["L1"] == Interval.point(float(cfg["L1"])).to_hex()
              and par["L2"] == Interval.point(float(cfg["L2"])).to_hex(), "config/parameters differ")
    rep.check("config.power", int(cfg["power"]) == int(par["power"]))
    rep.check("config.quad_slices", int(cfg["quad_slices"]) == G.quad_slices)
    rep.check("parameters.h", par["h"] == cfg["h"])
    rep.check("parameters.w", par["w"] == cfg["w"])
    rep.check("parameters.power", int(par["power"]) == (F.k if isinstance(F, Power) else 1))
    G2 = Generalized(cfg["h"], cfg["w"], quad_slices=int(cfg["quad_slices"]), check=False)
    rep.check("family.expressions", str(G2.h) == str(G.h) and str(G2.w) == str(G.w))
    mean = mean_quadrature(G.w, G.quad_slices, method="taylor")
    rep.check("family.mean", mean.to_hex() == G.mean.to_hex(), "mean enclosure differs from quadrature")
    rep.check("records.family.mean", rec["family"]["mean"] == G.mean.to_hex())
    try:
        rep.check("family.period", infer_period(G.h) == G.p == rec["family"]["period"])
    except ValueError as exc:
        rep.check("family.period", False, str(exc))
    cov = check_coverage(G.h)
    rep.check("records.family.coverage_witness",
              cov is not None and [Interval.point(v).to_hex() for v in cov] == rec["family"]["coverage_witness"])
    certs = _fixed_points(rep, F, cert)
    if certs is None:
        return
    ivt = [i for i, c in enumerate(certs) if c.method == "ivt"]
    if ivt:
        # existence brackets are a deterministic function of the family and L1
        again = {(c.rotation, json.dumps(c.box.to_json())) for c in generalized_fixed_points(F, L1)}
        for i in ivt:
            c = certs[i]
            rep.check(f"fixed_points[{i}].bracket", (c.rotation, json.dumps(c.box.to_json())) in again,
                      "bracket differs from the recomputed search")
    for i, c in enumerate(certs):
        rep.check(f"fixed_points[{i}].band", float(c.box.y.lo) >= -L1 and float(c.box.y.hi) <= L1,
                  "fixed point box leaves the band |y| <= L1")
    rho = cert["rho"]
    rep.check("c_coeff", rho >= 1 and cert["c_coeff"] == c_coefficient(rho))
    ineq = rec.get("inequality", {})
    nl2 = vertical_displacement_bound(F, L2)
    rep.check("records.inequality.NL2_bound",
              ineq.get("NL2_bound") == Interval.point(nl2).to_hex() == cert.get("NL2_bound"),
              "stored N_L2 bound differs from recomputation")
    rhs = Interval.point(L1) + Interval.point(float(cert["c_coeff"])) * Interval.point(nl2)
    rep.check("records.inequality.rhs", ineq.get("rhs") == rhs.to_hex())
    rep.check("records.inequality.lhs_L2", ineq.get("lhs_L2") == Interval.point(L2).to_hex())
    rep.check("records.inequality", float(rhs.hi) <= L2 and ineq.get("holds") is True,
              "L2 < L1 + c * N_L2")
    cr = rec.get("crossing")
    if cr is None:
        rep.check("records.crossing", False, "missing")
        return
    policy = _policy(cfg)
    orb = _orbit_matches(rep, "records.crossing.orbit", F, cr["orbit"], "forward", policy)
    if orb is None:
        return
    rep.check("records.crossing.seed",
              orb.seed.to_json() == IBox.point(_hx(cr["seed"][0]), _hx(cr["seed"][1])).to_json())
    d = cr.get("direction")
    rep.check("records.crossing.direction", d in ("up", "down") and cfg["direction"] in (d, "both"))
    n = int(cfg["crossing_seeds"])
    x0, y0 = _hx(cr["seed"][0]), _hx(cr["seed"][1])
    i = round(x0 * n - 0.5)
    rep.check("records.crossing.seed_grid", 0 <= i < n and (i + 0.5) / n == x0
              and y0 == (-L2 - 2.0 ** -20 if d == "up" else L2 + 2.0 ** -20),
              "seed is not on the configured grid")
    first, last = ("below", "above") if d == "up" else ("above", "below")
    s = crossing_check(orb, L2, first)
    e = crossing_check(orb, L2, last)
    rep.check("records.crossing.start_step", s is not None and s == cr["start_step"])
    rep.check("records.crossing.end_step", e is not None and e == cr["end_step"] == len(orb.boxes) - 1)
    rep.check("records.crossing.iterations", cr.get("iterations") == cr["end_step"] - cr["start_step"]
              and cr["end_step"] <= int(cfg["max_iter"]) + 2)


def recheck(cert: dict, check_hash=True) -> RecheckReport:
    """Audit a certificate dict.  Raises SchemaError for structural problems."""
    pipe = _schema(cert)
    rep = RecheckReport()
    if check_hash:
        rep.check("content_hash", cert.get("content_hash") == content_hash(cert), "hash mismatch")
    rep.check("verdict", cert["verdict"] == "certified" and cert.get("failure") is None,
              f"verdict {cert['verdict']!r}")
    try:
        if pipe == "dissipative":
            _recheck_dissipative(rep, cert)
        else:
            _recheck_hamiltonian(rep, cert)
    except (KeyError, TypeError, IndexError) as exc:
        raise SchemaError(f"malformed certificate: {type(exc).__name__}: {exc}") from exc
    except (ValueError, ArithmeticError, CertificationError) as exc:
        rep.check("family", False, f"{type(exc).__name__}: {exc}")
    return rep


def recheck_file(path, check_hash=True) -> RecheckReport:
    with open(path) as fh:
        try:
            cert = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not JSON: {exc}") from exc
    return recheck(cert, check_hash)
