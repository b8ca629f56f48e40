"""End-to-end certification pipelines.

Two pipelines produce machine-checkable certificates:

* ``certify_dissipative`` for the dissipative standard family.  Two saddle
  fixed points with rotation difference rho, a band |y| < b_level mapped into
  itself, four witnesses near the fixed points whose backward orbits leave the
  band above and below, and a sampled N-disjoint-pair-of-neighbourhoods check
  on the segments joining each fixed point to its witnesses.
* ``certify_hamiltonian`` for the generalized standard family.  Two fixed
  points in the band |y| <= L1, a rigorous bound on the vertical displacement
  over |y| <= L2, the inequality L2 >= L1 + c * N_L2, and an orbit passing from
  one side of the band |y| <= L2 to the other.

Certificates are plain dicts (JSON ready).  Every interval is stored as a pair
of hexadecimal floats.
"""
from __future__ import annotations

import concurrent.futures as cf
import dataclasses
import datetime as _dt
import hashlib
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .dynamics import (
    BlowupError, CertificationError, FixedPointCert, SubdivisionPolicy, certify_fixed_point,
    crossing_check, enclose_orbit, find_fixed_points, generalized_fixed_points,
)
from .interval import EMPTY, IBox, Interval, add_down, add_up, mul_up
from .maps import Dissipative, Generalized, Power, expansion_bound, vertical_displacement_bound

SCHEMA_VERSION = 1

__all__ = [
    "SCHEMA_VERSION", "DissipativeConfig", "HamiltonianConfig", "DpnRecord",
    "StageFailure", "NoFixedPointPair", "BoxesOverlap", "GapTooLarge", "SampleEscaped",
    "FreeCurveFailure", "WitnessNotFound", "InequalityFails", "NoCrossingFound",
    "upper_integer_part", "c_coefficient", "dpn_check", "segment_samples", "dpn_boxes",
    "free_curve_check", "certify_dissipative", "certify_hamiltonian", "sweep",
    "content_hash", "canonical_json",
]


# ---------------------------------------------------------------- failures

class StageFailure(CertificationError):
    """A pipeline stage failed.  ``lhs``/``rhs`` carry the violated inequality
    (as intervals) when there is one."""

    def __init__(self, stage, msg, lhs=None, rhs=None, detail=None):
        super().__init__(msg)
        self.stage = stage
        self.lhs = lhs
        self.rhs = rhs
        self.detail = detail or {}

    def to_json(self):
        d = {"stage": self.stage, "error": type(self).__name__, "message": str(self)}
        d["lhs"] = _hex(self.lhs)
        d["rhs"] = _hex(self.rhs)
        if self.detail:
            d["detail"] = self.detail
        return d


class NoFixedPointPair(StageFailure):
    pass


class BoxesOverlap(StageFailure):
    pass


class GapTooLarge(StageFailure):
    pass


class SampleEscaped(StageFailure):
    pass


class FreeCurveFailure(StageFailure):
    pass


class WitnessNotFound(StageFailure):
    pass


class InequalityFails(StageFailure):
    pass


class NoCrossingFound(StageFailure):
    pass


def _hex(v):
    if v is None:
        return None
    if isinstance(v, Interval):
        return v.to_hex()
    return Interval.point(float(v)).to_hex()


# ---------------------------------------------------------------- small helpers

def upper_integer_part(r_num: int, r_den: int = 1) -> int:
    """Smallest integer >= r_num / r_den, in exact integer arithmetic."""
    return -(-int(r_num) // int(r_den))


def dpn_length(rho: int) -> int:
    if rho < 1:
        raise ValueError("rho must be >= 1")
    return upper_integer_part(34, rho)


def c_coefficient(rho: int) -> int:
    if rho < 1:
        raise ValueError("rho must be >= 1")
    return 3 if rho == 1 else 2 if rho == 2 else 1


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def content_hash(cert: dict) -> str:
    """sha256 over the canonical JSON of a certificate minus timestamps and the hash."""
    body = {k: v for k, v in cert.items() if k not in ("timestamps", "content_hash")}
    return hashlib.sha256(canonical_json(body).encode()).hexdigest()


def _finish(cert, t0):
    cert["timestamps"] = {
        "created": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "wall_time_s": round(time.perf_counter() - t0, 3),
    }
    cert["content_hash"] = content_hash(cert)
    return cert


def _policy_from(d):
    if d is None:
        return SubdivisionPolicy()
    if isinstance(d, SubdivisionPolicy):
        return d
    return SubdivisionPolicy(**d)


# ---------------------------------------------------------------- d.p.n. check

def _round_centre(v, bits=20):
    s = float(2 ** bits)
    return math.floor(v * s + 0.5) / s


def dpn_boxes(c: FixedPointCert, epsilon: float, width=1.0, height=2.0):
    """(B, B_eps, R) for a fixed point: the box of the given size centred at the
    fixed point, the box shrunk by epsilon (inward rounded) and the box inflated
    by epsilon (outward rounded, used for the expansion bound).  Absolute lift
    coordinates, sheet 0.  The centre is the box midpoint rounded to 2^-20."""
    mx, my = c.box.mid()
    cx, cy = _round_centre(mx), _round_centre(my)
    hw, hh = 0.5 * width, 0.5 * height
    B = IBox(Interval(cx - hw, cx + hw), Interval(cy - hh, cy + hh))
    E = IBox(Interval(add_up(add_up(cx, -hw), epsilon), add_down(add_down(cx, hw), -epsilon)),
             Interval(add_up(add_up(cy, -hh), epsilon), add_down(add_down(cy, hh), -epsilon)))
    R = IBox(Interval(add_down(cx - hw, -epsilon), add_up(cx + hw, epsilon)),
             Interval(add_down(cy - hh, -epsilon), add_up(cy + hh, epsilon)))
    return B, E, R


def segment_samples(start, end, n: int):
    """n + 1 float points from start to end on the straight segment; the last
    one is ``end`` exactly.  Deterministic, so a checker can regenerate them."""
    n = int(n)
    if n < 1:
        raise ValueError("need at least one gap")
    t = np.arange(n + 1, dtype=np.float64) / n
    sx, sy = float(start[0]), float(start[1])
    ex, ey = float(end[0]), float(end[1])
    xs = sx + t * (ex - sx)
    ys = sy + t * (ey - sy)
    xs[-1], ys[-1] = ex, ey
    return np.stack([xs, ys], axis=1)


def _gap_bound(c: FixedPointCert, pts):
    """Rigorous upper bound of the max-norm gaps of the polyline from any point
    of the certified box to pts[0], then through pts."""
    bx = c.box.abs_x(0)
    d0 = max((Interval.point(pts[0, 0]) - bx).mag(), (Interval.point(pts[0, 1]) - c.box.y).mag())
    if len(pts) < 2:
        return float(d0)
    dx = (Interval.point(pts[1:, 0]) - Interval.point(pts[:-1, 0])).mag()
    dy = (Interval.point(pts[1:, 1]) - Interval.point(pts[:-1, 1])).mag()
    return float(max(d0, np.max(dx), np.max(dy)))


def _pow_up(x: float, n: int) -> float:
    r = 1.0
    for _ in range(n):
        r = float(mul_up(r, x))
    return r


@dataclass
class DpnRecord:
    N: int
    epsilon: float
    eta: float
    eta_N: float
    delta: float
    delta_eta_N: float
    boxes: list            # B_i as IBox
    shrunk: list           # B_i^eps
    segments: list         # per segment dicts
    crude: list            # crude analytic bound per segment
    sample_count: int
    passed: bool = True

    def to_json(self):
        return {
            "N": self.N, "epsilon": _hex(self.epsilon), "eta": _hex(self.eta),
            "eta_N": _hex(self.eta_N), "delta": _hex(self.delta),
            "delta_eta_N": _hex(self.delta_eta_N),
            "boxes": [b.to_json() for b in self.boxes],
            "shrunk_boxes": [b.to_json() for b in self.shrunk],
            "segments": self.segments, "crude_bound": self.crude,
            "crude_bound_holds": all(s["holds"] for s in self.crude),
            "sample_count": self.sample_count, "passed": self.passed,
        }


def _iterate_samples(F, c, pts, E, p, N):
    """Index (step, sample) of the first escape from E + (j p, 0), or None.

    Sample 0 in the returned indexing is the certified fixed-point box."""
    boxes = IBox.concat([IBox(c.box.x, c.box.y, c.box.sheet),
                         IBox(Interval.point(pts[:, 0]), Interval.point(pts[:, 1]), 0)])
    for j in range(N + 1):
        if j:
            boxes = F.eval_lift(boxes)
        X = boxes.abs_x(0) - float(j * p)
        ok = (X.lo > E.x.lo) & (X.hi < E.x.hi) & (boxes.y.lo > E.y.lo) & (boxes.y.hi < E.y.hi)
        ok &= np.isfinite(X.lo) & np.isfinite(X.hi)
        if not ok.all():
            return j, int(np.nonzero(~ok)[0][0])
    return None


def dpn_check(F, c0: FixedPointCert, c1: FixedPointCert, segments, N: int, epsilon: float,
              width=1.0, height=2.0) -> DpnRecord:
    """Sampled N-d.p.n. check on four segments.

    ``segments`` maps the keys "0+", "0-", "1+", "1-" to float arrays of shape
    (n, 2) running from (near) x_i to the witness.  A segment may be a single
    point.  Passes when every iterate f^j(z_k), j = 0..N, of every sample (and
    of the fixed-point box) lies in B_i^eps + (j p_i, 0) and the largest gap
    delta satisfies delta * eta^N < epsilon."""
    N = int(N)
    certs = (c0, c1)
    geo = [dpn_boxes(c, epsilon, width, height) for c in certs]
    (B0, E0, _), (B1, E1, _) = geo
    # open boxes B_i are disjoint in the annulus iff their y ranges are
    lower, upper = (0, 1) if float(B0.y.mid()) <= float(B1.y.mid()) else (1, 0)
    if not (add_up(float(geo[lower][1].y.hi), epsilon) <= add_down(float(geo[upper][1].y.lo), -epsilon)):
        raise BoxesOverlap("dpn", "B_0 and B_1 overlap", lhs=geo[lower][0].y, rhs=geo[upper][0].y)
    etas = [expansion_bound(F, R) for (_, _, R) in geo]
    eta = max(etas)
    eta_N = _pow_up(eta, N)
    segs, crude = [], []
    delta = 0.0
    total = 0
    for key in ("0+", "0-", "1+", "1-"):
        pts = np.asarray(segments[key], dtype=np.float64).reshape(-1, 2)
        i = int(key[0])
        delta = max(delta, _gap_bound(certs[i], pts))
    delta_eta_N = float(mul_up(delta, eta_N))
    if not delta_eta_N < epsilon:
        raise GapTooLarge("dpn", "delta * eta^N >= epsilon", lhs=Interval(delta_eta_N),
                          rhs=Interval(epsilon))
    for key in ("0+", "0-", "1+", "1-"):
        pts = np.asarray(segments[key], dtype=np.float64).reshape(-1, 2)
        i = int(key[0])
        c = certs[i]
        E = geo[i][1]
        bad = _iterate_samples(F, c, pts, E, c.rotation, N)
        if bad is not None:
            j, k = bad
            raise SampleEscaped("dpn", f"segment {key}: sample {k} leaves B_i^eps at step {j}",
                                detail={"segment": key, "step": j, "sample": k})
        total += len(pts) + 1
        ex, ey = pts[-1]
        length = max((Interval.point(ex) - c.box.abs_x(0)).mag(), (Interval.point(ey) - c.box.y).mag())
        value = float(mul_up(length, eta_N))
        segs.append({"segment": key, "start": _hex_point(pts[0]), "end": _hex_point(pts[-1]),
                     "gaps": len(pts) - 1})
        crude.append({"segment": key, "length": _hex(length), "value": _hex(value),
                      "holds": bool(value <= 0.5)})
    return DpnRecord(N, float(epsilon), float(eta), eta_N, delta, delta_eta_N,
                     [g[0] for g in geo], [g[1] for g in geo], segs, crude, total)


def _hex_point(p):
    return [float(p[0]).hex(), float(p[1]).hex()]


# ---------------------------------------------------------------- free curves

def free_curve_check(F, level: float, n_slices=256, max_slices=2 ** 14):
    """Prove pr2 F(x, +-level) lies strictly inside (-level, level) for all x.

    Returns a list of two records (one per curve).  Slices double on failure."""
    out = []
    for sgn in (1.0, -1.0):
        n = int(n_slices)
        while True:
            k = np.arange(n, dtype=np.float64)
            xs = Interval((Interval.point(k) / float(n)).lo, (Interval.point(k + 1.0) / float(n)).hi)
            ys = Interval.point(np.full(n, sgn * level))
            img = F.eval_lift(IBox(xs, ys))
            hull = Interval(float(np.min(img.y.lo)), float(np.max(img.y.hi)))
            ok = float(hull.lo) > -level and float(hull.hi) < level
            if ok or 2 * n > max_slices:
                break
            n *= 2
        rec = {"level": _hex(sgn * level), "slices": n, "image_y": hull.to_hex(), "holds": bool(ok)}
        out.append(rec)
        if not ok:
            bad = Interval(-level, level)
            raise FreeCurveFailure("free_curves", f"image of y={sgn * level:g} not inside the band",
                                   lhs=hull, rhs=bad, detail={"records": out})
    return out


# ---------------------------------------------------------------- dissipative

@dataclass
class DissipativeConfig:
    a: object = "3"
    b: object = "0.8"
    b_level: float = 6.0
    rho: int = None
    N: int = None
    epsilon: float = 0.05
    witness_radius: float = 1e-2
    radius_min: float = 1e-8
    ring_seeds: int = 2 ** 16
    max_back: int = 40
    witness_tries: int = 8
    max_samples: int = 2 ** 18
    free_curve_slices: int = 256
    power: int = 1
    seed: int = 0
    policy: dict = None

    def validate(self):
        for name in ("b_level", "epsilon", "witness_radius", "radius_min"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive number")
        if not self.epsilon < 0.5:
            raise ValueError("epsilon must be < 0.5")
        if self.rho is not None and int(self.rho) < 1:
            raise ValueError("rho must be >= 1")
        if self.N is not None and int(self.N) < 1:
            raise ValueError("N must be >= 1")
        if int(self.power) < 1:
            raise ValueError("power must be >= 1")
        for name in ("ring_seeds", "max_back", "witness_tries", "free_curve_slices", "max_samples"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be >= 1")
        return self

    def family(self):
        F = Dissipative(self.a, self.b)
        return Power(F, int(self.power)) if int(self.power) > 1 else F

    def to_json(self):
        d = dataclasses.asdict(self)
        d["a"] = str(self.a)
        d["b"] = str(self.b)
        return d


RHO_PREFERENCE = (12, 6, 4, 3, 2, 1)


def _choose_saddle(F, pts):
    best, score = None, -math.inf
    for (x, y, p) in pts:
        a, b, c, d = (float(v[0]) for v in F.df(np.array([x]), np.array([y])))
        tr, det = a + d, a * d - b * c
        disc = tr * tr - 4 * det
        if disc <= 0:
            continue
        lam = (abs(tr) + math.sqrt(disc)) / 2
        if lam <= 1:
            continue
        s = tr  # prefer orientation preserving unstable direction
        if s > score:
            best, score = (x, y, p), s
    return best


def _dissipative_pair(F, cfg):
    level = float(cfg.b_level)
    pts = find_fixed_points(F, (-level, level))
    by_p = {}
    for t in pts:
        by_p.setdefault(t[2], []).append(t)
    if cfg.rho is not None:
        rhos = [int(cfg.rho)]
    else:
        rhos = list(RHO_PREFERENCE)
    tried = []
    for rho in rhos:
        p0 = -(rho // 2)
        p1 = p0 + rho
        if p0 not in by_p or p1 not in by_p:
            tried.append(rho)
            continue
        s0, s1 = _choose_saddle(F, by_p[p0]), _choose_saddle(F, by_p[p1])
        if s0 is None or s1 is None:
            tried.append(rho)
            continue
        try:
            certs = [certify_fixed_point(F, IBox.around(x, y, 1e-6), p_hint=p) for (x, y, p) in (s0, s1)]
        except CertificationError as exc:
            # degenerate roots (a fold at the edge of existence) do not contract
            if cfg.rho is not None:
                raise StageFailure("fixed_points", f"rho={rho}: {type(exc).__name__}: {exc}")
            tried.append(rho)
            continue
        return certs[0], certs[1], rho
    raise NoFixedPointPair("fixed_points", f"no saddle pair with rotation difference in {tried}",
                           detail={"rotations_found": sorted(by_p)})


def _ring(c, r, m):
    """m points on the max-norm circle of radius r about the box midpoint."""
    mx, my = c.box.mid()
    t = np.arange(m, dtype=np.float64) / m
    side = (t * 4).astype(int)
    f = (t * 4) % 1 * 2 - 1
    dx = np.select([side == 0, side == 1, side == 2], [f, np.ones_like(f), -f], -np.ones_like(f)) * r
    dy = np.select([side == 0, side == 1, side == 2], [np.ones_like(f), -f, -np.ones_like(f)], f) * r
    return mx + dx, my + dy


def _witness_candidates(F, c, E, N, r, cfg):
    """Ordered candidates (count, exc, x, y) per side from double shooting."""
    m = int(cfg.ring_seeds)
    level = float(cfg.b_level)
    x0, y0 = _ring(c, r, m)
    # forward excursion of the segment from the fixed point to each seed
    mx, my = c.box.mid()
    cx, cy = float(E.x.mid()), float(E.y.mid())
    hx, hy = 0.5 * float(E.x.width()), 0.5 * float(E.y.width())
    exc = np.zeros(m)
    with np.errstate(all="ignore"):
        for lam in np.linspace(1.0 / 16, 1.0, 16):
            X = mx + lam * (x0 - mx)
            Y = my + lam * (y0 - my)
            for j in range(1, N + 1):
                X, Y = F.f(X, Y)
                e = np.maximum(np.abs(X - j * c.rotation - cx) / hx, np.abs(Y - cy) / hy)
                exc = np.maximum(exc, np.where(np.isfinite(e), e, np.inf))
        up = np.full(m, -1)
        dn = np.full(m, -1)
        X, Y = x0.copy(), y0.copy()
        for k in range(1, int(cfg.max_back) + 1):
            X, Y = F.finv(X, Y)
            bad = ~np.isfinite(Y) | (np.abs(Y) > 1e6) | ~np.isfinite(X)
            up = np.where((up < 0) & (Y > level) & ~bad, k, up)
            dn = np.where((dn < 0) & (Y < -level) & ~bad, k, dn)
            X = np.where(bad, 0.0, X)
            Y = np.where(bad, np.nan, Y)
    valid = exc < 0.8
    out = {}
    for side, arr in (("+", up), ("-", dn)):
        idx = np.nonzero(valid & (arr > 0))[0]
        order = np.lexsort((idx, exc[idx], arr[idx]))
        out[side] = [(int(arr[i]), float(exc[i]), float(x0[i]), float(y0[i])) for i in idx[order]]
    return out


def _gaps_for(c, end, eta_N, epsilon):
    mx, my = c.box.mid()
    length = max(abs(end[0] - mx), abs(end[1] - my))
    target = epsilon / (2.0 * eta_N)
    return max(1, int(math.ceil(length / target)) + 1)


def _validate_witness(F, c, E, N, eta_N, cfg, key, cand, policy):
    count, _, wx, wy = cand
    side = "above" if key[1] == "+" else "below"
    seed = IBox.point(wx, wy)
    try:
        orb = enclose_orbit(F, seed, count, "backward", policy)
    except (BlowupError, ArithmeticError, ValueError):
        return None
    k = crossing_check(orb, float(cfg.b_level), side)
    if k is None:
        return None
    orb.boxes = orb.boxes[:k + 1]
    n = _gaps_for(c, (wx, wy), eta_N, float(cfg.epsilon))
    if n > int(cfg.max_samples):
        return None
    mx, my = c.box.mid()
    pts = segment_samples((mx, my), (wx, wy), n)
    if _iterate_samples(F, c, pts, E, c.rotation, N) is not None:
        return None
    return {"key": key, "point": (wx, wy), "orbit": orb, "step": k, "samples": pts}


def certify_dissipative(config=None, **kw) -> dict:
    """Run the dissipative pipeline and return a certificate dict.

    Failures do not raise: the certificate carries verdict "failed" and the
    failing stage.  Configuration errors raise ValueError."""
    cfg = config if isinstance(config, DissipativeConfig) else DissipativeConfig(**(config or {}), **kw)
    cfg.validate()
    t0 = time.perf_counter()
    F = cfg.family()
    base = F.base if isinstance(F, Power) else F
    cert = {
        "schema_version": SCHEMA_VERSION, "pipeline": "dissipative", "tool_version": __version__,
        "family": F.to_json(),
        "parameters": {"a": base.a.to_hex(), "b": base.b.to_hex(), "power": int(cfg.power)},
        "config": cfg.to_json(),
        "fixed_points": [], "rho": None, "N": None, "records": {},
        "verdict": "failed", "failure": None,
        "assumptions": [
            "b_level band |y| <= b_level is mapped into its interior (checked on its two boundary curves)",
            "d.p.n. unions lie in width-1 boxes, hence are inessential; boxes are disjoint in y",
        ],
    }
    policy = _policy_from(cfg.policy)
    try:
        c0, c1, rho = _dissipative_pair(F, cfg)
        cert["fixed_points"] = [c0.to_json(), c1.to_json()]
        cert["rho"] = rho
        N = dpn_length(rho)
        if cfg.N is not None:
            if int(cfg.N) < N:
                raise StageFailure("config", f"N override {cfg.N} below ceil(34/rho) = {N}")
            N = int(cfg.N)
        cert["N"] = N
        cert["records"]["free_curves"] = free_curve_check(F, float(cfg.b_level), cfg.free_curve_slices)
        geo = [dpn_boxes(c, cfg.epsilon) for c in (c0, c1)]
        eta = max(expansion_bound(F, g[2]) for g in geo)
        eta_N = _pow_up(eta, N)
        chosen = None
        radii_log = []
        r = float(cfg.witness_radius)
        while r >= float(cfg.radius_min) * (1 - 1e-12):
            picks = {}
            mx0, my0 = c0.box.mid()
            if _gaps_for(c0, (mx0 + r, my0), eta_N, float(cfg.epsilon)) > int(cfg.max_samples):
                radii_log.append({"radius": _hex(r), "found": [], "skipped": "sample budget"})
                r /= 10.0
                continue
            for i, c in enumerate((c0, c1)):
                E = geo[i][1]
                cands = _witness_candidates(F, c, E, N, r, cfg)
                for s in ("+", "-"):
                    key = f"{i}{s}"
                    for cand in cands[s][:int(cfg.witness_tries)]:
                        got = _validate_witness(F, c, E, N, eta_N, cfg, key, cand, policy)
                        if got is not None:
                            picks[key] = got
                            break
            radii_log.append({"radius": _hex(r), "found": sorted(picks)})
            if len(picks) == 4:
                chosen = (r, picks)
                break
            r /= 10.0
        cert["records"]["witness_search"] = radii_log
        if chosen is None:
            raise WitnessNotFound("witnesses", "no radius produced four validated witnesses")
        r, picks = chosen
        wit = []
        for key in ("0+", "0-", "1+", "1-"):
            w = picks[key]
            wit.append({"key": key, "point": _hex_point(w["point"]), "side": "above" if key[1] == "+" else "below",
                        "crossing_step": w["step"], "orbit": w["orbit"].to_json()})
        cert["records"]["witnesses"] = wit
        cert["records"]["witness_radius"] = _hex(r)
        cert["records"]["max_backward_iterations"] = max(w["step"] for w in picks.values())
        segs = {k: picks[k]["samples"] for k in picks}
        rec = dpn_check(F, c0, c1, segs, N, float(cfg.epsilon))
        cert["records"]["dpn"] = rec.to_json()
        cert["verdict"] = "certified"
    except StageFailure as exc:
        cert["failure"] = exc.to_json()
    except CertificationError as exc:
        cert["failure"] = {"stage": getattr(exc, "stage", "fixed_points"), "error": type(exc).__name__,
                           "message": str(exc), "lhs": None, "rhs": None}
    return _finish(cert, t0)


# ---------------------------------------------------------------- hamiltonian

@dataclass
class HamiltonianConfig:
    h: str = "y"
    w: str = "x"
    L1: float = 1.0
    L2: float = 5.0
    max_iter: int = 40
    direction: str = "both"
    crossing_seeds: int = 2 ** 17
    quad_slices: int = 2048
    power: int = 1
    seed: int = 0
    policy: dict = None

    def validate(self):
        if not (self.L1 > 0 and self.L2 > 0 and math.isfinite(self.L1) and math.isfinite(self.L2)):
            raise ValueError("L1 and L2 must be positive")
        if self.L2 <= self.L1:
            raise ValueError("L2 must exceed L1")
        if self.direction not in ("up", "down", "both"):
            raise ValueError("direction must be up, down or both")
        for name in ("max_iter", "crossing_seeds", "quad_slices", "power"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be >= 1")
        return self

    def family(self):
        G = Generalized(self.h, self.w, quad_slices=int(self.quad_slices))
        return Power(G, int(self.power)) if int(self.power) > 1 else G

    def to_json(self):
        return dataclasses.asdict(self)


def _in_band(box: IBox, L):
    return float(box.y.lo) >= -L and float(box.y.hi) <= L


def _hamiltonian_pair(F, L1):
    if isinstance(F, Generalized):
        raw = generalized_fixed_points(F, L1)
        certs = []
        for c in raw:
            # prefer a Krawczyk certificate (uniqueness) when it fits in the band
            try:
                mx, my = c.box.mid()
                k = certify_fixed_point(F, IBox.around(mx, my, 1e-6), p_hint=c.rotation)
                certs.append(k if _in_band(k.box, L1) else c)
            except CertificationError:
                certs.append(c)
    else:
        certs = []
        for (x, y, p) in find_fixed_points(F, (-L1, L1)):
            try:
                k = certify_fixed_point(F, IBox.around(x, y, 1e-6), p_hint=p)
            except CertificationError:
                continue
            if _in_band(k.box, L1):
                certs.append(k)
    if not certs:
        raise NoFixedPointPair("fixed_points", "no certified fixed point in the band")
    c0 = min(certs, key=lambda c: (c.rotation, abs(float(c.box.y.mid()))))
    c1 = max(certs, key=lambda c: (c.rotation, -abs(float(c.box.y.mid()))))
    if c1.rotation == c0.rotation:
        raise NoFixedPointPair("fixed_points", "all fixed points in the band share one rotation",
                               detail={"rotation": c0.rotation})
    return c0, c1


def _crossing_candidates(F, L2, cfg):
    n = int(cfg.crossing_seeds)
    xs = (np.arange(n, dtype=np.float64) + 0.5) / n
    off = 2.0 ** -20
    dirs = ["up", "down"] if cfg.direction == "both" else [cfg.direction]
    out = []
    for d in dirs:
        y0 = -L2 - off if d == "up" else L2 + off
        X, Y = xs.copy(), np.full(n, y0)
        hit = np.full(n, -1)
        with np.errstate(all="ignore"):
            for k in range(1, int(cfg.max_iter) + 1):
                X, Y = F.f(X, Y)
                cond = (Y > L2) if d == "up" else (Y < -L2)
                hit = np.where((hit < 0) & cond, k, hit)
                if (hit > 0).any():
                    break
        for i in np.nonzero(hit > 0)[0]:
            out.append((int(hit[i]), 0 if d == "up" else 1, int(i), d, float(xs[i]), float(y0)))
    # later rounds: seeds whose first double hit is borderline are retried below
    out.sort()
    return out


def _validate_crossing(F, L2, cfg, cand, policy):
    k, _, _, d, x0, y0 = cand
    seed = IBox.point(x0, y0)
    for extra in range(0, 3):
        try:
            orb = enclose_orbit(F, seed, k + extra, "forward", policy)
        except (BlowupError, ArithmeticError, ValueError):
            return None
        start = crossing_check(orb, L2, "below" if d == "up" else "above")
        end = crossing_check(orb, L2, "above" if d == "up" else "below")
        if start == 0 and end is not None:
            orb.boxes = orb.boxes[:end + 1]
            return orb, start, end
    return None


def certify_hamiltonian(config=None, **kw) -> dict:
    """Run the generalized-family pipeline and return a certificate dict."""
    cfg = config if isinstance(config, HamiltonianConfig) else HamiltonianConfig(**(config or {}), **kw)
    cfg.validate()
    t0 = time.perf_counter()
    cert = {
        "schema_version": SCHEMA_VERSION, "pipeline": "hamiltonian", "tool_version": __version__,
        "family": None, "parameters": {"h": str(cfg.h), "w": str(cfg.w), "L1": _hex(cfg.L1),
                                       "L2": _hex(cfg.L2), "power": int(cfg.power)},
        "config": cfg.to_json(), "fixed_points": [], "rho": None, "c_coeff": None,
        "records": {}, "verdict": "failed", "failure": None,
        "assumptions": [
            "the map is non-wandering; otherwise a rotational horseshoe exists by the dichotomy "
            "for mean-zero generalized standard maps, so the conclusion holds either way",
        ],
    }
    policy = _policy_from(cfg.policy)
    L1, L2 = float(cfg.L1), float(cfg.L2)
    try:
        try:
            F = cfg.family()
        except (ValueError, ArithmeticError) as exc:
            raise StageFailure("family", str(exc))
        cert["family"] = F.to_json()
        base = F.base if isinstance(F, Power) else F
        cert["records"]["family"] = {"mean": base.mean.to_hex(), "period": base.p,
                                     "coverage_witness": [_hex(v) for v in base.coverage]}
        c0, c1 = _hamiltonian_pair(F, L1)
        cert["fixed_points"] = [c0.to_json(), c1.to_json()]
        rho = c1.rotation - c0.rotation
        c = c_coefficient(rho)
        cert["rho"] = rho
        cert["c_coeff"] = c
        nl2 = vertical_displacement_bound(F, L2)
        rhs = Interval.point(L1) + Interval.point(float(c)) * Interval.point(nl2)
        ok = float(rhs.hi) <= L2
        cert["records"]["inequality"] = {"NL2_bound": _hex(nl2), "lhs_L2": _hex(L2), "rhs": rhs.to_hex(),
                                         "holds": bool(ok)}
        cert["NL2_bound"] = _hex(nl2)
        if not ok:
            raise InequalityFails("inequality", "L2 < L1 + c * N_L2", lhs=Interval(L2), rhs=rhs)
        found = None
        tried = 0
        for cand in _crossing_candidates(F, L2, cfg):
            tried += 1
            got = _validate_crossing(F, L2, cfg, cand, policy)
            if got is not None:
                found = (cand, got)
                break
            if tried >= 64:
                break
        if found is None:
            raise NoCrossingFound("crossing", f"no validated crossing orbit within {cfg.max_iter} iterates",
                                  detail={"candidates_tried": tried})
        cand, (orb, s, e) = found
        cert["records"]["crossing"] = {"direction": cand[3], "seed": _hex_point((cand[4], cand[5])),
                                       "start_step": s, "end_step": e, "iterations": e - s,
                                       "orbit": orb.to_json()}
        cert["verdict"] = "certified"
    except StageFailure as exc:
        cert["failure"] = exc.to_json()
    except CertificationError as exc:
        cert["failure"] = {"stage": getattr(exc, "stage", "fixed_points"), "error": type(exc).__name__,
                           "message": str(exc), "lhs": None, "rhs": None}
    return _finish(cert, t0)


# ---------------------------------------------------------------- sweeps

SWEEP_COLUMNS = ("index", "pipeline", "params", "verdict", "stage", "rho", "N", "c_coeff",
                 "iterations", "wall_time_s")


def _run_cell(args):
    idx, pipeline, cell = args
    fn = certify_dissipative if pipeline == "dissipative" else certify_hamiltonian
    try:
        cert = fn(dict(cell))
    except ValueError as exc:
        return idx, cell, None, str(exc)
    return idx, cell, cert, None


def _row(idx, pipeline, cell, cert, err):
    params = ";".join(f"{k}={cell[k]}" for k in sorted(cell))
    if cert is None:
        return {"index": idx, "pipeline": pipeline, "params": params, "verdict": "error",
                "stage": "config", "rho": "", "N": "", "c_coeff": "", "iterations": "",
                "wall_time_s": ""}
    rec = cert["records"]
    if pipeline == "dissipative":
        it = rec.get("max_backward_iterations", "")
    else:
        it = rec.get("crossing", {}).get("iterations", "")
    return {"index": idx, "pipeline": pipeline, "params": params, "verdict": cert["verdict"],
            "stage": (cert["failure"] or {}).get("stage", ""),
            "rho": "" if cert["rho"] is None else cert["rho"],
            "N": "" if cert.get("N") is None else cert["N"],
            "c_coeff": "" if cert.get("c_coeff") is None else cert["c_coeff"],
            "iterations": it, "wall_time_s": cert["timestamps"]["wall_time_s"]}


def sweep(grid, pipeline: str, threads: int = 1, keep_certificates=False):
    """Run a pipeline on every cell of ``grid`` (a list of config dicts).

    Returns the table rows in grid order (and the certificates when asked).
    Per-cell failures are rows with verdict failed/error, never exceptions."""
    if pipeline not in ("dissipative", "hamiltonian"):
        raise ValueError("pipeline must be dissipative or hamiltonian")
    cells = list(grid)
    jobs = [(i, pipeline, c) for i, c in enumerate(cells)]
    results = []
    if threads and threads > 1 and len(jobs) > 1:
        with cf.ProcessPoolExecutor(max_workers=int(threads)) as ex:
            results = list(ex.map(_run_cell, jobs))
    else:
        results = [_run_cell(j) for j in jobs]
    results.sort(key=lambda t: t[0])
    rows = [_row(i, pipeline, cell, cert, err) for (i, cell, cert, err) in results]
    if keep_certificates:
        return rows, [r[2] for r in results]
    return rows
