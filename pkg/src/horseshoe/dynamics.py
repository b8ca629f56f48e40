"""Certified fixed points, validated orbit enclosures and crossing predicates."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .interval import EMPTY, IBox, IMatrix2, Interval

__all__ = [
    "FixedPointCert", "OrbitEnclosure", "SubdivisionPolicy", "NoContraction",
    "AmbiguousRotation", "SingularJacobian", "BlowupError", "FamilyMismatch",
    "DpnFailure", "NoTransitFound", "certify_fixed_point", "find_fixed_points",
    "rotational_difference", "enclose_orbit", "crossing_check", "krawczyk",
    "verify_birkhoff_related", "BirkhoffRecord", "annulus_disjoint",
    "generalized_fixed_points", "CertificationError",
]


class CertificationError(Exception):
    stage = "unknown"


class NoContraction(CertificationError):
    pass


class AmbiguousRotation(CertificationError):
    pass


class SingularJacobian(CertificationError):
    pass


class BlowupError(CertificationError):
    pass


class FamilyMismatch(CertificationError):
    pass


class DpnFailure(CertificationError):
    pass


class NoTransitFound(CertificationError):
    def __init__(self, max_iter, msg="", diagnostics=None):
        super().__init__(msg or f"no verified transit within {max_iter} iterates")
        self.max_iter = max_iter
        self.diagnostics = diagnostics or {}


# ---------------------------------------------------------------- fixed points

@dataclass
class FixedPointCert:
    box: IBox
    rotation: int
    family: object
    newton_radius_ratio: float
    krawczyk_box: IBox = None   # box on which K(X) within int(X) was checked
    krawczyk_image: IBox = None
    method: str = "krawczyk"    # or "ivt" (existence only, generalized family)
    evidence: dict = None       # ivt: endpoint values of h(y) - p and v(sin 2 pi x)

    def to_json(self):
        d = {"method": self.method, "box": self.box.to_json(), "rotation": int(self.rotation),
             "newton_radius_ratio": self.newton_radius_ratio}
        if self.method == "krawczyk":
            d["krawczyk_box"] = self.krawczyk_box.to_json()
            d["krawczyk_image"] = self.krawczyk_image.to_json()
        else:
            d["evidence"] = self.evidence
        return d

    @classmethod
    def from_json(cls, d, family):
        method = d.get("method", "krawczyk")
        if method not in ("krawczyk", "ivt"):
            raise ValueError(f"unknown fixed point method {method!r}")
        kb = IBox.from_json(d["krawczyk_box"]) if method == "krawczyk" else None
        ki = IBox.from_json(d["krawczyk_image"]) if method == "krawczyk" else None
        return cls(IBox.from_json(d["box"]), int(d["rotation"]), family,
                   float(d["newton_radius_ratio"]), kb, ki, method, d.get("evidence"))


def _G(F, box, p):
    dx, dy = F.displacement(box)
    return dx - float(p), dy


def krawczyk(F, X: IBox, p: int, C=None):
    """Krawczyk image K(X) for G(z) = F(z) - z - (p, 0).

    Returns (K, C) with C the float preconditioner (inverse of DG(mid X))."""
    mx, my = float(X.x.mid()), float(X.y.mid())
    m = IBox(Interval.point(mx), Interval.point(my), X.sheet)
    J = F.jacobian(X)
    DG = IMatrix2(J.a11 - 1.0, J.a12, J.a21, J.a22 - 1.0)
    if C is None:
        A = DG.mid()
        if not np.all(np.isfinite(A)) or abs(np.linalg.det(A)) < 1e-300:
            raise SingularJacobian("DG(mid) is singular")
        C = np.linalg.inv(A)
        if not np.all(np.isfinite(C)):
            raise SingularJacobian("DG(mid) is singular")
    Ci = IMatrix2.from_float(C)
    g1, g2 = _G(F, m, p)
    cg1, cg2 = Ci @ (g1, g2)
    R = IMatrix2.identity() - Ci @ DG
    d1 = X.x - mx
    d2 = X.y - my
    r1, r2 = R @ (d1, d2)
    kx = (mx - cg1) + r1
    ky = (my - cg2) + r2
    return IBox(kx, ky, X.sheet), C


def _newton_polish(F, x, y, p, iters=40):
    for _ in range(iters):
        dx, dy = F.fdisp(np.array([x]), np.array([y]))
        g = np.array([dx[0] - p, dy[0]])
        a, b, c, d = F.df(np.array([x]), np.array([y]))
        J = np.array([[a[0] - 1, b[0]], [c[0], d[0] - 1]])
        try:
            step = np.linalg.solve(J, g)
        except np.linalg.LinAlgError:
            break
        x, y = x - step[0], y - step[1]
        if np.max(np.abs(step)) < 1e-16 * (1 + abs(x) + abs(y)):
            break
    return x, y


def _rotation_of(F, box):
    dx, _ = F.displacement(box)
    if dx.width() >= 1:
        raise AmbiguousRotation(f"displacement enclosure {dx!r} spans >= 1")
    ints = list(dx.integers())
    if len(ints) != 1:
        if not ints:
            raise NoContraction(f"no integer in displacement enclosure {dx!r}")
        raise AmbiguousRotation(f"displacement enclosure {dx!r} holds {ints}")
    return ints[0]


def _contraction_ratio(X, K):
    return float(max(K.x.width() / max(X.x.width(), 1e-300), K.y.width() / max(X.y.width(), 1e-300)))


# Krawczyk boxes are centred at the polished point snapped to a 2^-40 grid,
# with half width k * (1 + |cx| + |cy|), k from this ladder.  The canonical
# form lets an auditor rebuild the box bit for bit from its own midpoint.
RADIUS_LADDER = (1e-10, 1e-8, 1e-6)
CENTRE_GRID = 2.0 ** 40


def _snap(v):
    return round(v * CENTRE_GRID) / CENTRE_GRID


def _newton_box(cx, cy, k, sheet=0):
    r = k * (1.0 + abs(cx) + abs(cy))
    return IBox(Interval(cx).inflate(r), Interval(cy).inflate(r), sheet)


def _refine(F, K, X, p, rounds=8):
    """Shrink K(X) by repeated Krawczyk steps; the zero stays in every iterate."""
    box = IBox(K.x, K.y, X.sheet)
    for _ in range(rounds):
        K2, _ = krawczyk(F, box, p)
        nx = K2.x.intersect(box.x)
        ny = K2.y.intersect(box.y)
        if nx is EMPTY or ny is EMPTY:
            break
        nb = IBox(nx, ny, box.sheet)
        if nb.width() >= box.width():
            break
        box = nb
    return box


def certify_fixed_point(F, seed: IBox, p_hint=None, refine=True) -> FixedPointCert:
    """Krawczyk-certify a unique fixed point of the annulus map in seed.

    A double-precision Newton polish from the seed centre proposes the centre
    (the seed centre itself if the polish leaves the seed); boxes of growing
    radius around it are tried in turn."""
    if not seed.is_finite():
        raise ValueError("seed must be finite")
    p = _rotation_of(F, seed) if p_hint is None else int(p_hint)
    sx, sy = float(seed.x.mid()), float(seed.y.mid())
    px, py = _newton_polish(F, sx, sy, p)
    if not (seed.x.contains(px) and seed.y.contains(py)):
        px, py = sx, sy
    px, py = _snap(px), _snap(py)
    failed = None
    for k in RADIUS_LADDER:
        X = _newton_box(px, py, k, seed.sheet)
        K, C = krawczyk(F, X, p)
        if K.x.interior_subset(X.x) and K.y.interior_subset(X.y):
            break
        failed = (X, K)
    else:
        X, K = failed
        raise NoContraction(f"K(X) not inside X: X={X!r} K={K!r}")
    ratio = _contraction_ratio(X, K)
    box = _refine(F, K, X, p) if refine else IBox(K.x, K.y, X.sheet)
    if _rotation_of(F, box) != p:
        raise AmbiguousRotation("rotation check failed on the certified box")
    return FixedPointCert(box, p, F, float(ratio), X, K)


def _canonical_krawczyk_box(X: IBox):
    """True if X is _newton_box(c, k) for a ladder k and c its snapped midpoint."""
    cx, cy = _snap(float(X.x.mid())), _snap(float(X.y.mid()))
    want = X.to_json()
    return any(_newton_box(cx, cy, k, int(X.sheet)).to_json() == want for k in RADIUS_LADDER)


def verify_fixed_point_cert(F, cert: FixedPointCert):
    """Re-run the Krawczyk inclusion, the refinement and the rotation check (used by recheck)."""
    canonical = cert.box.normalized().to_json() == cert.box.to_json() and int(cert.box.sheet) == 0
    if cert.method == "ivt":
        return (canonical and cert.newton_radius_ratio == 0.0 and _ivt_holds(F, cert.box, cert.rotation)
                and cert.evidence == _ivt_evidence(F, cert.box, cert.rotation))
    if not canonical or cert.krawczyk_box is None or not _canonical_krawczyk_box(cert.krawczyk_box):
        return False
    X = cert.krawczyk_box
    K, _ = krawczyk(F, X, cert.rotation)
    ok = K.x.interior_subset(X.x) and K.y.interior_subset(X.y)
    # the stored box must be exactly the refinement of K(X)
    refined = _refine(F, K, X, cert.rotation) if ok else None
    same_box = refined is not None and refined.to_json() == cert.box.to_json()
    dx, _ = F.displacement(cert.box)
    rot = dx.width() < 1 and list(dx.integers()) == [cert.rotation]
    same = cert.krawczyk_image is not None and K.to_json() == cert.krawczyk_image.to_json()
    same = same and cert.newton_radius_ratio == _contraction_ratio(X, K)
    return bool(ok and same_box and rot and same)


# The generalized family has decoupled fixed point equations: F(x, y) = (x + p, y)
# iff h(y) = p and v(sin(2 pi x)) = 0.  Sign changes (or exact zeros) of the two
# scalar functions at the box endpoints prove existence by the intermediate
# value theorem, which also covers the tangential zeros of periodic h where the
# Jacobian is singular and Krawczyk cannot apply.

def _scalar_sign(I: Interval):
    lo, hi = float(I.lo), float(I.hi)
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    if lo == 0 and hi == 0:
        return 0
    return None


def _root_proven(fn, J: Interval):
    if float(J.lo) == float(J.hi):
        return _scalar_sign(fn(J)) == 0
    a = _scalar_sign(fn(Interval.point(float(J.lo))))
    b = _scalar_sign(fn(Interval.point(float(J.hi))))
    if a is None or b is None:
        return False
    return a == 0 or b == 0 or a * b < 0


def _ivt_holds(F, box: IBox, p: int):
    if getattr(F, "kind", None) != "generalized":
        return False
    hy = lambda Y: F.H(Y) - float(p)
    vx = lambda X: F.V(X.sin2pi())
    return _root_proven(hy, box.y) and _root_proven(vx, box.x)


def _ivt_evidence(F, box: IBox, p: int):
    hy = lambda Y: F.H(Y) - float(p)
    vx = lambda X: F.V(X.sin2pi())
    out = {}
    for name, fn, J in (("h", hy, box.y), ("v", vx, box.x)):
        out[name] = [fn(Interval.point(float(J.lo))).to_hex(), fn(Interval.point(float(J.hi))).to_hex()]
    return out


def _bracket(fn, grid):
    """Exact zeros and sign-change brackets of a scalar interval function on a
    float grid, refined by bisection on float evaluations."""
    vals = fn(Interval.point(grid))
    sg = np.where(vals.lo > 0, 1, np.where(vals.hi < 0, -1, np.where((vals.lo == 0) & (vals.hi == 0), 0, 9)))
    out = []
    for k, g in enumerate(grid):
        if sg[k] == 0:
            out.append(Interval.point(float(g)))
    # sign changes between consecutive grid points of known sign (points
    # whose enclosure straddles zero are skipped over)
    known = np.nonzero((sg == 1) | (sg == -1))[0]
    for k0, k1 in zip(known[:-1], known[1:]):
        s0, s1 = sg[k0], sg[k1]
        if s0 != s1:
            lo, hi = float(grid[k0]), float(grid[k1])
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                if mid <= lo or mid >= hi:
                    break
                sm = _scalar_sign(fn(Interval.point(mid)))
                if sm is None or sm == 0:
                    break
                if sm == s0:
                    lo = mid
                else:
                    hi = mid
                if hi - lo < 1e-12:
                    break
            out.append(Interval(lo, hi))
    return out


def generalized_fixed_points(F, L: float, ny=None, nx=1024):
    """Existence-certified fixed points of a generalized family in [0,1] x [-L, L].

    Returns FixedPointCert objects with method "ivt", at most one per rotation
    (the one with smallest |y|)."""
    ny = ny or int(256 * 2 * math.ceil(L))
    ys = np.linspace(-float(L), float(L), ny + 1)
    hv = F.H(Interval(-float(L), float(L)))
    roots_x = _bracket(lambda X: F.V(X.sin2pi()), np.arange(nx + 1) / nx)
    if not roots_x:
        return []
    xr = roots_x[0]
    certs = []
    for p in range(int(math.ceil(float(hv.lo))), int(math.floor(float(hv.hi))) + 1):
        ry = _bracket(lambda Y: F.H(Y) - float(p), ys)
        if not ry:
            continue
        ry.sort(key=lambda J: (abs(float(J.mid())), float(J.lo)))
        box = IBox(xr, ry[0]).normalized()
        if _ivt_holds(F, box, p):
            certs.append(FixedPointCert(box, p, F, 0.0, None, None, "ivt", _ivt_evidence(F, box, p)))
    return certs


def find_fixed_points(F, y_range=(-6.0, 6.0), nx=48, ny=None, tol=1e-9):
    """Non-rigorous grid + Newton search. Returns sorted list of (x, y, p)."""
    y0, y1 = y_range
    ny = ny or int(max(8, 24 * (y1 - y0)))
    xs = (np.arange(nx) + 0.5) / nx
    ys = y0 + (np.arange(ny) + 0.5) * (y1 - y0) / ny
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    x, y = X.ravel().copy(), Y.ravel().copy()
    dx, _ = F.fdisp(x, y)
    p = np.round(dx)
    with np.errstate(all="ignore"):
        for _ in range(30):
            gx, gy = F.fdisp(x, y)
            gx = gx - p
            a, b, c, d = F.df(x, y)
            a, d = a - 1, d - 1
            det = a * d - b * c
            sx = (d * gx - b * gy) / det
            sy = (-c * gx + a * gy) / det
            # damped to stay near the seed basin
            lim = 0.25
            sx = np.clip(sx, -lim, lim)
            sy = np.clip(sy, -lim, lim)
            x, y = x - sx, y - sy
        gx, gy = F.fdisp(x, y)
    ok = np.isfinite(x) & np.isfinite(y) & (np.abs(gx - p) < tol) & (np.abs(gy) < tol)
    ok &= (y >= y0) & (y <= y1)
    found = []
    for xi, yi, pi in zip(x[ok], y[ok], p[ok]):
        xr = xi - math.floor(xi)
        if xr > 1 - 1e-9:
            xr -= 1.0
        dup = False
        for q in found:
            if abs(q[1] - yi) < 1e-7 and min(abs(q[0] - xr), 1 - abs(q[0] - xr)) < 1e-7 and q[2] == pi:
                dup = True
                break
        if not dup:
            found.append((float(xr), float(yi), int(pi)))
    found.sort(key=lambda t: (t[2], t[1], t[0]))
    return found


def rotational_difference(c0: FixedPointCert, c1: FixedPointCert) -> int:
    if c0.family is not c1.family and c0.family != c1.family:
        raise FamilyMismatch("certificates come from different families")
    return int(c1.rotation) - int(c0.rotation)


# ---------------------------------------------------------------- orbits

@dataclass(frozen=True)
class SubdivisionPolicy:
    width_threshold: float = 1e-3
    max_pieces: int = 2 ** 14
    blowup_limit: float = 10.0

    def to_json(self):
        return {"width_threshold": self.width_threshold, "max_pieces": self.max_pieces,
                "blowup_limit": self.blowup_limit}


@dataclass
class OrbitEnclosure:
    direction: str
    boxes: list
    seed: IBox
    subdivision_events: list = field(default_factory=list)

    def __len__(self):
        return len(self.boxes)

    def to_json(self):
        return {"direction": self.direction, "seed": self.seed.to_json(),
                "boxes": [b.to_json() for b in self.boxes],
                "subdivision_events": [list(e) for e in self.subdivision_events]}

    @classmethod
    def from_json(cls, d):
        return cls(d["direction"], [IBox.from_json(b) for b in d["boxes"]],
                   IBox.from_json(d["seed"]), [tuple(e) for e in d.get("subdivision_events", [])])


def _bisect(pieces: IBox, policy):
    """Bisect pieces wider than the threshold along their widest axis until
    all are small or the piece budget is spent."""
    events = 0
    while True:
        wx = np.atleast_1d(pieces.x.width())
        wy = np.atleast_1d(pieces.y.width())
        w = np.maximum(wx, wy)
        big = w > policy.width_threshold
        n = len(pieces)
        nb = int(big.sum())
        if nb == 0 or n + nb > policy.max_pieces:
            return pieces, events
        events += nb
        keep = pieces[~big]
        b = pieces[big]
        cut_x = wx[big] >= wy[big]
        mx = b.x.mid()
        my = b.y.mid()
        x1 = Interval(b.x.lo, np.where(cut_x, mx, b.x.hi))
        x2 = Interval(np.where(cut_x, mx, b.x.lo), b.x.hi)
        y1 = Interval(b.y.lo, np.where(cut_x, b.y.hi, my))
        y2 = Interval(np.where(cut_x, b.y.lo, my), b.y.hi)
        pieces = IBox.concat([keep, IBox(x1, y1, b.sheet), IBox(x2, y2, b.sheet)])


def _as_vector(box: IBox) -> IBox:
    if box.x.ndim:
        return box
    return IBox(Interval(np.atleast_1d(box.x.lo), np.atleast_1d(box.x.hi)),
                Interval(np.atleast_1d(box.y.lo), np.atleast_1d(box.y.hi)),
                np.atleast_1d(box.sheet))


def enclose_orbit(F, seed: IBox, n: int, direction="forward", policy=None,
                  keep_pieces=False) -> OrbitEnclosure:
    """Validated enclosure of n forward or backward iterates of every point of seed."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if direction not in ("forward", "backward"):
        raise ValueError("direction must be forward or backward")
    policy = policy or SubdivisionPolicy()
    sgn = 1 if direction == "forward" else -1
    seed = seed if seed.x.ndim == 0 else seed.hull()
    pieces = _as_vector(seed)
    boxes = [seed]
    events = []
    piece_log = [pieces] if keep_pieces else None
    for k in range(1, n + 1):
        pieces, ev = _bisect(pieces, policy)
        if ev:
            events.append((k - 1, len(pieces)))
        pieces = F.step(pieces, sgn)
        # deterministic reference sheet: that of the first piece
        h = pieces.hull(int(pieces.sheet[0]))
        if not h.is_finite() or h.width() > policy.blowup_limit:
            raise BlowupError(f"enclosure width {h.width():.3g} exceeds limit at step {k}")
        boxes.append(h.normalized())
        if keep_pieces:
            piece_log.append(pieces)
    orb = OrbitEnclosure(direction, boxes, seed, events)
    if keep_pieces:
        orb.pieces = piece_log
    return orb


def crossing_check(orb: OrbitEnclosure, level: float, side: str):
    """First step whose box lies entirely above +level (or below -level)."""
    if side not in ("above", "below"):
        raise ValueError("side must be above or below")
    for k, b in enumerate(orb.boxes):
        if side == "above" and float(b.y.lo) > level:
            return k
        if side == "below" and float(b.y.hi) < -level:
            return k
    return None


# ---------------------------------------------------------------- Birkhoff

def annulus_disjoint(A: IBox, B: IBox) -> bool:
    """True if the projections of A and B to the annulus are disjoint."""
    if float(A.y.hi) < float(B.y.lo) or float(B.y.hi) < float(A.y.lo):
        return True
    # need no integer m with (A + m) meeting B
    d = B.abs_x(int(A.sheet)) - A.x
    if d.width() >= 1:
        return False
    return len(d.integers()) == 0


@dataclass
class BirkhoffRecord:
    N: int
    dpn_ok: bool
    x_extent: tuple
    transit01: dict
    transit10: dict
    sizes: tuple

    def to_json(self):
        return {"N": self.N, "dpn_ok": self.dpn_ok, "x_extent": list(self.x_extent),
                "transit01": self.transit01, "transit10": self.transit10,
                "sizes": list(self.sizes)}


def _dpn_unions(F, U, rot, N, policy):
    orb = enclose_orbit(F, U, N, "forward", policy)
    # undo the drift of the fixed point so the union sits in one strip
    hulls = [b.translate(-j * rot) for j, b in enumerate(orb.boxes)]
    ref = int(hulls[0].sheet)
    lo = min(float(h.abs_x(ref).lo) for h in hulls)
    hi = max(float(h.abs_x(ref).hi) for h in hulls)
    return orb, hulls, hi - lo


def birkhoff_dpn(F, c0, c1, U0, U1, N, policy=None):
    policy = policy or SubdivisionPolicy()
    o0, h0, e0 = _dpn_unions(F, U0, c0.rotation, N, policy)
    o1, h1, e1 = _dpn_unions(F, U1, c1.rotation, N, policy)
    if not (e0 < 1 and e1 < 1):
        raise DpnFailure(f"union x-extent not below 1: {e0:.4g}, {e1:.4g}")
    for a in o0.boxes:
        for b in o1.boxes:
            if not annulus_disjoint(a, b):
                raise DpnFailure("forward images of U0 and U1 may intersect")
    return e0, e1


def _transit_search(F, U: IBox, V: IBox, max_iter, policy, max_live=4096, depth=60):
    """Branch and bound along the two diagonals of U for a point whose forward
    iterate enclosure lies strictly inside V (modulo deck translations)."""
    vx0, vx1 = float(V.x.lo), float(V.x.hi)
    vy0, vy1 = float(V.y.lo), float(V.y.hi)
    ux0, ux1 = float(U.x.lo), float(U.x.hi)
    uy0, uy1 = float(U.y.lo), float(U.y.hi)
    vs = int(V.sheet)
    diag = [((ux0, uy0), (ux1, uy1)), ((ux0, uy1), (ux1, uy0))]
    for k in range(1, max_iter + 1):
        for (ax, ay), (bx, by) in diag:
            t0 = np.array([0.0])
            t1 = np.array([1.0])
            for _ in range(depth):
                # segment piece boxes
                xa, xb = ax + t0 * (bx - ax), ax + t1 * (bx - ax)
                ya, yb = ay + t0 * (by - ay), ay + t1 * (by - ay)
                bx_ = Interval(np.minimum(xa, xb), np.maximum(xa, xb))
                by_ = Interval(np.minimum(ya, yb), np.maximum(ya, yb))
                box = IBox(bx_, by_, np.full(len(t0), int(U.sheet)))
                ok = np.ones(len(t0), bool)
                with np.errstate(all="ignore"):
                    for _ in range(k):
                        try:
                            box = F.eval_lift(box)
                        except Exception:
                            ok[:] = False
                            break
                if not ok.any():
                    break
                X = box.abs_x(vs)
                fin = np.isfinite(X.lo) & np.isfinite(X.hi) & np.isfinite(box.y.lo) & np.isfinite(box.y.hi)
                wx = np.where(fin, X.hi - X.lo, np.inf)
                # candidate shifts m: boxes must meet V + m
                ylive = (box.y.hi >= vy0) & (box.y.lo <= vy1)
                m_lo = np.ceil(X.lo - vx1)
                m_hi = np.floor(X.hi - vx0)
                live = fin & ylive & ((m_lo <= m_hi) | (wx >= 1))
                # test midpoints of live pieces as point boxes
                tm = 0.5 * (t0 + t1)
                for i in np.nonzero(live)[0][:64]:
                    p = IBox.point(ax + tm[i] * (bx - ax), ay + tm[i] * (by - ay)).translate(int(U.sheet))
                    if not (U.x.contains(float(p.x.lo)) and U.y.contains(float(p.y.lo))):
                        continue
                    q = p
                    for _ in range(k):
                        q = F.eval_lift(q)
                    Xq = q.abs_x(vs)
                    mm = math.floor(float(Xq.lo) - vx0)
                    for m in (mm, mm + 1):
                        if (Xq - m).interior_subset(V.x) and q.y.interior_subset(V.y):
                            return p, k, q, m
                if not live.any():
                    break
                t0, t1 = t0[live], t1[live]
                if len(t0) > max_live:
                    t0, t1 = t0[:max_live], t1[:max_live]
                tm = 0.5 * (t0 + t1)
                t0, t1 = np.concatenate([t0, tm]), np.concatenate([tm, t1])
    return None


def verify_birkhoff_related(F, c0, c1, U0: IBox, U1: IBox, N: int, max_iter: int,
                            policy=None) -> BirkhoffRecord:
    """Check that U0, U1 form an N-d.p.n. and that each one transits to the other."""
    if not (c0.box.subset(U0) and c1.box.subset(U1)):
        raise ValueError("fixed point boxes must lie in the neighbourhoods")
    e0, e1 = birkhoff_dpn(F, c0, c1, U0, U1, N, policy)
    out = {}
    for name, A, B in (("transit01", U0, U1), ("transit10", U1, U0)):
        hit = _transit_search(F, A, B, max_iter, policy)
        if hit is None:
            raise NoTransitFound(max_iter, f"{name}: no point box found", {"dpn_extent": (e0, e1)})
        p, k, q, m = hit
        out[name] = {"point": p.to_json(), "steps": k, "image": q.to_json(), "shift": m}
    sizes = (U0.width(), U1.width())
    return BirkhoffRecord(N, True, (e0, e1), out["transit01"], out["transit10"], sizes)
