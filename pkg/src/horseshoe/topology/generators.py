"""Random instances for the lemma tests.

Coordinates are dyadic rationals with small denominators so exact arithmetic
stays cheap. Every sampler returns ``None`` when a draw violates a
precondition (degenerate position, not an arc, ...); callers resample.
"""
from fractions import Fraction

from .geometry import DegeneratePosition, Polyline, TopologyError, contacts, is_arc, offset_range, shift
from .instances import banner_pair, winding_rectangle
from .invariants import Rectangle4

DEN = 256


def rat(rng, lo, hi, den=DEN):
    """Uniform dyadic rational in [lo, hi)."""
    return Fraction(int(rng.integers(int(lo * den), int(hi * den))), den)


def point(rng, box):
    x0, y0, x1, y1 = box
    return (rat(rng, x0, x1), rat(rng, y0, y1))


def polyline(rng, start, end, inner, box):
    pts = [start] + [point(rng, box) for _ in range(inner)] + [end]
    try:
        P = Polyline(pts)
    except ValueError:
        return None
    return P if is_arc(P) else None


def arc(rng, box=(0, 0, 1.5, 1), inner=None):
    inner = int(rng.integers(1, 4)) if inner is None else inner
    return polyline(rng, point(rng, box), point(rng, box), inner, box)


def arc_pair(rng):
    """Two arcs in a small window (the interval lemma)."""
    A, B = arc(rng), arc(rng, (0, 0, 2, 1))
    return None if A is None or B is None else (A, B)


def shared_endpoint_arcs(rng):
    """Arcs A, B with the same initial and final point in the annulus, plus an arc K."""
    box = (0, 0, 1.5, 1)
    z0, z1 = point(rng, box), point(rng, box)
    m = int(rng.integers(-1, 2))
    A = polyline(rng, z0, z1, int(rng.integers(1, 3)), box)
    B = polyline(rng, z0, shift(z1, m), int(rng.integers(1, 3)), (0, 0, 2.5, 1))
    K = arc(rng, (0, 0, 2, 1))
    if A is None or B is None or K is None:
        return None
    return A, B, K


def _point_on(rng, P):
    i = int(rng.integers(0, len(P.vertices) - 1))
    t = Fraction(int(rng.integers(1, DEN)), DEN)
    return P.at(i + t)


def separation_config(rng):
    """x, A, gamma with gamma joining A to A + k, k != 0 (so A u gamma is essential)."""
    if rng.random() < 0.5:
        A = arc(rng, (0, 0, 1.5, 1))
    else:
        # a slanted helix, several layers above its initial point
        L = rat(rng, 1, 3.5)
        s = rat(rng, 0.05, 0.3)
        pts = [(Fraction(0), Fraction(0)), (L, s * L)]
        if rng.random() < 0.5:
            pts.insert(1, (L / 2 + rat(rng, -0.2, 0.2), s * L / 2 + rat(rng, -0.02, 0.02)))
        A = Polyline(pts)
        if not is_arc(A):
            A = None
    if A is None:
        return None
    k = int(rng.choice([-2, -1, 1, 2]))
    p = _point_on(rng, A)
    q = shift(_point_on(rng, A), k)
    inner = int(rng.integers(0, 3))
    x0, x1 = min(p[0], q[0]), max(p[0], q[0])
    y0, y1 = A.yspan()
    box = (x0 - 0.25, y0 - 0.5, x1 + 0.25, y1 + 0.5)
    G = polyline(rng, p, q, inner, box)
    if G is None:
        return None
    return A.start, A, G


def winding_config(rng):
    """Jittered rectangle-winding configuration: x, A, R with a, b on lifts of A."""
    n = int(rng.integers(2, 5))
    c = rat(rng, 0.2, 0.8)
    w = rat(rng, 0.05, 0.3)
    x, A, R = winding_rectangle(n, c, w)
    # bend I and J through one random interior vertex each
    def bend(P):
        (px, py), (qx, qy) = P.start, P.end
        mid = (px + rat(rng, -0.1, 0.1) * w, (py + qy) / 2 + rat(rng, -0.05, 0.05))
        try:
            Q = Polyline([P.start, mid, P.end])
        except ValueError:
            return None
        return Q if is_arc(Q) else None
    Ip, Im = bend(R.Ip), bend(R.Im)
    if Ip is None or Im is None:
        return None
    R = Rectangle4(R.a, Ip, R.b, Im)
    try:
        R.check()
    except TopologyError:
        return None
    return x, A, R


def banner_config(rng):
    """Jittered banner pair with homotopic difference n in [10, 16]."""
    n = int(rng.integers(10, 17))
    slope = rat(rng, 1 / 64, 1 / 32, den=4096)
    thick = slope * rat(rng, 0.2, 0.8)
    x0 = rat(rng, 0.4, 0.6)
    bx = rat(rng, 0.25, 0.3)
    hook = x0 - rat(rng, 0.02, 0.08)
    try:
        return n, banner_pair(n, x0=x0, slope=slope, thick=thick, bx=bx, hook=hook)
    except ValueError:
        return None


def banner_hypotheses(B1, B2):
    """Disjointness hypotheses on a banner pair; raises DegeneratePosition if violated.

    (i) I+ misses F- and I- misses F+ in the annulus; (ii) A' u A and B u B'
    are disjoint, and each union is inessential.
    """
    for P, Q_ in ((B1.rect.Ip, B2.rect.Im), (B1.rect.Im, B2.rect.Ip)):
        if any(contacts(P, Q_, k) for k in offset_range(P, Q_)):
            raise DegeneratePosition("I and F sides meet")
    left = (B1.A, B2.A.translate(B1.A.start[0] - B2.A.start[0]))
    right = (B1.B, B2.B.translate(B1.B.end[0] - B2.B.end[0]))
    for P in left:
        for Q_ in right:
            if any(contacts(P, Q_, k) for k in offset_range(P, Q_)):
                raise DegeneratePosition("A u A' meets B u B'")
    for P, Q_ in (left, right):
        for k in offset_range(P, Q_):
            if k != 0 and contacts(P, Q_, k):
                raise DegeneratePosition("union of arcs is essential")
    return True


def sub_arc_between(K, p, q):
    """Sub-polyline of K from the point of K over p to the point over q."""
    def loc(pt):
        for k in offset_range(Polyline([pt, shift(pt, 1)]), K):
            s = K.locate(shift(pt, -k))
            if s is not None:
                return s
        raise DegeneratePosition("point not over K")
    return K.subarc(loc(p), loc(q))


__all__ = ["rat", "arc", "arc_pair", "shared_endpoint_arcs", "separation_config", "winding_config",
           "banner_config", "banner_hypotheses", "sub_arc_between"]


def rectangle_and_arc(rng):
    """Random quadrilateral rectangle (chains of one or two segments) and an arc."""
    cx, cy = rat(rng, 0.2, 0.6), rat(rng, 0.2, 0.6)
    w, h = rat(rng, 0.1, 0.35), rat(rng, 0.1, 0.35)
    jit = lambda: rat(rng, -0.05, 0.05)
    c = [(cx - w + jit(), cy - h + jit()), (cx - w + jit(), cy + h + jit()),
         (cx + w + jit(), cy + h + jit()), (cx + w + jit(), cy - h + jit())]
    chains = []
    for k in range(4):
        p, q = c[k], c[(k + 1) % 4]
        pts = [p, q]
        if rng.random() < 0.5:
            pts.insert(1, ((p[0] + q[0]) / 2 + jit(), (p[1] + q[1]) / 2 + jit()))
        try:
            chains.append(Polyline(pts))
        except ValueError:
            return None
    R = Rectangle4(*chains)
    try:
        R.check()
    except TopologyError:
        return None
    # a steep arc from below to above the rectangle, drifting up to 3 turns right
    span = rat(rng, 0, 3)
    C = polyline(rng, (rat(rng, -0.5, 0.5), rat(rng, -0.4, -0.2)), (span, rat(rng, 1.1, 1.4)),
                 int(rng.integers(0, 3)), (-0.5, -0.5, 3, 1.5))
    return None if C is None else (R, C)
