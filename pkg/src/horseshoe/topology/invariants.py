"""Integer invariants of arcs in the annulus, each with a brute-force twin.

Inputs are single lift components in the plane; the annulus is the quotient
by (x, y) ~ (x + 1, y). Every public function has an ``*_oracle`` companion
that gets the same number by a slower, independent route (wider offset scan,
no pruning, per-piece clipping) so the tests can compare them exactly.
"""
import math

from .geometry import (DegeneratePosition, EmptyI, IncidenceMismatch, NoIntersection, Polyline,
                       contacts, concat, is_arc, offset_range, point_in_polygon, shift, signed_area)


# -- theta -----------------------------------------------------------------

def _meets(A, B, i, prune=True):
    # identical arcs overlap everywhere; that is a meeting, not a degeneracy
    return A == B.translate(i) or bool(contacts(A, B, i, prune))


def theta_offsets(A, B):
    """Offsets i with A meeting B + (i, 0), fast path."""
    return [i for i in offset_range(A, B) if _meets(A, B, i)]


def _oracle_range(A, B):
    a0, a1 = A.xspan()
    b0, b1 = B.xspan()
    w = math.ceil((a1 - a0) + (b1 - b0)) + 1
    c = round(a0 - b0)
    return range(c - w, c + w + 1)


def theta_offsets_oracle(A, B):
    return [i for i in _oracle_range(A, B) if _meets(A, B, i, prune=False)]


def theta(A, B):
    """Number of integer translates of B that meet A."""
    return len(theta_offsets(A, B))


def theta_oracle(A, B):
    return len(theta_offsets_oracle(A, B))


def _contiguous(ks):
    return not ks or ks == list(range(min(ks), max(ks) + 1))


def interval_property(A, B):
    """Whether the meeting offsets form a block of consecutive integers."""
    return _contiguous(theta_offsets(A, B))


# -- nu --------------------------------------------------------------------

def _first_last(A, K, rng, prune=True):
    hits = []
    for j in rng:
        for s, pt, _ in contacts(A, K, j, prune):
            hits.append((s, j, pt))
    if not hits:
        raise NoIntersection("arcs do not meet")
    hits.sort(key=lambda h: h[0])
    lo, hi = hits[0], hits[-1]
    if sum(h[0] == lo[0] for h in hits) > 1 or sum(h[0] == hi[0] for h in hits) > 1:
        raise DegeneratePosition("two lifts of K meet A at the same point")
    return lo, hi


def nu(A, K):
    """Offset between the lifts of K through the first and last points of A on K."""
    lo, hi = _first_last(A, K, offset_range(A, K))
    return hi[1] - lo[1]


def nu_oracle(A, K):
    lo, hi = _first_last(A, K, _oracle_range(A, K), prune=False)
    return hi[1] - lo[1]


def nu_contacts(A, K):
    """(s, j, point) of the first and last contact of A with the lifts of K."""
    return _first_last(A, K, offset_range(A, K))


# -- rectangles and mu -----------------------------------------------------

class Rectangle4:
    """Rectangle (a, Ip, b, Im): four chains closing a simple polygon.

    The chain order is a, then I+, then b, then I-, each starting where the
    previous one ends. ``check()`` verifies closure, simplicity and that the
    polygon is disjoint from its nonzero horizontal translates.
    """

    def __init__(self, a, Ip, b, Im):
        self.a, self.Ip, self.b, self.Im = a, Ip, b, Im
        self.chains = (a, Ip, b, Im)

    def polygon(self):
        loop = concat(self.a, self.Ip, self.b, self.Im)
        if loop.vertices[-1] != loop.vertices[0]:
            raise IncidenceMismatch("rectangle chains do not close")
        return Polyline(loop.vertices[:-1], closed=True)

    def check(self):
        P = self.polygon()
        if not P.is_simple():
            raise DegeneratePosition("rectangle boundary is not simple")
        x0, x1 = P.xspan()
        for k in range(1, math.ceil(x1 - x0) + 1):
            if contacts(P, P, k):
                raise DegeneratePosition("rectangle meets its own translate")
        return P

    def translate(self, k):
        return Rectangle4(*(c.translate(k) for c in self.chains))

    def to_json(self):
        return {"a": self.a.to_json(), "Ip": self.Ip.to_json(), "b": self.b.to_json(), "Im": self.Im.to_json()}

    @classmethod
    def from_json(cls, d):
        return cls(*(Polyline.from_json(d[k]) for k in ("a", "Ip", "b", "Im")))


def _chain_of(R, pt):
    """Index of the rectangle chain carrying boundary point pt."""
    found = set()
    for idx, C in enumerate(R.chains):
        if C.locate(pt) is not None:
            found.add(idx)
    if len(found) != 1:
        raise DegeneratePosition(f"boundary point {pt} at a chain junction")
    return found.pop()


def _boundary_hits(C, R, P, k, prune=True):
    hits = contacts(C.translate(k), P, 0, prune)
    for s, pt, _ in hits:
        if pt in C.translate(k).endpoints():
            raise DegeneratePosition("arc endpoint on the rectangle boundary")
    return [(s, pt) for s, pt, _ in hits]


def _mid(C, s0, s1):
    return C.at((s0 + s1) / 2)


def crossing_offsets(R, C):
    """Offsets i such that C + (i, 0) contains an arc inside R from I+ to I-."""
    P = R.check()
    out = []
    for i in offset_range(P, C):
        Ci = C.translate(i)
        hits = _boundary_hits(C, R, P, i)
        if not hits:
            continue
        # walk along the arc, toggling inside/outside at each transversal crossing
        inside = point_in_polygon(Ci.start, P)
        prev = None
        ok = False
        for s, pt in hits:
            side = _chain_of(R, pt)
            if inside and prev is not None and {prev, side} == {1, 3}:
                ok = True
            inside = not inside
            prev = side
        if ok:
            out.append(i)
    return out


def crossing_offsets_oracle(R, C):
    """Same set, by classifying every piece between crossings independently."""
    P = R.check()
    out = []
    x0, x1 = P.xspan()
    c0, c1 = C.xspan()
    for i in range(math.floor(x0 - c1) - 2, math.ceil(x1 - c0) + 3):
        Ci = C.translate(i)
        hits = _boundary_hits(C, R, P, i, prune=False)
        ss = [0] + [s for s, _ in hits] + [len(Ci.vertices) - 1]
        sides = [None] + [_chain_of(R, pt) for _, pt in hits] + [None]
        for j in range(len(ss) - 1):
            if ss[j] == ss[j + 1]:
                continue
            if point_in_polygon(_mid(Ci, ss[j], ss[j + 1]), P) and {sides[j], sides[j + 1]} == {1, 3}:
                out.append(i)
                break
    return out


def mu(R, C):
    """max I - min I over the offsets I whose translate of C crosses R from I+ to I-."""
    ks = crossing_offsets(R, C)
    if not ks:
        raise EmptyI("no translate of the arc crosses the rectangle")
    return max(ks) - min(ks)


def mu_oracle(R, C):
    ks = crossing_offsets_oracle(R, C)
    if not ks:
        raise EmptyI("no translate of the arc crosses the rectangle")
    return max(ks) - min(ks)


# -- banners ---------------------------------------------------------------

class Banner:
    """Rectangle (a, I+, b, I-) with arcs A, B.

    A ends with the chain a (so A's final point is a's end, the corner a/I+);
    B starts with the chain b (B's first point is b's start, the corner I+/b).
    The initial point of the banner is A's start, the final point B's end.
    """

    def __init__(self, rect, A, B):
        self.rect, self.A, self.B = rect, A, B

    @property
    def initial(self):
        return self.A.start

    @property
    def final(self):
        return self.B.end

    def check(self):
        P = self.rect.check()
        a, b = self.rect.a, self.rect.b
        A, B = self.A, self.B
        if A.vertices[len(A) - len(a):] != a.vertices or len(A) <= len(a):
            raise IncidenceMismatch("A must end with the chain a")
        if B.vertices[:len(b)] != b.vertices or len(B) <= len(b):
            raise IncidenceMismatch("B must start with the chain b")
        if not (is_arc(A) and is_arc(B)):
            raise DegeneratePosition("A and B must be arcs")
        if any(contacts(A, B, k) for k in offset_range(A, B)):
            raise DegeneratePosition("A and B must be disjoint")
        # outside a and b, the arcs stay off every lift of the rectangle
        A_out = Polyline(A.vertices[:len(A) - len(a) + 1])
        B_out = Polyline(B.vertices[len(b) - 1:])
        for tail, corner, far in ((A_out, a.start, A.start), (B_out, b.end, B.end)):
            for k in offset_range(tail, P):
                for _, pt, _ in contacts(tail, P, k):
                    if not (k == 0 and pt == corner):
                        raise DegeneratePosition("banner arc meets the rectangle outside a and b")
            for k in offset_range(Polyline([far, shift(far, 1)]), P):
                if point_in_polygon(shift(far, -k), P):
                    raise DegeneratePosition("banner endpoint inside the rectangle")
        return True

    def plus_path(self):
        """A, then I+, then B: initial point to final point through I+."""
        return [self.A, self.rect.Ip, self.B]

    def minus_path(self):
        """A up to a's start, then I- backwards, then B from b's end."""
        a, b = self.rect.a, self.rect.b
        A_m = Polyline(self.A.vertices[:len(self.A) - len(a) + 1])
        B_m = Polyline(self.B.vertices[len(b) - 1:])
        return [A_m, self.rect.Im.reversed(), B_m]

    def translate(self, k):
        return Banner(self.rect.translate(k), self.A.translate(k), self.B.translate(k))

    def to_json(self):
        return {"rect": self.rect.to_json(), "A": self.A.to_json(), "B": self.B.to_json()}

    @classmethod
    def from_json(cls, d):
        return cls(Rectangle4.from_json(d["rect"]), Polyline.from_json(d["A"]), Polyline.from_json(d["B"]))


def _integer_shift(p, q):
    """Integer k with q = p + (k, 0), else IncidenceMismatch."""
    dx = q[0] - p[0]
    if q[1] != p[1] or dx.denominator != 1:
        raise IncidenceMismatch(f"{q} does not project onto {p}")
    return int(dx)


def lift_endpoint(pieces, start):
    """Endpoint of the lift, starting at ``start``, of the concatenated projections.

    Each piece may be given in any lift; it is translated by the integer that
    glues its start to the current endpoint.
    """
    cur = start
    for P in pieces:
        cur = shift(P.end, _integer_shift(P.start, cur))
    return cur


def homotopic_difference(B1, B2, check=True):
    """x-offset between the final points of the lifts through I+ and F+.

    Both lifts start at the same lift of the common initial point; the value
    is pr1(end2 - end1), computed again through I- and F- and asserted equal.
    """
    if check:
        B1.check()
        B2.check()
    z0 = B1.initial
    _integer_shift(z0, B2.initial)
    _integer_shift(B1.final, B2.final)
    out = []
    for path in ("plus_path", "minus_path"):
        e1 = lift_endpoint(getattr(B1, path)(), z0)
        e2 = lift_endpoint(getattr(B2, path)(), z0)
        out.append(_integer_shift(e1, e2))
    if out[0] != out[1]:
        raise IncidenceMismatch(f"I+ route gives {out[0]}, I- route gives {out[1]}")
    return out[0]


def rect_nu(R, A):
    """|nu(I, A)| for a rectangle whose a and b sides lie on lifts of A."""
    return abs(nu(R.Ip, A))


__all__ = ["theta", "theta_oracle", "theta_offsets", "theta_offsets_oracle", "interval_property",
           "nu", "nu_oracle", "nu_contacts", "Rectangle4", "Banner", "crossing_offsets",
           "crossing_offsets_oracle", "mu", "mu_oracle", "homotopic_difference", "lift_endpoint",
           "rect_nu", "signed_area"]
