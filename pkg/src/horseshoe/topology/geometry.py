"""Exact rational polylines in the lift plane of the annulus.

Points are pairs of ``Fraction``; float inputs are promoted exactly. Contacts
between two polylines must be transversal crossings of segment interiors,
except at an endpoint of either polyline, where touching is allowed (arcs
sharing endpoints, arcs ending on other arcs). Anything else raises
``DegeneratePosition``; nothing is ever perturbed.
"""
from fractions import Fraction
import math


class TopologyError(Exception):
    pass


class DegeneratePosition(TopologyError):
    pass


class NoIntersection(TopologyError):
    pass


class EmptyI(TopologyError):
    pass


class IncidenceMismatch(TopologyError):
    pass


class NotEssential(TopologyError):
    pass


class TooManyLifts(TopologyError):
    pass


def Q(v):
    """Exact rational from int, float, Fraction or a string like '3/7'."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError("non-finite coordinate")
        return Fraction(v)
    if isinstance(v, (int, str)):
        return Fraction(v)
    raise TypeError(f"cannot make a rational from {type(v).__name__}")


def orient(a, b, c):
    """Sign of the cross product (b - a) x (c - a)."""
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def shift(p, k):
    return (p[0] + k, p[1])


class Polyline:
    __slots__ = ("vertices", "closed")

    def __init__(self, vertices, closed=False):
        vs = [(Q(x), Q(y)) for x, y in vertices]
        if len(vs) < 2:
            raise ValueError("a polyline needs at least two vertices")
        for p, q in zip(vs, vs[1:]):
            if p == q:
                raise ValueError("consecutive vertices must differ")
        if closed and vs[0] == vs[-1]:
            vs = vs[:-1]
        self.vertices = tuple(vs)
        self.closed = bool(closed)

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[0] if self.closed else self.vertices[-1]

    def segments(self):
        vs = self.vertices
        out = list(zip(vs, vs[1:]))
        if self.closed:
            out.append((vs[-1], vs[0]))
        return out

    def translate(self, k, dy=0):
        k, dy = Q(k), Q(dy)
        return Polyline([(x + k, y + dy) for x, y in self.vertices], self.closed)

    def reversed(self):
        return Polyline(self.vertices[::-1], self.closed)

    def xspan(self):
        xs = [p[0] for p in self.vertices]
        return min(xs), max(xs)

    def yspan(self):
        ys = [p[1] for p in self.vertices]
        return min(ys), max(ys)

    def endpoints(self):
        return () if self.closed else (self.vertices[0], self.vertices[-1])

    def subarc(self, s0, s1):
        """Sub-polyline between parameters s0 and s1 (reversed when s1 < s0).

        A parameter is ``i + t`` with segment index i and t in [0, 1].
        """
        if s1 < s0:
            return self.subarc(s1, s0).reversed()
        p0, p1 = self.at(s0), self.at(s1)
        if p0 == p1:
            raise ValueError("empty sub-arc")
        i0, i1 = math.floor(s0), math.floor(s1)
        pts = [p0] + [self.vertices[i] for i in range(i0 + 1, min(i1, len(self.vertices) - 1) + 1)]
        if pts[-1] != p1:
            pts.append(p1)
        return Polyline(_dedupe(pts))

    def at(self, s):
        s = Q(s)
        n = len(self.vertices) - 1
        if not 0 <= s <= n:
            raise ValueError("parameter out of range")
        i = min(math.floor(s), n - 1)
        t = s - i
        (ax, ay), (bx, by) = self.vertices[i], self.vertices[i + 1]
        return (ax + t * (bx - ax), ay + t * (by - ay))

    def locate(self, p):
        """Parameter of point p on the polyline, or None."""
        for i, (a, b) in enumerate(self.segments()):
            t = _on_segment(p, a, b)
            if t is not None:
                return i + t
        return None

    def is_simple(self):
        segs = self.segments()
        n = len(segs)
        for i in range(n):
            for j in range(i + 1, n):
                adjacent = j == i + 1 or (self.closed and i == 0 and j == n - 1)
                a, b = segs[i]
                c, d = segs[j]
                if adjacent:
                    # consecutive segments may share only their common vertex
                    shared = b if j == i + 1 else a
                    other = d if j == i + 1 else c
                    own = a if j == i + 1 else b
                    if orient(own, shared, other) == 0 and _between(own, shared, other) is False:
                        return False
                    continue
                if _segments_touch(a, b, c, d):
                    return False
        return True

    def to_json(self):
        return {"vertices": [[_qs(x), _qs(y)] for x, y in self.vertices], "closed": self.closed}

    @classmethod
    def from_json(cls, d):
        if isinstance(d, list):
            return cls(d)
        return cls(d["vertices"], d.get("closed", False))

    def __eq__(self, other):
        return isinstance(other, Polyline) and self.vertices == other.vertices and self.closed == other.closed

    def __hash__(self):
        return hash((self.vertices, self.closed))

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        pts = ", ".join(f"({_qs(x)}, {_qs(y)})" for x, y in self.vertices)
        return f"Polyline([{pts}]{', closed' if self.closed else ''})"


def _qs(v):
    return str(v)


def _dedupe(pts):
    out = [pts[0]]
    for p in pts[1:]:
        if p != out[-1]:
            out.append(p)
    return out


def _between(a, b, c):
    """For collinear a, b, c: True if b lies strictly between a and c."""
    if a[0] != c[0]:
        return min(a[0], c[0]) < b[0] < max(a[0], c[0])
    return min(a[1], c[1]) < b[1] < max(a[1], c[1])


def _on_segment(p, a, b):
    """Parameter t in [0, 1] with p = a + t (b - a), or None."""
    if orient(a, b, p) != 0:
        return None
    if a[0] != b[0]:
        t = (p[0] - a[0]) / (b[0] - a[0])
    else:
        t = (p[1] - a[1]) / (b[1] - a[1])
    return t if 0 <= t <= 1 else None


def _boxes_meet(a, b, c, d):
    return (max(min(a[0], b[0]), min(c[0], d[0])) <= min(max(a[0], b[0]), max(c[0], d[0]))
            and max(min(a[1], b[1]), min(c[1], d[1])) <= min(max(a[1], b[1]), max(c[1], d[1])))


def _segments_touch(a, b, c, d):
    if not _boxes_meet(a, b, c, d):
        return False
    o1, o2, o3, o4 = orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (o1 == 0 and _on_segment(c, a, b) is not None or o2 == 0 and _on_segment(d, a, b) is not None
            or o3 == 0 and _on_segment(a, c, d) is not None or o4 == 0 and _on_segment(b, c, d) is not None)


def segment_contact(a, b, c, d):
    """Contact of segments ab and cd as (point, t, u) with point = a + t(b-a) = c + u(d-c).

    Returns None when disjoint. Collinear overlap of positive length raises
    DegeneratePosition; a single shared point of collinear segments is returned.
    """
    if not _boxes_meet(a, b, c, d):
        return None
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 == 0 and o2 == 0:
        pts = []
        for p in (a, b):
            u = _on_segment(p, c, d)
            if u is not None:
                pts.append((p, _on_segment(p, a, b), u))
        for p in (c, d):
            t = _on_segment(p, a, b)
            if t is not None:
                pts.append((p, t, _on_segment(p, c, d)))
        uniq = {p[0]: p for p in pts}
        if len(uniq) > 1:
            raise DegeneratePosition(f"collinear overlap between {a}-{b} and {c}-{d}")
        return next(iter(uniq.values())) if uniq else None
    if o1 * o2 > 0 or o3 * o4 > 0:
        return None
    # lines cross at one point inside both closed segments
    rx, ry = b[0] - a[0], b[1] - a[1]
    sx, sy = d[0] - c[0], d[1] - c[1]
    den = rx * sy - ry * sx
    t = ((c[0] - a[0]) * sy - (c[1] - a[1]) * sx) / den
    u = ((c[0] - a[0]) * ry - (c[1] - a[1]) * rx) / den
    return (a[0] + t * rx, a[1] + t * ry), t, u


def contacts(P, Q_, k=0, prune=True):
    """All contact points of P with Q_ + (k, 0), ordered along P.

    Returns a list of (s, point, s_q) with s the parameter on P and s_q the
    parameter on the translate of Q_. Raises DegeneratePosition for a contact
    that is neither transversal nor at an endpoint of P or Q_.
    """
    k = Q(k)
    qsegs = [(shift(c, k), shift(d, k)) for c, d in Q_.segments()]
    ends = set(P.endpoints()) | {shift(p, k) for p in Q_.endpoints()}
    found = {}
    for i, (a, b) in enumerate(P.segments()):
        if prune:
            ax0, ax1 = min(a[0], b[0]), max(a[0], b[0])
        for j, (c, d) in enumerate(qsegs):
            if prune and (max(c[0], d[0]) < ax0 or min(c[0], d[0]) > ax1):
                continue
            hit = segment_contact(a, b, c, d)
            if hit is None:
                continue
            pt, t, u = hit
            if (t in (0, 1) or u in (0, 1)) and pt not in ends:
                raise DegeneratePosition(f"touching contact at {pt}")
            s = i + t
            if pt not in found or s < found[pt][0]:
                found[pt] = (s, pt, j + u)
    return sorted(found.values(), key=lambda r: r[0])


def meets(P, Q_, k=0, prune=True):
    return bool(contacts(P, Q_, k, prune))


def offset_range(P, Q_):
    """Integer offsets i for which the x-extents of P and Q_ + i overlap."""
    p0, p1 = P.xspan()
    q0, q1 = Q_.xspan()
    return range(math.ceil(p0 - q1), math.floor(p1 - q0) + 1)


def point_in_polygon(p, poly):
    """Strict inside test for a simple closed polygon; boundary points raise."""
    inside = False
    for a, b in poly.segments():
        if _on_segment(p, a, b) is not None:
            raise DegeneratePosition(f"point {p} on polygon boundary")
        if (a[1] > p[1]) != (b[1] > p[1]):
            xint = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if xint > p[0]:
                inside = not inside
    return inside


def signed_area(poly):
    vs = poly.vertices
    s = 0
    for (x0, y0), (x1, y1) in zip(vs, vs[1:] + vs[:1]):
        s += x0 * y1 - x1 * y0
    return s / 2


def is_arc(P):
    """Simple, and disjoint from all of its nonzero horizontal translates."""
    if P.closed or not P.is_simple():
        return False
    x0, x1 = P.xspan()
    span = math.ceil(x1 - x0)
    for k in range(1, span + 1):
        if contacts(P, P, k):
            return False
    return True


def concat(*parts):
    """Concatenate polylines whose ends coincide exactly."""
    pts = list(parts[0].vertices)
    for P in parts[1:]:
        if P.start != pts[-1]:
            raise IncidenceMismatch(f"{pts[-1]} != {P.start}")
        pts.extend(P.vertices[1:])
    return Polyline(_dedupe(pts))


def read_polyline(obj):
    """Polyline from JSON: a list of [x, y] pairs of rational strings or numbers."""
    if isinstance(obj, dict):
        return Polyline.from_json(obj)
    if not isinstance(obj, list) or not all(isinstance(p, list) and len(p) == 2 for p in obj):
        raise ValueError("expected an array of [x, y] pairs")
    return Polyline(obj)
