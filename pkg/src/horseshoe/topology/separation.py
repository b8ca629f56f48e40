"""Separation numbers of a point with respect to two arcs.

The lifts of A and gamma inside a window of the strip are cut into an exact
planar arrangement. Faces are joined across edges of A-lifts, each edge
labelled with the index j of its lift A + (j, 0); edges of gamma-lifts and of
the window frame cannot be crossed. The separation number is the least number
of distinct labels on a face path from the face of x to a face touching the
top (upper) or bottom (lower) of the frame.

Paths are confined to the window: the x-extent of the two arcs widened by
``margin`` on each side (default 1). The tests check that the value does not
change when the margin grows.
"""
from collections import deque
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
import math

from .geometry import (DegeneratePosition, NotEssential, TooManyLifts, Polyline, contacts,
                       is_arc, offset_range, segment_contact, shift)

MAX_LIFTS = 16
DEFAULT_MARGIN = 1
# keeps the frame off rational vertices with small denominators
_JITTER = Fraction(1, 7919)


def is_essential(A, G):
    """Whether the projection of A u gamma contains an essential loop.

    Lifts of A are pairwise disjoint and so are lifts of gamma, so the lift
    graph links A + i to A + i + d1 - d2 through gamma exactly when gamma
    meets two distinct lifts A + d1, A + d2.
    """
    return len([d for d in offset_range(G, A) if contacts(G, A, d)]) >= 2


def _clip(p, q, box):
    """Liang-Barsky clip of segment pq to the closed box; None if outside."""
    x0, y0, x1, y1 = box
    dx, dy = q[0] - p[0], q[1] - p[1]
    t0, t1 = Fraction(0), Fraction(1)
    for pk, qk in ((-dx, p[0] - x0), (dx, x1 - p[0]), (-dy, p[1] - y0), (dy, y1 - p[1])):
        if pk == 0:
            if qk < 0:
                return None
            continue
        r = qk / pk
        if pk < 0:
            t0 = max(t0, r)
        else:
            t1 = min(t1, r)
    if t0 >= t1:
        return None
    return ((p[0] + t0 * dx, p[1] + t0 * dy), (p[0] + t1 * dx, p[1] + t1 * dy))


def _half(d):
    return 0 if d[1] > 0 or (d[1] == 0 and d[0] > 0) else 1


def _angle_cmp(d1, d2):
    h1, h2 = _half(d1), _half(d2)
    if h1 != h2:
        return h1 - h2
    c = d1[0] * d2[1] - d1[1] * d2[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


class Arrangement:
    """Exact planar arrangement of tagged segments clipped to a box."""

    def __init__(self, segs, box):
        self.box = box
        x0, y0, x1, y1 = box
        corners = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
        tags = ["bottom", "right", "top", "left"]
        items = []
        for (p, q), tag in segs:
            c = _clip(p, q, box)
            if c is not None and c[0] != c[1]:
                items.append((c, tag))
        for k in range(4):
            items.append(((corners[k], corners[(k + 1) % 4]), ("F", tags[k])))
        self._build(items, set(corners))

    def _build(self, items, corners):
        n = len(items)
        cuts = [{0: items[i][0][0], 1: items[i][0][1]} for i in range(n)]
        bbox = []
        for (p, q), _ in items:
            bbox.append((min(p[0], q[0]), max(p[0], q[0]), min(p[1], q[1]), max(p[1], q[1])))
        for i in range(n):
            (a, b), ti = items[i]
            bi = bbox[i]
            for j in range(i + 1, n):
                bj = bbox[j]
                if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2]:
                    continue
                (c, d), tj = items[j]
                hit = segment_contact(a, b, c, d)
                if hit is None:
                    continue
                pt, t, u = hit
                if pt in corners and not (ti[0] == "F" and tj[0] == "F"):
                    raise DegeneratePosition("arrangement vertex at a window corner")
                cuts[i][t] = pt
                cuts[j][u] = pt
        self.vid = {}
        self.pts = []
        edges = {}
        for i in range(n):
            tag = items[i][1]
            ps = [cuts[i][t] for t in sorted(cuts[i])]
            for p, q in zip(ps, ps[1:]):
                if p == q:
                    continue
                u, v = self._v(p), self._v(q)
                key = (min(u, v), max(u, v))
                if key in edges and edges[key] != tag:
                    raise DegeneratePosition("two arcs share an edge")
                edges[key] = tag
        # half-edges 2e (u -> v) and 2e + 1 (v -> u)
        self.edges = list(edges.items())
        self.head, self.tag = [], []
        out = [[] for _ in self.pts]
        for e, ((u, v), tag) in enumerate(self.edges):
            self.head += [v, u]
            self.tag += [tag, tag]
            out[u].append(2 * e)
            out[v].append(2 * e + 1)
        self.origin = [0] * len(self.head)
        for h in range(len(self.head)):
            self.origin[h] = self.head[h ^ 1]
        pos = {}
        for v, hs in enumerate(out):
            o = self.pts[v]
            hs.sort(key=cmp_to_key(lambda h1, h2: _angle_cmp(self._dir(h1, o), self._dir(h2, o))))
            for k, h in enumerate(hs):
                pos[h] = (v, k)
        self.out = out
        # next(h): at the head of h, the outgoing edge just clockwise of the twin
        self.next = [0] * len(self.head)
        for h in range(len(self.head)):
            v, k = pos[h ^ 1]
            hs = out[v]
            self.next[h] = hs[(k - 1) % len(hs)]
        self.face = [-1] * len(self.head)
        self.cycles = []
        for h in range(len(self.head)):
            if self.face[h] >= 0:
                continue
            f = len(self.cycles)
            cyc = []
            while self.face[h] < 0:
                self.face[h] = f
                cyc.append(h)
                h = self.next[h]
            self.cycles.append(cyc)
        self.area = [self._area(c) for c in self.cycles]

    def _v(self, p):
        if p not in self.vid:
            self.vid[p] = len(self.pts)
            self.pts.append(p)
        return self.vid[p]

    def _dir(self, h, o):
        p = self.pts[self.head[h]]
        return (p[0] - o[0], p[1] - o[1])

    def _area(self, cyc):
        s = Fraction(0)
        for h in cyc:
            (x0, y0), (x1, y1) = self.pts[self.origin[h]], self.pts[self.head[h]]
            s += x0 * y1 - x1 * y0
        return s / 2

    def connected(self):
        seen = {0}
        todo = [0]
        while todo:
            v = todo.pop()
            for h in self.out[v]:
                w = self.head[h]
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.pts)

    def outer_face(self):
        # the frame cycle traversed with the box on its right
        cands = [f for f, cyc in enumerate(self.cycles)
                 if all(self.tag[h][0] == "F" for h in cyc) and self.area[f] < 0]
        if len(cands) != 1:
            raise DegeneratePosition("could not identify the unbounded face")
        return cands[0]

    def faces_on(self, side):
        outer = self.outer_face()
        return {self.face[h] for h in range(len(self.head))
                if self.tag[h] == ("F", side) and self.face[h] != outer}


def _window(A, G, margin):
    a0, a1 = A.xspan()
    g0, g1 = G.xspan()
    lo, hi = min(a0, g0), max(a1, g1)
    if margin is None:
        margin = DEFAULT_MARGIN
    y0 = min(A.yspan()[0], G.yspan()[0]) - 1 - _JITTER
    y1 = max(A.yspan()[1], G.yspan()[1]) + 1 + _JITTER
    return (lo - margin - _JITTER, y0, hi + margin + _JITTER, y1)


def _lifts(P, box):
    x0, _, x1, _ = box
    frame = Polyline([(x0, 0), (x1, 0)])
    return offset_range(frame, P)


def _check_inputs(x, A, G):
    if A.start != x:
        raise ValueError("x must be the initial point of A")
    if not is_arc(A) or not is_arc(G):
        raise DegeneratePosition("A and gamma must be arcs")
    for end in G.endpoints():
        if not any(A.locate(shift(end, -k)) is not None for k in offset_range(G, A)):
            raise ValueError("both endpoints of gamma must lie on A")
    for k in offset_range(A, G):
        if G.locate(shift(x, -k)) is not None:
            raise ValueError("gamma must avoid x")
    if not is_essential(A, G):
        raise NotEssential("A u gamma does not separate the two ends")


class _Graph:
    def __init__(self, arr, x):
        if x not in arr.vid:
            raise DegeneratePosition("x is not an arrangement vertex")
        vx = arr.vid[x]
        if len(arr.out[vx]) != 1:
            raise DegeneratePosition("x must be a free end of A")
        self.start = arr.face[arr.out[vx][0]]
        labels = sorted({arr.tag[h][1] for h in range(len(arr.head)) if arr.tag[h][0] == "A"})
        self.labels = labels
        bit = {j: 1 << k for k, j in enumerate(labels)}
        adj = [set() for _ in arr.cycles]
        for h in range(len(arr.head)):
            t = arr.tag[h]
            if t[0] == "A" and arr.face[h] != arr.face[h ^ 1]:
                adj[arr.face[h]].add((arr.face[h ^ 1], bit[t[1]]))
        self.adj = [sorted(a) for a in adj]

    def reach(self, mask, targets):
        seen = {self.start}
        todo = [self.start]
        while todo:
            f = todo.pop()
            if f in targets:
                return True
            for g, b in self.adj[f]:
                if b & mask and g not in seen:
                    seen.add(g)
                    todo.append(g)
        return False

    def greedy(self, targets):
        """Labels on a path with fewest crossings (an upper bound), or None."""
        prev = {self.start: None}
        q = deque([self.start])
        while q:
            f = q.popleft()
            if f in targets:
                used = set()
                while prev[f] is not None:
                    f, b = prev[f]
                    used.add(b)
                return used
            for g, b in self.adj[f]:
                if g not in prev:
                    prev[g] = (f, b)
                    q.append(g)
        return None


def _setup(x, A, G, side, margin):
    if side not in ("upper", "lower"):
        raise ValueError("side must be 'upper' or 'lower'")
    x = (Fraction(x[0]), Fraction(x[1]))
    _check_inputs(x, A, G)
    box = _window(A, G, margin)
    segs = []
    for tag, P in (("A", A), ("G", G)):
        for j in _lifts(P, box):
            for p, q in P.translate(j).segments():
                segs.append(((p, q), (tag, j)))
    arr = Arrangement(segs, box)
    if not arr.connected():
        raise DegeneratePosition("window too narrow: arrangement is disconnected")
    graph = _Graph(arr, x)
    if len(graph.labels) > MAX_LIFTS:
        raise TooManyLifts(f"{len(graph.labels)} lifts of A in the window (limit {MAX_LIFTS})")
    targets = arr.faces_on("top" if side == "upper" else "bottom")
    return arr, graph, targets


def sep_details(x, A, G, side="upper", margin=None):
    """Separation number with the greedy bound and the arrangement size."""
    arr, graph, targets = _setup(x, A, G, side, margin)
    greedy = graph.greedy(targets)
    if greedy is None:
        raise DegeneratePosition("target side unreachable inside the window")
    ub = len(greedy)
    bits = [1 << k for k in range(len(graph.labels))]
    value = ub
    for s in range(ub):
        if any(graph.reach(sum(c), targets) for c in combinations(bits, s)):
            value = s
            break
    return {"value": value, "greedy": ub, "lifts": len(graph.labels),
            "faces": len(arr.cycles), "vertices": len(arr.pts)}


def sep(x, A, G, side="upper", margin=None):
    """Upper or lower separation number of x (the initial point of A) w.r.t. A and gamma."""
    return sep_details(x, A, G, side, margin)["value"]


def sep_oracle(x, A, G, side="upper", margin=None):
    """Exhaustive minimum over all 2^K label subsets."""
    arr, graph, targets = _setup(x, A, G, side, margin)
    K = len(graph.labels)
    best = None
    for mask in range(1 << K):
        c = bin(mask).count("1")
        if best is not None and c >= best:
            continue
        if graph.reach(mask, targets):
            best = c
    if best is None:
        raise DegeneratePosition("target side unreachable inside the window")
    return best


__all__ = ["sep", "sep_details", "sep_oracle", "is_essential", "Arrangement", "MAX_LIFTS"]
