"""Annulus map families given by their lifts to the plane.

Two families are supported:

* ``Dissipative(a, b)``:  F(x, y) = (x + a y,  b y + sin(2 pi (x + a y)))
* ``Generalized(h, w)``:  F(x, y) = (x + h(y),  y + v(sin(2 pi (x + h(y)))))
  with v = w - mean and mean the integral of w(sin(2 pi t)) over [0, 1].

``Power(F, k)`` composes a family with itself.  All rigorous entry points
take and return ``IBox`` values; the float methods ``f``, ``finv`` and ``df``
exist for the non-rigorous search front ends.
"""
from __future__ import annotations

import math

import numpy as np

from . import expr as ex
from .interval import (TWO_PI, DomainError, IBox, IMatrix2, Interval,
                       inf_norm)

__all__ = [
    "MapFamily", "Dissipative", "Generalized", "Power", "expansion_bound",
    "vertical_displacement_bound", "mean_quadrature", "family_from_json",
]


def _param(v):
    if isinstance(v, Interval):
        return v
    if isinstance(v, str):
        return Interval.from_decimal(v)
    if isinstance(v, (list, tuple)):
        return Interval(v[0], v[1])
    return Interval.point(float(v))


class MapFamily:
    kind = "abstract"

    def eval_lift(self, box: IBox) -> IBox:
        raise NotImplementedError

    def eval_lift_inverse(self, box: IBox) -> IBox:
        raise NotImplementedError

    def jacobian(self, box: IBox) -> IMatrix2:
        raise NotImplementedError

    def displacement(self, box: IBox):
        """Enclosures of F(z) - z over the box, without the x dependency."""
        raise NotImplementedError

    def power(self, k):
        return self if k == 1 else Power(self, k)

    def step(self, box, direction=1):
        return self.eval_lift(box) if direction > 0 else self.eval_lift_inverse(box)

    def fstep(self, x, y, direction=1):
        return self.f(x, y) if direction > 0 else self.finv(x, y)

    def __eq__(self, other):
        return isinstance(other, MapFamily) and self.to_json() == other.to_json()

    def __hash__(self):
        return hash(repr(self.to_json()))


def _like(I, ref):
    """Broadcast the value of a constant expression to the shape of its argument."""
    if I.shape == ref.shape:
        return I
    return Interval._raw(np.broadcast_to(I.lo, ref.shape).copy(), np.broadcast_to(I.hi, ref.shape).copy())


def _frac(u):
    return u - np.floor(u)


class Dissipative(MapFamily):
    kind = "dissipative"

    def __init__(self, a, b):
        self.a = _param(a)
        self.b = _param(b)
        if self.a.ndim or self.b.ndim:
            raise ValueError("parameters must be scalar intervals")
        if not (self.b.lo > 0 and self.b.hi < 1):
            raise ValueError("b must lie inside (0, 1)")
        self._bm1 = self.b - 1.0
        self._am = self.a.mid()
        self._bmid = self.b.mid()

    def eval_lift(self, box):
        u = box.x + self.a * box.y
        y = self.b * box.y + u.sin2pi()
        return IBox(u, y, box.sheet).normalized()

    def eval_lift_inverse(self, box):
        y = (box.y - box.x.sin2pi()) / self.b
        x = box.x - self.a * y
        return IBox(x, y, box.sheet).normalized()

    def jacobian(self, box):
        u = box.x + self.a * box.y
        c = TWO_PI * u.cos2pi()
        one = Interval.point(np.ones(box.shape))
        return IMatrix2(one, _like(self.a, one), c, self.b + c * self.a)

    def displacement(self, box):
        u = box.x + self.a * box.y
        return self.a * box.y, self._bm1 * box.y + u.sin2pi()

    # float versions
    def f(self, x, y):
        u = x + self._am * y
        return u, self._bmid * y + np.sin(2 * np.pi * _frac(u))

    def finv(self, x, y):
        yy = (y - np.sin(2 * np.pi * _frac(x))) / self._bmid
        return x - self._am * yy, yy

    def df(self, x, y):
        u = x + self._am * y
        c = 2 * np.pi * np.cos(2 * np.pi * _frac(u))
        one = np.ones_like(c)
        return one, self._am * one, c, self._bmid + c * self._am

    def fdisp(self, x, y):
        u = x + self._am * y
        return self._am * y, (self._bmid - 1) * y + np.sin(2 * np.pi * _frac(u))

    def to_json(self):
        return {"kind": self.kind, "a": self.a.to_hex(), "b": self.b.to_hex()}

    def describe(self):
        return f"dissipative a={self.a!r} b={self.b!r}"

    def __repr__(self):
        return f"Dissipative(a={self.a!r}, b={self.b!r})"


class Generalized(MapFamily):
    """Generalized standard family built from expressions h (of y) and w."""

    kind = "generalized"

    def __init__(self, h, w, mean=None, p=None, quad_slices=2048, check=True):
        self.h = ex.parse(h) if isinstance(h, str) else h
        self.w = ex.parse(w) if isinstance(w, str) else w
        ex.unary_function(self.h, "h")
        ex.unary_function(self.w, "w")
        self.hp = self.h.diff(ex.unary_function(self.h) or "y")
        wv = ex.unary_function(self.w) or "x"
        self.wp = self.w.diff(wv)
        ex.domain_check(self.w, Interval(-1.0, 1.0))
        ex.domain_check(self.wp, Interval(-1.0, 1.0))
        if mean is None:
            mean = mean_quadrature(self.w, quad_slices, method="taylor")
        self.mean = _param(mean)
        self.quad_slices = quad_slices
        if p is None:
            p = infer_period(self.h)
        self.p = int(p)
        self.coverage = None
        if check:
            check_period(self.h, self.p)
            self.coverage = check_coverage(self.h)
            if self.coverage is None:
                raise ValueError("h([-1,1]) must contain [-1,1]")

    # helpers --------------------------------------------------------
    def H(self, y):
        return _like(self.h.ieval(ex.bind(self.h, y)), y)

    def Hp(self, y):
        return _like(self.hp.ieval(ex.bind(self.hp, y)), y)

    def V(self, s):
        return _like(self.w.ieval(ex.bind(self.w, s)), s) - self.mean

    def Wp(self, s):
        return _like(self.wp.ieval(ex.bind(self.wp, s)), s)

    def eval_lift(self, box):
        u = box.x + self.H(box.y)
        y = box.y + self.V(u.sin2pi())
        return IBox(u, y, box.sheet).normalized()

    def eval_lift_inverse(self, box):
        y = box.y - self.V(box.x.sin2pi())
        x = box.x - self.H(y)
        return IBox(x, y, box.sheet).normalized()

    def jacobian(self, box):
        hp = self.Hp(box.y)
        u = box.x + self.H(box.y)
        c = TWO_PI * u.cos2pi()
        g = self.Wp(u.sin2pi()) * c
        one = Interval.point(np.ones(box.shape))
        return IMatrix2(one, hp, g, one + g * hp)

    def displacement(self, box):
        hy = self.H(box.y)
        u = box.x + hy
        return hy, self.V(u.sin2pi())

    # float versions
    def _hf(self, y):
        return np.asarray(self.h.feval(ex.bind(self.h, y)), dtype=float) + 0 * y

    def _vf(self, s):
        return np.asarray(self.w.feval(ex.bind(self.w, s)), dtype=float) + 0 * s - self.mean.mid()

    def f(self, x, y):
        u = x + self._hf(y)
        return u, y + self._vf(np.sin(2 * np.pi * _frac(u)))

    def finv(self, x, y):
        yy = y - self._vf(np.sin(2 * np.pi * _frac(x)))
        return x - self._hf(yy), yy

    def df(self, x, y):
        hp = np.asarray(self.hp.feval(ex.bind(self.hp, y)), dtype=float) + 0 * y
        u = _frac(x + self._hf(y))
        s = np.sin(2 * np.pi * u)
        g = np.asarray(self.wp.feval(ex.bind(self.wp, s)), dtype=float) * 2 * np.pi * np.cos(2 * np.pi * u)
        one = np.ones_like(g)
        return one, hp, g, 1 + g * hp

    def fdisp(self, x, y):
        hy = self._hf(y)
        return hy, self._vf(np.sin(2 * np.pi * _frac(x + hy)))

    def to_json(self):
        return {"kind": self.kind, "h": str(self.h), "w": str(self.w),
                "mean": self.mean.to_hex(), "p": self.p, "quad_slices": self.quad_slices}

    def describe(self):
        return f"generalized h(y)={self.h} w(x)={self.w}"

    def __repr__(self):
        return f"Generalized(h={str(self.h)!r}, w={str(self.w)!r})"


class Power(MapFamily):
    """k-fold composition of a base family."""

    kind = "power"

    def __init__(self, base: MapFamily, k: int):
        if k < 1:
            raise ValueError("power must be >= 1")
        self.base = base
        self.k = int(k)

    def eval_lift(self, box):
        for _ in range(self.k):
            box = self.base.eval_lift(box)
        return box

    def eval_lift_inverse(self, box):
        for _ in range(self.k):
            box = self.base.eval_lift_inverse(box)
        return box

    def jacobian(self, box):
        m = self.base.jacobian(box)
        for _ in range(self.k - 1):
            box = self.base.eval_lift(box)
            m = self.base.jacobian(box) @ m
        return m

    def displacement(self, box):
        dx, dy = self.base.displacement(box)
        for _ in range(self.k - 1):
            box = self.base.eval_lift(box)
            ddx, ddy = self.base.displacement(box)
            dx, dy = dx + ddx, dy + ddy
        return dx, dy

    def f(self, x, y):
        for _ in range(self.k):
            x, y = self.base.f(x, y)
        return x, y

    def finv(self, x, y):
        for _ in range(self.k):
            x, y = self.base.finv(x, y)
        return x, y

    def df(self, x, y):
        a, b, c, d = self.base.df(x, y)
        for _ in range(self.k - 1):
            x, y = self.base.f(x, y)
            p, q, r, s = self.base.df(x, y)
            a, b, c, d = p * a + q * c, p * b + q * d, r * a + s * c, r * b + s * d
        return a, b, c, d

    def fdisp(self, x, y):
        x1, y1 = self.f(x, y)
        return x1 - x, y1 - y

    @property
    def p(self):
        return getattr(self.base, "p", None)

    def to_json(self):
        return {"kind": self.kind, "k": self.k, "base": self.base.to_json()}

    def describe(self):
        return f"{self.base.describe()} composed {self.k} times"

    def __repr__(self):
        return f"Power({self.base!r}, {self.k})"


def family_from_json(d) -> MapFamily:
    kind = d.get("kind")
    if kind == "dissipative":
        return Dissipative(Interval.from_hex(d["a"]), Interval.from_hex(d["b"]))
    if kind == "generalized":
        return Generalized(d["h"], d["w"], mean=Interval.from_hex(d["mean"]), p=d["p"],
                           quad_slices=d.get("quad_slices", 2048))
    if kind == "power":
        return Power(family_from_json(d["base"]), d["k"])
    raise ValueError(f"unknown family kind {kind!r}")


# ---------------------------------------------------------------- h checks

def infer_period(h, samples=(0.0, 0.1875, 0.3125, 0.5, -0.4375)):
    """Integer p with h(y + 1) = h(y) + p, inferred from point samples."""
    vals = []
    for s in samples:
        d = _heval(h, Interval.point(s + 1.0)) - _heval(h, Interval.point(s))
        ints = list(d.integers())
        if len(ints) != 1:
            raise ValueError("h does not lift a circle map (h(y+1)-h(y) not an integer)")
        vals.append(ints[0])
    if len(set(vals)) != 1:
        raise ValueError("h(y+1)-h(y) is not constant")
    return vals[0]


def check_period(h, p, n=16):
    """Spot-check h(Y + 1) - h(Y) contains p on sample intervals."""
    for k in range(n):
        lo = -2.0 + k * 0.25
        Y = Interval(lo, lo + 0.0625)
        d = _heval(h, Y + 1.0) - _heval(h, Y)
        if not d.contains(p):
            raise ValueError(f"h(y+1)-h(y) does not contain {p} on {Y!r}")
    return True


def _heval(h, y):
    return h.ieval(ex.bind(h, y))


def check_coverage(h, n=4097):
    """Witness [-1, 1] within h([-1, 1]) via the intermediate value theorem.

    Returns (y_low, y_high) with h(y_low) <= -1 and h(y_high) >= 1 proven
    rigorously, or None."""
    ys = np.linspace(-1.0, 1.0, n)
    vals = _heval(h, Interval.point(ys))
    lows = np.nonzero(vals.hi <= -1.0)[0]
    highs = np.nonzero(vals.lo >= 1.0)[0]
    if len(lows) == 0 or len(highs) == 0:
        return None
    return float(ys[lows[0]]), float(ys[highs[0]])


# ---------------------------------------------------------------- bounds

def expansion_bound(F: MapFamily, box: IBox) -> float:
    """Rigorous upper bound of sup ||DF||_inf over the box."""
    n = inf_norm(F.jacobian(box))
    return float(np.max(n.hi))


def _split_axis(x, parts):
    lo, hi = float(x.lo), float(x.hi)
    nodes = np.linspace(lo, hi, parts + 1)
    nodes[0], nodes[-1] = lo, hi
    return nodes[:-1], nodes[1:]


def vertical_displacement_bound(F: MapFamily, L: float, nx=64, ny=None, tol=1e-6,
                                max_boxes=2 ** 18) -> float:
    """Rigorous upper bound of max |pr2(F(z) - z)| over [0,1] x [-L, L].

    Branch and bound: boxes whose bound cannot beat the best sampled value by
    more than ``tol`` are retired; the rest are bisected."""
    if not L > 0:
        raise ValueError("L must be positive")
    ny = ny or max(8, int(math.ceil(16 * L)))
    xl, xh = _split_axis(Interval(0.0, 1.0), nx)
    yl, yh = _split_axis(Interval(-float(L), float(L)), ny)
    XL, YL = np.meshgrid(xl, yl, indexing="ij")
    XH, YH = np.meshgrid(xh, yh, indexing="ij")
    xs = Interval(XL.ravel(), XH.ravel())
    ys = Interval(YL.ravel(), YH.ravel())
    best_lb = 0.0
    upper_done = 0.0
    total = len(xs)
    while True:
        boxes = IBox(xs, ys)
        _, dy = F.displacement(boxes)
        ub = dy.mag()
        cx = IBox(Interval.point(xs.mid()), Interval.point(ys.mid()))
        _, dyc = F.displacement(cx)
        best_lb = max(best_lb, float(np.max(dyc.mig())))
        open_ = ub > best_lb + tol
        done = ~open_
        if done.any():
            upper_done = max(upper_done, float(np.max(ub[done])))
        if not open_.any():
            return upper_done
        if total + 2 * int(open_.sum()) > max_boxes:
            return max(upper_done, float(np.max(ub[open_])))
        xs, ys = xs[open_], ys[open_]
        total += len(xs)
        # bisect along the axis with the larger width
        wx, wy = xs.width(), ys.width()
        mx, my = xs.mid(), ys.mid()
        cut_x = wx >= wy
        x1 = Interval(xs.lo, np.where(cut_x, mx, xs.hi))
        x2 = Interval(np.where(cut_x, mx, xs.lo), xs.hi)
        y1 = Interval(ys.lo, np.where(cut_x, ys.hi, my))
        y2 = Interval(np.where(cut_x, ys.lo, my), ys.hi)
        xs = Interval(np.concatenate([x1.lo, x2.lo]), np.concatenate([x1.hi, x2.hi]))
        ys = Interval(np.concatenate([y1.lo, y2.lo]), np.concatenate([y1.hi, y2.hi]))


# ---------------------------------------------------------------- quadrature

def _fsum_interval(lo, hi):
    """Rigorous enclosure of sum(lo)..sum(hi)."""
    out = []
    for v, d in ((lo, -math.inf), (hi, math.inf)):
        terms = np.ravel(v).tolist()
        s = math.fsum(terms)
        # fsum is correctly rounded; widen one step unless the sum is exact
        if math.fsum(terms + [-s]) != 0.0:
            s = math.nextafter(s, d)
        out.append(s)
    return Interval(out[0], out[1])


def _slices(n):
    k = np.arange(n, dtype=np.float64)
    lo = (Interval.point(k) / float(n))
    hi = (Interval.point(k + 1.0) / float(n))
    return Interval(lo.lo, hi.hi)


def mean_quadrature(w, n_slices: int, method: str = "riemann") -> Interval:
    """Rigorous enclosure of the integral of w(sin(2 pi t)) over t in [0, 1].

    ``riemann``: interval Riemann sum over uniform slices.
    ``taylor``: midpoint rule with the second-order correction and a
    Lagrange remainder bounded by the fourth derivative on each slice; much
    tighter for the same number of slices.
    """
    if isinstance(w, str):
        w = ex.parse(w)
    n = int(n_slices)
    if n < 1:
        raise ValueError("n_slices must be >= 1")
    var = ex.unary_function(w) or "x"
    g = w.substitute({var: ex.Func("sin", ex.mul(ex.mul(ex.Const(2.0), ex.PI_C), ex.Var("t")))})
    T = _slices(n)
    try:
        if method == "riemann":
            vals = g.ieval({"t": T})
            s = _fsum_interval(vals.lo, vals.hi)
            return s / float(n)
        if method != "taylor":
            raise ValueError(f"unknown quadrature method {method!r}")
        g2 = g.diff("t").diff("t")
        g4 = g2.diff("t").diff("t")
        k = np.arange(n, dtype=np.float64)
        c = Interval.point(k + 0.5) / float(n)
        h = Interval.point(1.0) / float(n)
        v0 = g.ieval({"t": c})
        v2 = g2.ieval({"t": c})
        v4 = g4.ieval({"t": T})
        h3 = h.pow_int(3) / 24.0
        h5 = h.pow_int(5) / 1920.0
        terms = v0 * h + v2 * h3 + v4 * h5
        return _fsum_interval(terms.lo, terms.hi)
    except ZeroDivisionError as exc:
        raise DomainError(str(exc)) from exc
