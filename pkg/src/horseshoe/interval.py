"""Outward-rounded interval arithmetic on top of numpy float64 arrays.

Every Interval holds two arrays ``lo`` and ``hi`` of the same shape (0-d for a
single interval), so the same code path encloses one box or ten thousand.

Rounding strategy: operations are computed in the default round-to-nearest
mode, then pushed outward.  For + - * the exact rounding error is recovered
with error-free transformations (TwoSum, Dekker's TwoProduct); an endpoint is
moved to the adjacent float only when the error says the true value lies on
the other side.  That gives correctly directed rounding and keeps exact
results exact.  Division widens by one step unless the quotient is verified
exact.  Elementary kernels (numpy sin/exp/log/tan) are widened by
``ELEM_ULPS`` steps per endpoint.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

__all__ = [
    "Interval", "IBox", "IMatrix2", "EMPTY", "ELEM_ULPS",
    "IntervalError", "DivisionByZeroInterval", "DomainError", "PoleError",
    "NonFiniteError", "PI", "TWO_PI", "inf_norm", "hull", "intersect",
    "add_down", "add_up", "mul_down", "mul_up",
]

# numpy's sin/cos/exp/log/tan are faithfully rounded on the platforms we
# test (measured max error 0.66 ulp), so 2 steps per endpoint is a safe budget.
ELEM_ULPS = 2

_INF = np.inf
_MAXF = np.finfo(np.float64).max
_SPLIT = 134217729.0  # 2**27 + 1


class IntervalError(ArithmeticError):
    pass


class DivisionByZeroInterval(IntervalError, ZeroDivisionError):
    pass


class DomainError(IntervalError, ValueError):
    pass


class PoleError(DomainError):
    pass


class NonFiniteError(IntervalError):
    pass


class _Empty:
    """Result of intersecting disjoint intervals."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __bool__(self):
        return False

    def __repr__(self):
        return "EMPTY"


EMPTY = _Empty()


# ---------------------------------------------------------------- rounding

def _dn(x):
    return np.nextafter(x, -_INF)


def _up(x):
    return np.nextafter(x, _INF)


def _dn_k(x, k):
    for _ in range(k):
        x = np.nextafter(x, -_INF)
    return x


def _up_k(x, k):
    for _ in range(k):
        x = np.nextafter(x, _INF)
    return x


def _two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _fix_dn(s, err):
    with np.errstate(invalid="ignore"):
        r = np.where(err >= 0, s, _dn(s))
    # overflow to +inf: the exact value is still finite and above MAXF
    return np.where(r == _INF, _MAXF, r)


def _fix_up(s, err):
    with np.errstate(invalid="ignore"):
        r = np.where(err <= 0, s, _up(s))
    return np.where(r == -_INF, -_MAXF, r)


def add_down(a, b):
    """Largest float <= a + b (exact directed rounding)."""
    with np.errstate(over="ignore", invalid="ignore"):
        s, e = _two_sum(np.asarray(a, np.float64), np.asarray(b, np.float64))
        return _fix_dn(s, e)


def add_up(a, b):
    with np.errstate(over="ignore", invalid="ignore"):
        s, e = _two_sum(np.asarray(a, np.float64), np.asarray(b, np.float64))
        return _fix_up(s, e)


def _two_prod(a, b):
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        p = a * b
        c = _SPLIT * a
        ah = c - (c - a)
        al = a - ah
        c = _SPLIT * b
        bh = c - (c - b)
        bl = b - bh
        err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
        # Dekker's split is only exact away from overflow and gradual underflow
        ap = np.abs(p)
        safe = (np.abs(a) < 1e300) & (np.abs(b) < 1e300) & ((ap > 1e-290) | (a == 0) | (b == 0))
        err = np.where(safe, err, np.nan)
    return p, err


def mul_down(a, b):
    p, e = _two_prod(np.asarray(a, np.float64), np.asarray(b, np.float64))
    return _fix_dn(p, e)


def mul_up(a, b):
    p, e = _two_prod(np.asarray(a, np.float64), np.asarray(b, np.float64))
    return _fix_up(p, e)


def _div_exact_mask(q, a, b):
    p, e = _two_prod(q, b)
    return (p == a) & (e == 0)


# ---------------------------------------------------------------- Interval

def _as_f64(v):
    return np.asarray(v, dtype=np.float64)


class Interval:
    """Closed real interval [lo, hi], possibly an array of them."""

    __slots__ = ("lo", "hi")
    __array_priority__ = 1000  # make ndarray + Interval defer to us

    def __init__(self, lo, hi=None):
        lo = _as_f64(lo)
        hi = lo if hi is None else _as_f64(hi)
        if lo.shape != hi.shape:
            lo, hi = np.broadcast_arrays(lo, hi)
        if np.isnan(lo).any() or np.isnan(hi).any():
            raise ValueError("NaN endpoint")
        if (lo > hi).any():
            raise ValueError("lo > hi")
        self.lo = lo
        self.hi = hi

    @classmethod
    def _raw(cls, lo, hi):
        obj = cls.__new__(cls)
        obj.lo = lo
        obj.hi = hi
        return obj

    # -- constructors --------------------------------------------------
    @classmethod
    def point(cls, x):
        x = _as_f64(x)
        return cls._raw(x, x.copy())

    @classmethod
    def from_fraction(cls, q):
        """Tightest float interval around an exact rational."""
        q = Fraction(q)
        f = float(q)
        lo = f if Fraction(f) <= q else math.nextafter(f, -math.inf)
        hi = f if Fraction(f) >= q else math.nextafter(f, math.inf)
        return cls(lo, hi)

    @classmethod
    def from_decimal(cls, text):
        """Enclosure of a decimal literal such as ``"0.8"``."""
        return cls.from_fraction(Fraction(str(text).strip()))

    @classmethod
    def coerce(cls, v):
        if isinstance(v, Interval):
            return v
        if isinstance(v, (int, np.integer)) and abs(int(v)) > 2 ** 53:
            return cls.from_fraction(int(v))
        return cls.point(v)

    @classmethod
    def entire(cls, shape=()):
        return cls._raw(np.full(shape, -_INF), np.full(shape, _INF))

    # -- basic attributes ----------------------------------------------
    @property
    def shape(self):
        return self.lo.shape

    @property
    def ndim(self):
        return self.lo.ndim

    def __len__(self):
        return len(self.lo)

    def __getitem__(self, idx):
        return Interval._raw(self.lo[idx], self.hi[idx])

    def is_finite(self):
        return bool(np.isfinite(self.lo).all() and np.isfinite(self.hi).all())

    def width(self):
        """Rigorous upper bound of hi - lo (array or float)."""
        w = add_up(self.hi, -self.lo)
        return float(w) if w.ndim == 0 else w

    def mid(self):
        m = 0.5 * self.lo + 0.5 * self.hi
        m = np.where(np.isfinite(m), m, np.where(np.isfinite(self.lo), self.lo, self.hi))
        m = np.clip(m, self.lo, self.hi)
        return float(m) if m.ndim == 0 else m

    midpoint = mid

    def rad(self):
        m = _as_f64(self.mid())
        r = np.maximum(add_up(self.hi, -m), add_up(m, -self.lo))
        return float(r) if r.ndim == 0 else r

    def mag(self):
        m = np.maximum(np.abs(self.lo), np.abs(self.hi))
        return float(m) if m.ndim == 0 else m

    def mig(self):
        m = np.where((self.lo <= 0) & (self.hi >= 0), 0.0,
                     np.minimum(np.abs(self.lo), np.abs(self.hi)))
        return float(m) if m.ndim == 0 else m

    def contains(self, p):
        r = (self.lo <= p) & (p <= self.hi)
        return bool(r) if np.ndim(r) == 0 else r

    def contains_zero(self):
        return self.contains(0.0)

    def subset(self, other):
        other = Interval.coerce(other)
        r = (other.lo <= self.lo) & (self.hi <= other.hi)
        return bool(r) if np.ndim(r) == 0 else r

    def interior_subset(self, other):
        other = Interval.coerce(other)
        r = (other.lo < self.lo) & (self.hi < other.hi)
        return bool(r) if np.ndim(r) == 0 else r

    def overlaps(self, other):
        other = Interval.coerce(other)
        r = (self.lo <= other.hi) & (other.lo <= self.hi)
        return bool(r) if np.ndim(r) == 0 else r

    def identical(self, other):
        return bool(np.array_equal(self.lo, other.lo) and np.array_equal(self.hi, other.hi))

    def integers(self):
        """Integers contained in a scalar interval, as a range."""
        return range(math.ceil(float(self.lo)), math.floor(float(self.hi)) + 1)

    # -- arithmetic ----------------------------------------------------
    def __neg__(self):
        return Interval._raw(-self.hi, -self.lo)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = Interval.coerce(other)
        return Interval._raw(add_down(self.lo, o.lo), add_up(self.hi, o.hi))

    __radd__ = __add__

    def __sub__(self, other):
        o = Interval.coerce(other)
        return Interval._raw(add_down(self.lo, -o.hi), add_up(self.hi, -o.lo))

    def __rsub__(self, other):
        return Interval.coerce(other) - self

    def __mul__(self, other):
        o = Interval.coerce(other)
        a, b, c, d = self.lo, self.hi, o.lo, o.hi
        with np.errstate(invalid="ignore"):
            lo = np.minimum(np.minimum(mul_down(a, c), mul_down(a, d)),
                            np.minimum(mul_down(b, c), mul_down(b, d)))
            hi = np.maximum(np.maximum(mul_up(a, c), mul_up(a, d)),
                            np.maximum(mul_up(b, c), mul_up(b, d)))
        # 0 * inf
        lo = np.where(np.isnan(lo), -_INF, lo)
        hi = np.where(np.isnan(hi), _INF, hi)
        return Interval._raw(lo, hi)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Interval.coerce(other)
        if ((o.lo <= 0) & (o.hi >= 0)).any():
            raise DivisionByZeroInterval("division by an interval containing 0")
        a, b, c, d = self.lo, self.hi, o.lo, o.hi
        qs = []
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            for n in (a, b):
                for m in (c, d):
                    q = n / m
                    ex = _div_exact_mask(q, n, m)
                    qs.append((np.where(ex, q, _dn(q)), np.where(ex, q, _up(q))))
        lo = np.minimum(np.minimum(qs[0][0], qs[1][0]), np.minimum(qs[2][0], qs[3][0]))
        hi = np.maximum(np.maximum(qs[0][1], qs[1][1]), np.maximum(qs[2][1], qs[3][1]))
        lo = np.where(np.isnan(lo), -_INF, lo)
        hi = np.where(np.isnan(hi), _INF, hi)
        return Interval._raw(lo, hi)

    def __rtruediv__(self, other):
        return Interval.coerce(other) / self

    def __pow__(self, n):
        return self.pow_int(n)

    def sqr(self):
        lo2, hi2 = mul_down(self.lo, self.lo), mul_up(self.lo, self.lo)
        lo2b, hi2b = mul_down(self.hi, self.hi), mul_up(self.hi, self.hi)
        straddle = (self.lo <= 0) & (self.hi >= 0)
        lo = np.where(straddle, 0.0, np.minimum(lo2, lo2b))
        hi = np.maximum(hi2, hi2b)
        return Interval._raw(lo, hi)

    def pow_int(self, n):
        n = int(n)
        if n == 0:
            return Interval._raw(np.ones_like(self.lo), np.ones_like(self.hi))
        if n < 0:
            return Interval.point(np.ones_like(self.lo)) / self.pow_int(-n)
        if n == 1:
            return self
        if n % 2 == 0:
            base = self.abs()
        else:
            base = self
        # monotone on base (nonnegative for even n, all reals for odd n)
        lo = _pow_endpoint(base.lo, n, down=True)
        hi = _pow_endpoint(base.hi, n, down=False)
        return Interval._raw(lo, hi)

    def abs(self):
        lo = np.where(self.lo >= 0, self.lo, np.where(self.hi <= 0, -self.hi, 0.0))
        hi = np.maximum(np.abs(self.lo), np.abs(self.hi))
        return Interval._raw(lo, hi)

    __abs__ = abs

    # -- elementary functions ------------------------------------------
    def exp(self):
        with np.errstate(over="ignore", under="ignore"):
            lo = np.maximum(_dn_k(np.exp(self.lo), ELEM_ULPS), 0.0)
            hi = _up_k(np.exp(self.hi), ELEM_ULPS)
        lo = np.where(self.lo == 0, 1.0, lo)
        hi = np.where(self.hi == 0, 1.0, hi)
        return Interval._raw(lo, hi)

    def log(self):
        if (self.lo <= 0).any():
            raise DomainError("ln of an interval reaching 0 or below")
        lo = np.where(self.lo == 1, 0.0, _dn_k(np.log(self.lo), ELEM_ULPS))
        hi = np.where(self.hi == 1, 0.0, _up_k(np.log(self.hi), ELEM_ULPS))
        return Interval._raw(lo, hi)

    ln = log

    def sin2pi(self):
        """Enclosure of sin(2*pi*t) for t in the interval."""
        return _sin_turns(self.lo, self.hi)

    def cos2pi(self):
        return _sin_turns(add_down(self.lo, 0.25), add_up(self.hi, 0.25))

    def sin(self):
        return (self * INV_TWO_PI).sin2pi()

    def cos(self):
        return (self * INV_TWO_PI).cos2pi()

    def tan(self):
        # a pole k*pi + pi/2 lies inside iff some integer lies in X/pi - 1/2
        w = self * INV_PI - 0.5
        if (np.ceil(w.lo) <= np.floor(w.hi)).any():
            raise PoleError("tan across a pole")
        lo = np.where(self.lo == 0, 0.0, _dn_k(np.tan(self.lo), ELEM_ULPS))
        hi = np.where(self.hi == 0, 0.0, _up_k(np.tan(self.hi), ELEM_ULPS))
        return Interval._raw(lo, hi)

    # -- set operations ------------------------------------------------
    def hull(self, other=None):
        if other is None:  # hull over an array
            return Interval(np.min(self.lo), np.max(self.hi))
        o = Interval.coerce(other)
        return Interval._raw(np.minimum(self.lo, o.lo), np.maximum(self.hi, o.hi))

    def intersect(self, other):
        o = Interval.coerce(other)
        lo = np.maximum(self.lo, o.lo)
        hi = np.minimum(self.hi, o.hi)
        if (lo > hi).any():
            return EMPTY
        return Interval._raw(lo, hi)

    def inflate(self, r):
        return Interval._raw(add_down(self.lo, -r), add_up(self.hi, r))

    # -- (de)serialization ---------------------------------------------
    def to_hex(self):
        if self.ndim != 0:
            return [Interval._raw(l, h).to_hex() for l, h in zip(self.lo, self.hi)]
        return [float(self.lo).hex(), float(self.hi).hex()]

    @classmethod
    def from_hex(cls, pair):
        if len(pair) != 2:
            raise ValueError("interval must be a [lo, hi] pair")
        return cls(float.fromhex(pair[0]), float.fromhex(pair[1]))

    def __repr__(self):
        if self.ndim == 0:
            return f"Interval({float(self.lo)!r}, {float(self.hi)!r})"
        return f"Interval(shape={self.shape})"

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return self.identical(other)

    __hash__ = None


def _pow_endpoint(x, n, down):
    r = x
    for _ in range(n - 1):
        r = mul_down(r, x) if down else mul_up(r, x)
    # for negative x an odd power is monotone, but directed multiplication
    # of two negatives flips the direction; redo those endpoints carefully
    neg = x < 0
    if neg.any():
        ax = np.abs(x)
        rr = ax
        for _ in range(n - 1):
            rr = mul_up(rr, ax) if down else mul_down(rr, ax)
        r = np.where(neg, -rr, r)
    return r


PI = Interval(3.141592653589793, 3.1415926535897936)
TWO_PI = Interval(6.283185307179586, 6.283185307179587)
INV_PI = 1.0 / PI
INV_TWO_PI = 1.0 / TWO_PI

_QUARTER_SIN = np.array([0.0, 1.0, 0.0, -1.0])


def _endpoint_sin_turns(v):
    """Enclosure [l, h] of sin(2*pi*v) for each float in v, independently of
    any partner endpoint (keeps the interval extension monotone)."""
    v = _as_f64(v)
    n = np.floor(v)
    r_lo = add_down(v, -n)
    r_hi = add_up(v, -n)
    exact = r_lo == r_hi
    t_lo = mul_down(r_lo, TWO_PI.lo)
    t_hi = mul_up(r_hi, TWO_PI.hi)
    s1 = np.sin(t_lo)
    s2 = np.sin(t_hi)
    lo = np.maximum(_dn_k(np.minimum(s1, s2), ELEM_ULPS), -1.0)
    hi = np.minimum(_up_k(np.maximum(s1, s2), ELEM_ULPS), 1.0)
    # exact quarter turns give exact values
    q = r_lo * 4.0
    special = exact & (q == np.floor(q))
    if special.any():
        idx = np.where(special, q, 0).astype(np.int64) % 4
        val = _QUARTER_SIN[idx]
        lo = np.where(special, val, lo)
        hi = np.where(special, val, hi)
    return lo, hi


def _sin_turns(a, b):
    a = _as_f64(a)
    b = _as_f64(b)
    if not (np.isfinite(a).all() and np.isfinite(b).all()):
        fin = np.isfinite(a) & np.isfinite(b)
        a = np.where(fin, a, 0.0)
        b = np.where(fin, b, 1.0)
    la, ha = _endpoint_sin_turns(a)
    lb, hb = _endpoint_sin_turns(b)
    lo = np.minimum(la, lb)
    hi = np.maximum(ha, hb)
    # interior extrema: max at k + 1/4, min at k + 3/4
    has_max = np.ceil(add_down(a, -0.25)) <= np.floor(add_up(b, -0.25))
    has_min = np.ceil(add_down(a, -0.75)) <= np.floor(add_up(b, -0.75))
    full = add_up(b, -a) >= 1.0
    hi = np.where(has_max | full, 1.0, hi)
    lo = np.where(has_min | full, -1.0, lo)
    return Interval._raw(lo, hi)


def hull(*xs):
    out = Interval.coerce(xs[0])
    for x in xs[1:]:
        out = out.hull(x)
    return out


def intersect(x, y):
    return Interval.coerce(x).intersect(y)


# ---------------------------------------------------------------- boxes

class IBox:
    """Planar box in the lift, x = sheet + xi.

    The integer ``sheet`` carries whole turns around the annulus, so the deck
    translation (x, y) -> (x + k, y) is exact on every box.  Vectorized boxes
    hold arrays of intervals and an integer array of sheets.
    """

    __slots__ = ("x", "y", "sheet")

    def __init__(self, x, y, sheet=0):
        self.x = Interval.coerce(x)
        self.y = Interval.coerce(y)
        self.sheet = np.asarray(sheet, dtype=np.int64)
        if self.sheet.shape != self.x.shape:
            self.sheet = np.broadcast_to(self.sheet, self.x.shape).copy()

    @classmethod
    def point(cls, x, y):
        return cls(Interval.point(x), Interval.point(y))

    @classmethod
    def around(cls, cx, cy, rx, ry=None):
        ry = rx if ry is None else ry
        return cls(Interval(cx).inflate(rx), Interval(cy).inflate(ry))

    @property
    def shape(self):
        return self.x.shape

    def __len__(self):
        return len(self.x.lo)

    def __getitem__(self, idx):
        return IBox(self.x[idx], self.y[idx], self.sheet[idx])

    def width(self):
        return np.maximum(self.x.width(), self.y.width()) if self.x.ndim else max(self.x.width(), self.y.width())

    def abs_x(self, ref=0):
        """x relative to sheet ``ref`` (outward rounded)."""
        off = self.sheet - ref
        if not np.any(off):
            return self.x
        return self.x + off.astype(np.float64)

    def mid(self):
        return (float(self.abs_x().mid()), float(self.y.mid()))

    def translate(self, k):
        return IBox(self.x, self.y, self.sheet + int(k))

    def normalized(self):
        """Move the integer part of x into the sheet when that is exact."""
        n = np.floor(self.x.lo)
        with np.errstate(invalid="ignore"):
            lo, e1 = _two_sum(self.x.lo, -n)
            hi, e2 = _two_sum(self.x.hi, -n)
            ok = (e1 == 0) & (e2 == 0) & np.isfinite(n) & (np.abs(n) < 2.0 ** 62)
        if not ok.any():
            return self
        nn = np.where(ok, n, 0.0)
        x = Interval._raw(np.where(ok, lo, self.x.lo), np.where(ok, hi, self.x.hi))
        return IBox(x, self.y, self.sheet + nn.astype(np.int64))

    def contains_point(self, px, py):
        ax = self.abs_x()
        return ax.contains(px) and self.y.contains(py)

    def subset(self, other, shift=0):
        """self within other + (shift, 0)."""
        ref = int(other.sheet) + int(shift)
        return self.abs_x(ref).subset(other.x) and self.y.subset(other.y)

    def interior_subset(self, other, shift=0):
        ref = int(other.sheet) + int(shift)
        return self.abs_x(ref).interior_subset(other.x) and self.y.interior_subset(other.y)

    def hull(self, ref=None):
        """Hull of a vectorized box as a scalar box on sheet ``ref``."""
        if self.x.ndim == 0:
            return self
        if ref is None:
            ref = int(self.sheet.min()) if self.sheet.size else 0
        ax = self.abs_x(ref)
        return IBox(Interval(np.min(ax.lo), np.max(ax.hi)),
                    Interval(np.min(self.y.lo), np.max(self.y.hi)), ref)

    def is_finite(self):
        return self.x.is_finite() and self.y.is_finite()

    def to_json(self):
        return {"x": self.x.to_hex(), "y": self.y.to_hex(), "sheet": int(self.sheet)}

    @classmethod
    def from_json(cls, d):
        return cls(Interval.from_hex(d["x"]), Interval.from_hex(d["y"]), int(d.get("sheet", 0)))

    def __repr__(self):
        if self.x.ndim == 0:
            return f"IBox(x={self.x!r}, y={self.y!r}, sheet={int(self.sheet)})"
        return f"IBox(n={len(self)})"

    @staticmethod
    def concat(boxes):
        xs = [b.x for b in boxes]
        ys = [b.y for b in boxes]
        return IBox(Interval._raw(np.concatenate([np.atleast_1d(v.lo) for v in xs]),
                                  np.concatenate([np.atleast_1d(v.hi) for v in xs])),
                    Interval._raw(np.concatenate([np.atleast_1d(v.lo) for v in ys]),
                                  np.concatenate([np.atleast_1d(v.hi) for v in ys])),
                    np.concatenate([np.atleast_1d(b.sheet) for b in boxes]))


class IMatrix2:
    __slots__ = ("a11", "a12", "a21", "a22")

    def __init__(self, a11, a12, a21, a22):
        self.a11 = Interval.coerce(a11)
        self.a12 = Interval.coerce(a12)
        self.a21 = Interval.coerce(a21)
        self.a22 = Interval.coerce(a22)

    def entries(self):
        return (self.a11, self.a12, self.a21, self.a22)

    def __matmul__(self, o):
        if isinstance(o, IMatrix2):
            return IMatrix2(self.a11 * o.a11 + self.a12 * o.a21,
                            self.a11 * o.a12 + self.a12 * o.a22,
                            self.a21 * o.a11 + self.a22 * o.a21,
                            self.a21 * o.a12 + self.a22 * o.a22)
        u, v = o
        return (self.a11 * u + self.a12 * v, self.a21 * u + self.a22 * v)

    def __sub__(self, o):
        return IMatrix2(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)

    @staticmethod
    def identity():
        return IMatrix2(1.0, 0.0, 0.0, 1.0)

    @staticmethod
    def from_float(m):
        m = np.asarray(m, dtype=np.float64)
        return IMatrix2(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    def mid(self):
        return np.array([[self.a11.mid(), self.a12.mid()], [self.a21.mid(), self.a22.mid()]])

    def to_hex(self):
        return [e.to_hex() for e in self.entries()]

    def __repr__(self):
        return "IMatrix2(" + ", ".join(repr(e) for e in self.entries()) + ")"


def inf_norm(m: IMatrix2) -> Interval:
    """Interval [lower, upper] for the max row sum of |entries| over M."""
    for e in m.entries():
        if not e.is_finite():
            raise NonFiniteError("non-finite matrix entry")
    r1 = add_up(m.a11.mag(), m.a12.mag())
    r2 = add_up(m.a21.mag(), m.a22.mag())
    l1 = add_down(m.a11.mig(), m.a12.mig())
    l2 = add_down(m.a21.mig(), m.a22.mig())
    return Interval(np.maximum(l1, l2), np.maximum(r1, r2))
