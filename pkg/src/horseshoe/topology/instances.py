"""Hand-built configurations with known invariants."""
from fractions import Fraction as F

from .geometry import Polyline
from .invariants import Banner, Rectangle4


def theta_four():
    """Increasing staircase over x in [0, 7/2] and a vertical bar: theta = 4."""
    A = Polyline([(0, 0), (1, F(3, 5)), (2, F(4, 5)), (F(7, 2), 2)])
    B = Polyline([(F(1, 2), -1), (F(1, 2), 3)])
    return A, B


def nu_one():
    """A meets K, climbs while moving one turn right, meets K + 1: nu = 1."""
    A = Polyline([(F(3, 10), F(1, 5)), (F(7, 10), F(1, 5)), (F(13, 10), F(3, 5)), (F(17, 10), F(3, 5))])
    K = Polyline([(F(1, 2), 0), (F(1, 2), 1)])
    return A, K


_SLOPE = F(1, 8)


def helix_with_bar(n, c=F(1, 2), w=F(0)):
    """Slanted arc A from x = (0, 0) and a vertical bar gamma from A up to A - n.

    The bar at abscissa c + w crosses the n - 1 intermediate lifts, burying x
    under n layers: sep+ = n, sep- = 0 and nu(gamma, A) = -n.
    """
    L = c + w + n + F(1, 2)
    A = Polyline([(0, 0), (L, _SLOPE * L)])
    x = c + w
    G = Polyline([(x, _SLOPE * x), (x, _SLOPE * (x + n))])
    return A.start, A, G


def sep_three():
    return helix_with_bar(3)


def winding_rectangle(n, c=F(1, 2), w=F(1, 4)):
    """Rectangle with sides a on A and b on A - n, joined by vertical bars I and J.

    Returns (x, A, R) with R = (a, I, b, J) and |nu(I, A)| = n.
    """
    x, A, _ = helix_with_bar(n, c, w)
    s = _SLOPE
    p0, p1 = (c, s * c), (c + w, s * (c + w))
    q1, q0 = (c + w, s * (c + w + n)), (c, s * (c + n))
    R = Rectangle4(Polyline([p0, p1]), Polyline([p1, q1]), Polyline([q1, q0]), Polyline([q0, p0]))
    return x, A, R


# banners: a tall thin rectangle near x = 0 and a thin band winding n times below it

def _band(n, x0=F(1, 2), top=F(-7, 4), slope=F(1, 50), thick=F(1, 100)):
    def lower(x):
        return top - thick - slope * (x - x0)
    x1 = x0 + n
    a = Polyline([(x0, lower(x0)), (x0, lower(x0) + thick)])
    Fp = Polyline([(x0, lower(x0) + thick), (x1, lower(x1) + thick)])
    b = Polyline([(x1, lower(x1) + thick), (x1, lower(x1))])
    Fm = Polyline([(x1, lower(x1)), (x0, lower(x0))])
    return Rectangle4(a, Fp, b, Fm), lower


def banner_pair(n=12, x0=F(1, 2), slope=F(1, 50), thick=F(1, 100), bx=F(3, 10), hook=F(9, 20)):
    """Two banners with common initial and final points and homotopic difference n.

    The first banner sits in x in [-1/10, 3/10]; the second one's rectangle is
    a band that winds n times around the annulus, so B crosses it n times.
    """
    z0 = (F(-1, 10), F(2))
    z1 = (bx, F(-3))
    a = Polyline([(0, 0), (0, 1)])
    Ip = Polyline([(0, 1), (F(1, 5), 1)])
    b = Polyline([(F(1, 5), 1), (F(1, 5), 0)])
    Im = Polyline([(F(1, 5), 0), (0, 0)])
    A = Polyline([z0, (F(-1, 10), F(-1, 10)), (0, 0), (0, 1)])
    B = Polyline([(F(1, 5), 1), (F(1, 5), 0), (bx, F(-1, 10)), z1])
    B1 = Banner(Rectangle4(a, Ip, b, Im), A, B)

    R2, lower = _band(n, x0, slope=slope, thick=thick)
    A2 = Polyline([z0, (hook, z0[1]), (hook, lower(x0) + F(3, 50)), R2.a.start, R2.a.end])
    B2 = Polyline([R2.b.start, R2.b.end, (z1[0] + n, z1[1])])
    return B1, Banner(R2, A2, B2)


def reroute_once(B1):
    """A banner with the same endpoints whose rectangle sits one turn further right.

    A makes one extra turn before reaching the translated rectangle, so the
    homotopic difference with B1 is 1.
    """
    A = B1.A
    z0 = A.start
    A1 = Polyline([z0, (z0[0] + 1, z0[1] - F(1, 20))] + list(A.translate(1).vertices[1:]))
    return Banner(B1.rect.translate(1), A1, B1.B.translate(1))
