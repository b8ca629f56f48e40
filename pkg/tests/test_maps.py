import math

import mpmath
import numpy as np
import pytest

from horseshoe.interval import DomainError, IBox, Interval, inf_norm
from horseshoe.maps import (Dissipative, Generalized, Power, expansion_bound, family_from_json,
                            mean_quadrature, vertical_displacement_bound)

mpmath.mp.dps = 40
DISS = Dissipative("3", "0.8")
STD = Generalized("y", "x")


def mpf(v):
    return mpmath.mpf(float(v))


def diss_mp(x, y, a="3", b="0.8"):
    u = x + mpmath.mpf(a) * y
    return u, mpmath.mpf(b) * y + mpmath.sin(2 * mpmath.pi * u)


def std_mp(x, y):
    u = x + y
    return u, y + mpmath.sin(2 * mpmath.pi * u)


def inside(v, I):
    return mpf(I.lo) <= v <= mpf(I.hi)


def random_boxes(rng, n, ylim=6.0, wmax=1e-2):
    x = rng.uniform(0, 1, n)
    y = rng.uniform(-ylim, ylim, n)
    wx, wy = rng.uniform(0, wmax, n), rng.uniform(0, wmax, n)
    return IBox(Interval(x, x + wx), Interval(y, y + wy))


def sample_in(rng, box, i):
    X, Y = box.x[i], box.y[i]
    s, t = rng.uniform(0, 1, 2)
    return (min(float(X.lo) + s * float(X.width()), float(X.hi)),
            min(float(Y.lo) + t * float(Y.width()), float(Y.hi)))


# -- eval_lift --------------------------------------------------------------

def test_origin_is_fixed_with_tight_enclosure():
    img = DISS.eval_lift(IBox.point(0.0, 0.0))
    assert img.contains_point(0.0, 0.0)
    assert img.width() <= 8 * math.ulp(1.0)


def test_standard_map_example():
    assert STD.eval_lift(IBox.point(0.0, 1.0)).contains_point(1.0, 1.0)


@pytest.mark.parametrize("F, exact", [(DISS, diss_mp), (STD, std_mp)])
def test_lift_containment_fuzz(F, exact):
    rng = np.random.default_rng(5)
    B = random_boxes(rng, 10_000)
    img = F.eval_lift(B)
    ax = img.abs_x()
    for i in range(10_000):
        px, py = sample_in(rng, B, i)
        u, v = exact(mpf(px), mpf(py))
        assert inside(u, ax[i]) and inside(v, img.y[i])


def test_parameter_intervals_are_covered():
    F = Dissipative((2.99, 3.01), (0.79, 0.81))
    img = F.eval_lift(IBox.point(0.1, 0.5))
    # tuple endpoints are taken as the doubles nearest to them
    for a in (2.99, 3.0, 3.01):
        for b in (0.79, 0.81):
            u, v = diss_mp(mpf(0.1), mpf(0.5), mpf(a), mpf(b))
            assert inside(u, img.abs_x()) and inside(v, img.y)


def test_bad_b_rejected():
    with pytest.raises(ValueError):
        Dissipative(3, 1.2)
    with pytest.raises(ValueError):
        Dissipative(3, (0.5, 1.0))


# -- inverse ----------------------------------------------------------------

def test_inverse_of_origin():
    assert DISS.eval_lift_inverse(IBox.point(0.0, 0.0)).contains_point(0.0, 0.0)


@pytest.mark.parametrize("F", [DISS, STD])
def test_round_trip_contains_point(F):
    rng = np.random.default_rng(6)
    for _ in range(200):
        x, y = rng.uniform(0, 1), rng.uniform(-5, 5)
        back = F.eval_lift_inverse(F.eval_lift(IBox.point(x, y)))
        assert back.contains_point(x, y)


@pytest.mark.parametrize("F", [DISS, STD])
def test_inverse_consistency_on_small_boxes(F):
    rng = np.random.default_rng(7)
    B = random_boxes(rng, 1000, wmax=1e-4)
    back = F.eval_lift_inverse(F.eval_lift(B))
    for i in range(1000):
        assert B[i].subset(back[i])


def test_inverse_containment_fuzz():
    rng = np.random.default_rng(8)
    B = random_boxes(rng, 2000)
    pre = DISS.eval_lift_inverse(B)
    for i in range(2000):
        X, Y = sample_in(rng, B, i)
        y = (mpf(Y) - mpmath.sin(2 * mpmath.pi * mpf(X))) / mpmath.mpf("0.8")
        x = mpf(X) - 3 * y
        assert inside(x, pre.abs_x()[i]) and inside(y, pre.y[i])


# -- deck translation and period -------------------------------------------

@pytest.mark.parametrize("F", [DISS, STD])
def test_deck_commutation_is_bit_exact(F):
    rng = np.random.default_rng(9)
    B = random_boxes(rng, 1000)
    for k in (1, -3):
        lhs = F.eval_lift(B.translate(k))
        rhs = F.eval_lift(B).translate(k)
        assert np.array_equal(lhs.x.lo, rhs.x.lo) and np.array_equal(lhs.x.hi, rhs.x.hi)
        assert np.array_equal(lhs.y.lo, rhs.y.lo) and np.array_equal(lhs.y.hi, rhs.y.hi)
        assert np.array_equal(lhs.sheet, rhs.sheet)


def test_vertical_shift_moves_x_by_period():
    F = Generalized("2*y + 0.1*sin(2*pi*y)", "x")
    assert F.p == 2
    rng = np.random.default_rng(10)
    for _ in range(100):
        x, y = rng.uniform(0, 1), rng.uniform(-1, 1)
        a = F.eval_lift(IBox.point(x, y)).abs_x()
        b = F.eval_lift(IBox.point(x, y + 1.0)).abs_x()
        assert (b - a).contains(2.0)


def test_non_circle_h_rejected():
    with pytest.raises(ValueError):
        Generalized("y^2", "x")
    with pytest.raises(ValueError):
        Generalized("y/2", "x")          # misses [-1, 1]
    with pytest.raises(ValueError):
        Generalized("x + y", "x")
    with pytest.raises(DomainError):
        Generalized("y", "ln(x)")


# -- jacobian ---------------------------------------------------------------

def test_dissipative_jacobian_shape():
    J = DISS.jacobian(IBox(Interval(0.1, 0.2), Interval(0.3, 0.4)))
    assert J.a11.contains(1.0) and J.a11.width() == 0
    assert J.a12.contains(3.0)
    u = 0.15 + 3 * 0.35
    c = 2 * math.pi * math.cos(2 * math.pi * u)
    assert J.a21.contains(c) and J.a22.contains(0.8 + 3 * c)


def test_standard_map_jacobian_at_origin():
    J = STD.jacobian(IBox.point(0.0, 0.0))
    two_pi = 2 * math.pi
    for entry, v in ((J.a11, 1.0), (J.a12, 1.0), (J.a21, two_pi), (J.a22, 1 + two_pi)):
        assert entry.contains(v) and entry.width() < 1e-14


@pytest.mark.parametrize("F", [DISS, STD, Generalized("y + 0.3*sin(2*pi*y)", "x*(1-x)")])
def test_jacobian_against_central_differences(F):
    rng = np.random.default_rng(11)
    B = random_boxes(rng, 1000, ylim=4, wmax=1e-3)
    J = F.jacobian(B)
    h = 1e-6
    for i in range(1000):
        x, y = sample_in(rng, B, i)
        fx = [(p - m) / (2 * h) for p, m in zip(F.f(x + h, y), F.f(x - h, y))]
        fy = [(p - m) / (2 * h) for p, m in zip(F.f(x, y + h), F.f(x, y - h))]
        for entry, v in ((J.a11, fx[0]), (J.a12, fy[0]), (J.a21, fx[1]), (J.a22, fy[1])):
            assert entry[i].inflate(1e-4).contains(v)


# -- expansion bound --------------------------------------------------------

CHECK_BOX = IBox(Interval(0.0, 1.0), Interval(-1.0, 1.0))


def test_expansion_bound_lower_row_sum():
    assert expansion_bound(DISS, CHECK_BOX) >= 4.0


def test_expansion_bound_monotone_under_shrinking():
    boxes = [IBox(Interval(0.5 - r, 0.5 + r), Interval(-2 * r, 2 * r)) for r in (0.5, 0.25, 0.1, 0.01, 0.0)]
    etas = [expansion_bound(DISS, b) for b in boxes]
    assert all(a >= b for a, b in zip(etas, etas[1:]))


def test_expansion_bound_dominates_samples():
    eta = expansion_bound(DISS, CHECK_BOX)
    rng = np.random.default_rng(12)
    x, y = rng.uniform(0, 1, 10_000), rng.uniform(-1, 1, 10_000)
    a, b, c, d = DISS.df(x, y)
    norms = np.maximum(np.abs(a) + np.abs(b), np.abs(c) + np.abs(d))
    assert norms.max() <= eta
    assert inf_norm(DISS.jacobian(CHECK_BOX)).hi == eta


# -- vertical displacement --------------------------------------------------

def _sampled_displacement(F, L, n=10_000, seed=13):
    rng = np.random.default_rng(seed)
    x, y = rng.uniform(0, 1, n), rng.uniform(-L, L, n)
    return np.abs(F.fdisp(x, y)[1]).max()


def test_standard_map_displacement_at_five():
    nl = vertical_displacement_bound(STD, 5.0)
    assert nl <= 1.001
    assert nl >= _sampled_displacement(STD, 5.0)


def test_dissipative_displacement_at_six():
    nl = vertical_displacement_bound(DISS, 6.0)
    assert nl <= (1 - 0.8) * 6 + 1 + 1e-3
    assert nl >= _sampled_displacement(DISS, 6.0)


def test_displacement_needs_positive_level():
    with pytest.raises(ValueError):
        vertical_displacement_bound(DISS, 0.0)


# -- quadrature -------------------------------------------------------------

def test_mean_of_odd_function():
    m = mean_quadrature("x", 4096)
    assert m.contains(0.0) and m.width() <= 1e-3


def test_mean_of_quadratic():
    for method in ("riemann", "taylor"):
        m = mean_quadrature("x*(1-x)", 4096, method)
        assert m.contains(-0.5)
    assert mean_quadrature("x*(1-x)", 256, "taylor").width() < 1e-10


def test_refinement_never_widens():
    prev = None
    for n in (16, 32, 64, 128, 256, 512, 1024):
        m = mean_quadrature("exp(x) - x^3", n)
        if prev is not None:
            assert m.width() <= prev.width()
        prev = m
    # I_0(1) is the exact mean of exp(sin)
    assert prev.contains(float(mpmath.besseli(0, 1)))


def test_quadrature_errors():
    with pytest.raises(DomainError):
        mean_quadrature("1/x", 64)
    with pytest.raises(ValueError):
        mean_quadrature("x", 0)


# -- composition and serialization -----------------------------------------

def test_power_encloses_composition():
    F2 = Power(DISS, 2)
    z = (0.123, 0.456)
    u, v = diss_mp(*map(mpf, z))
    u, v = diss_mp(u, v)
    img = F2.eval_lift(IBox.point(*z))
    assert inside(u, img.abs_x()) and inside(v, img.y)
    assert DISS.power(1) is DISS


@pytest.mark.parametrize("F", [DISS, STD, Power(STD, 3)])
def test_json_round_trip(F):
    G = family_from_json(F.to_json())
    assert G == F
    B = IBox(Interval(0.2, 0.21), Interval(0.4, 0.41))
    a, b = F.eval_lift(B), G.eval_lift(B)
    assert a.x == b.x and a.y == b.y
