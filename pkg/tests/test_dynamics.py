import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from horseshoe.certifiers import certify_dissipative, certify_hamiltonian
from horseshoe.dynamics import (AmbiguousRotation, BlowupError, DpnFailure, FamilyMismatch, FixedPointCert,
                                NoContraction, NoTransitFound, OrbitEnclosure, SubdivisionPolicy,
                                birkhoff_dpn, certify_fixed_point, crossing_check, enclose_orbit,
                                find_fixed_points, rotational_difference, verify_birkhoff_related,
                                verify_fixed_point_cert)
from horseshoe.interval import IBox, Interval
from horseshoe.maps import Dissipative, Generalized

DISS = Dissipative("3", "0.8")
STD = Generalized("y", "x")


@pytest.fixture(scope="module")
def diss_cert():
    return certify_dissipative(a="3", b="0.8")


def rot12_point():
    # sin(2 pi x) = (1 - b) y with y = 4, refined by a high precision root finder
    mpmath.mp.dps = 40
    x0 = mpmath.asin(mpmath.mpf("0.8")) / (2 * mpmath.pi)
    g = lambda x, y: [x + 3 * y - x - 12, mpmath.mpf("0.8") * y + mpmath.sin(2 * mpmath.pi * (x + 3 * y)) - y]
    root = mpmath.findroot(lambda x, y: g(x, y), (x0, mpmath.mpf(4)))
    return float(root[0]), float(root[1])


# -- fixed points -----------------------------------------------------------

def test_origin_rotation_zero():
    c = certify_fixed_point(DISS, IBox.around(0.0, 0.0, 1e-3))
    assert c.rotation == 0
    assert c.box.contains_point(0.0, 0.0)
    assert c.box.width() <= 1e-6
    assert c.newton_radius_ratio < 1


def test_rotation_twelve_at_height_four():
    x, y = rot12_point()
    assert x == pytest.approx(math.asin(0.8) / (2 * math.pi), abs=1e-12) and y == pytest.approx(4.0)
    c = certify_fixed_point(DISS, IBox.around(math.asin(0.8) / (2 * math.pi), 4.0, 1e-3))
    assert c.rotation == 12
    assert c.box.contains_point(x, y)


def test_standard_map_pair_and_difference():
    lo = certify_fixed_point(STD, IBox.around(0.0, -1.0, 1e-3))
    hi = certify_fixed_point(STD, IBox.around(0.0, 1.0, 1e-3))
    assert (lo.rotation, hi.rotation) == (-1, 1)
    assert rotational_difference(lo, hi) == 2
    assert rotational_difference(hi, hi) == 0


def test_difference_twelve():
    c0 = certify_fixed_point(DISS, IBox.around(0.0, 0.0, 1e-3))
    c1 = certify_fixed_point(DISS, IBox.around(math.asin(0.8) / (2 * math.pi), 4.0, 1e-3))
    assert rotational_difference(c0, c1) == 12


def test_family_mismatch():
    c0 = certify_fixed_point(DISS, IBox.around(0.0, 0.0, 1e-3))
    c1 = certify_fixed_point(STD, IBox.around(0.0, 1.0, 1e-3))
    with pytest.raises(FamilyMismatch):
        rotational_difference(c0, c1)


def test_ambiguous_rotation_and_no_contraction():
    with pytest.raises(AmbiguousRotation):
        certify_fixed_point(DISS, IBox.around(0.0, 0.0, 0.5))
    # no fixed point near (0.3, 0.1) with rotation 0
    with pytest.raises(NoContraction):
        certify_fixed_point(DISS, IBox.around(0.3, 0.1, 1e-3), p_hint=0)


@pytest.mark.parametrize("seed, p", [((0.0, 0.0), 0), ((0.1476, 4.0), 12), ((0.0, 1.0), None)])
def test_newton_residual_below_box_width(seed, p):
    F = DISS if p is not None else STD
    c = certify_fixed_point(F, IBox.around(*seed, 1e-3), p_hint=p)
    mx, my = c.box.mid()
    dx, dy = F.fdisp(np.array([mx]), np.array([my]))
    resid = max(abs(dx[0] - c.rotation), abs(dy[0]))
    assert resid < max(c.box.width(), 1e-15)
    assert verify_fixed_point_cert(F, c) is True


def test_fixed_point_json_round_trip():
    c = certify_fixed_point(DISS, IBox.around(0.0, 0.0, 1e-3))
    d = FixedPointCert.from_json(c.to_json(), DISS)
    assert d.box.x == c.box.x and d.box.y == c.box.y and d.rotation == 0


def test_grid_search_finds_expected_rotations():
    rots = {p for (_, _, p) in find_fixed_points(DISS, (-6, 6))}
    assert {-6, 0, 6, 12}.issubset(rots)


# -- orbits -----------------------------------------------------------------

def test_zero_steps_returns_seed():
    seed = IBox.around(0.2, 0.3, 1e-4)
    orb = enclose_orbit(DISS, seed, 0)
    assert len(orb) == 1 and orb.boxes[0] is seed


def test_forward_orbit_of_origin_keeps_it():
    orb = enclose_orbit(DISS, IBox.around(0.0, 0.0, 1e-12), 10)
    assert len(orb) == 11
    assert all(b.contains_point(0.0, 0.0) for b in orb.boxes)


@pytest.mark.parametrize("direction, F, centre", [("forward", DISS, (0.3, 0.7)), ("backward", DISS, (0.6, -1.2)),
                                                  ("forward", STD, (0.1, 0.4))])
def test_soundness_sampling(direction, F, centre):
    seed = IBox.around(*centre, 1e-6)
    n = 5
    orb = enclose_orbit(F, seed, n, direction)
    rng = np.random.default_rng(21)
    x = centre[0] + rng.uniform(-1e-6, 1e-6, 1000)
    y = centre[1] + rng.uniform(-1e-6, 1e-6, 1000)
    sgn = 1 if direction == "forward" else -1
    for k in range(n + 1):
        if k:
            x, y = F.fstep(x, y, sgn)
        b = orb.boxes[k]
        X, Y = b.abs_x().inflate(1e-9), b.y.inflate(1e-9)
        assert np.all((X.lo <= x) & (x <= X.hi) & (Y.lo <= y) & (y <= Y.hi))


def test_subdivision_is_recorded_and_sound():
    seed = IBox.around(0.3, 0.2, 2e-3)
    orb = enclose_orbit(DISS, seed, 3, policy=SubdivisionPolicy(width_threshold=1e-3, max_pieces=64))
    assert orb.subdivision_events
    plain = enclose_orbit(DISS, seed, 3, policy=SubdivisionPolicy(width_threshold=1.0))
    # the subdivided enclosure is never wider than the plain one
    assert orb.boxes[-1].width() <= plain.boxes[-1].width()


def test_blowup_is_an_error():
    with pytest.raises(BlowupError):
        enclose_orbit(DISS, IBox.around(0.3, 0.2, 0.1), 20, policy=SubdivisionPolicy(max_pieces=4))


def test_bad_arguments():
    with pytest.raises(ValueError):
        enclose_orbit(DISS, IBox.point(0, 0), -1)
    with pytest.raises(ValueError):
        enclose_orbit(DISS, IBox.point(0, 0), 1, "sideways")
    with pytest.raises(ValueError):
        crossing_check(enclose_orbit(DISS, IBox.point(0, 0), 1), 6, "left")


def test_orbit_json_round_trip():
    orb = enclose_orbit(DISS, IBox.around(0.3, 0.2, 1e-6), 3)
    back = OrbitEnclosure.from_json(orb.to_json())
    assert [b.to_json() for b in back.boxes] == [b.to_json() for b in orb.boxes]


def test_witness_backward_orbit_crosses_within_fifteen(diss_cert):
    assert diss_cert["verdict"] == "certified"
    for w in diss_cert["records"]["witnesses"]:
        x, y = (float.fromhex(v) for v in w["point"])
        n = w["crossing_step"]
        assert n <= 15
        orb = enclose_orbit(DISS, IBox.point(x, y), n, "backward")
        assert crossing_check(orb, 6.0, w["side"]) == n


# -- crossing ---------------------------------------------------------------

def test_constant_orbit_never_crosses():
    orb = enclose_orbit(DISS, IBox.point(0.0, 0.0), 5)
    assert crossing_check(orb, 6.0, "above") is None
    assert crossing_check(orb, 6.0, "below") is None


def test_crossing_on_handmade_orbit():
    boxes = [IBox.point(0, 0), IBox(Interval(0, 1), Interval(5.9, 6.2)), IBox(Interval(0, 1), Interval(6.01, 6.5))]
    orb = OrbitEnclosure("forward", boxes, boxes[0])
    assert crossing_check(orb, 6.0, "above") == 2
    assert crossing_check(orb, 5.0, "above") == 1
    assert crossing_check(orb, 1.0, "below") is None


def test_standard_map_orbit_crosses_the_band():
    cert = certify_hamiltonian(h="y", w="x", L1=1.0, L2=5.0)
    rec = cert["records"]["crossing"]
    x, y = (float.fromhex(v) for v in rec["seed"])
    assert y < -5
    orb = enclose_orbit(STD, IBox.point(x, y), rec["end_step"])
    k = crossing_check(orb, 5.0, "above")
    assert k == rec["end_step"] and k <= 15
    assert crossing_check(orb, 5.0, "below") == 0


@settings(max_examples=60, deadline=None)
@given(st.floats(0, 1), st.floats(-5.5, 5.5), st.floats(0.5, 6.5), st.floats(0, 1))
def test_crossing_monotone_in_level(x, y, level, frac):
    try:
        orb = enclose_orbit(DISS, IBox.around(x, y, 1e-9), 8, "backward")
    except BlowupError:
        return
    lower = level * frac
    for side in ("above", "below"):
        k = crossing_check(orb, level, side)
        if k is not None:
            k2 = crossing_check(orb, lower, side)
            assert k2 is not None and k2 <= k


# -- Birkhoff relation ------------------------------------------------------

def test_invariant_bands_never_transit():
    F = Generalized("y", "0*x")        # pure twist: horizontal circles are invariant
    c0 = FixedPointCert(IBox.point(0.0, -1.0), -1, F, 0.0)
    c1 = FixedPointCert(IBox.point(0.0, 1.0), 1, F, 0.0)
    U0, U1 = IBox.around(0.0, -1.0, 0.05), IBox.around(0.0, 1.0, 0.05)
    with pytest.raises(NoTransitFound) as ei:
        verify_birkhoff_related(F, c0, c1, U0, U1, 2, 6)
    assert ei.value.diagnostics


def test_standard_map_transits_both_ways():
    c0 = certify_fixed_point(STD, IBox.around(0.0, -1.0, 1e-3))
    c1 = certify_fixed_point(STD, IBox.around(0.0, 1.0, 1e-3))
    rec = verify_birkhoff_related(STD, c0, c1, IBox.around(0.0, -1.0, 0.05), IBox.around(0.0, 1.0, 0.05), 1, 30)
    assert rec.dpn_ok
    for t, (U, V) in ((rec.transit01, (-1, 1)), (rec.transit10, (1, -1))):
        p, q = IBox.from_json(t["point"]), IBox.from_json(t["image"])
        # the point lies in the source, its certified image strictly in the target (mod deck)
        assert abs(p.mid()[1] - U) <= 0.05
        assert abs(q.y.mid() - V) < 0.05 and q.width() < 1e-6


def test_dpn_on_separated_boxes():
    c0 = certify_fixed_point(DISS, IBox.around(0.0, 0.0, 1e-3))
    c1 = certify_fixed_point(DISS, IBox.around(0.1476, 4.0, 1e-3))
    e0, e1 = birkhoff_dpn(DISS, c0, c1, IBox.around(0.0, 0.0, 1e-9), IBox.around(*c1.box.mid(), 1e-9), 3)
    assert e0 < 1 and e1 < 1


def test_dpn_fails_on_overlapping_neighbourhoods():
    c0 = certify_fixed_point(STD, IBox.around(0.0, -1.0, 1e-3))
    c1 = certify_fixed_point(STD, IBox.around(0.0, 1.0, 1e-3))
    with pytest.raises(DpnFailure):
        birkhoff_dpn(STD, c0, c1, IBox.around(0.0, -1.0, 0.1), IBox.around(0.0, 1.0, 0.1), 1)
