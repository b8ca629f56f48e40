"""Randomized and curated checks of the quantitative lemmas.

Each lemma draws fresh instances until ``budget`` valid ones have been
checked (or the attempt budget runs out, which is reported, not raised).
Instances are sharded over threads; shard k uses the k-th child of a seeded
``numpy.random.SeedSequence``, so reports are reproducible.
"""
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
import math

import numpy as np

from . import generators as gen
from . import instances
from .geometry import EmptyI, TopologyError
from .invariants import (crossing_offsets, crossing_offsets_oracle, homotopic_difference,
                         interval_property, mu, mu_oracle, nu, nu_contacts, nu_oracle, rect_nu, theta,
                         theta_offsets, theta_offsets_oracle, theta_oracle)
from .separation import sep, sep_oracle

ATTEMPT_FACTOR = 60


# each check returns (holds, margin, oracle_agrees) or None when the draw is rejected

def _interval(rng):
    pair = gen.arc_pair(rng)
    if pair is None:
        return None
    A, B = pair
    if theta(A, B) == 0:
        return None
    ks = theta_offsets(A, B)
    agree = ks == theta_offsets_oracle(A, B)
    return interval_property(A, B), 0, agree


def _nu_theta(rng):
    trip = gen.shared_endpoint_arcs(rng)
    if trip is None:
        return None
    A, B, K = trip
    na, nb, th = nu(A, K), nu(B, K), theta(A, B)
    agree = na == nu_oracle(A, K) and nb == nu_oracle(B, K) and th == theta_oracle(A, B)
    lhs, rhs = abs(na - nb), 2 * th + 1
    return lhs <= rhs, rhs - lhs, agree


def _mu_interval(rng):
    got = gen.rectangle_and_arc(rng)
    if got is None:
        return None
    R, C = got
    ks = crossing_offsets(R, C)
    if not ks:
        return None
    agree = ks == crossing_offsets_oracle(R, C)
    return ks == list(range(min(ks), max(ks) + 1)), 0, agree


def _sep_nu(rng):
    cfg = gen.separation_config(rng)
    if cfg is None:
        return None
    x, A, G = cfg
    n = abs(nu(G, A))
    up, lo = sep(x, A, G, "upper"), sep(x, A, G, "lower")
    agree = up == sep_oracle(x, A, G, "upper") and lo == sep_oracle(x, A, G, "lower")
    total = up + lo
    return total >= n, total - n, agree


def _winding(rng):
    cfg = gen.winding_config(rng)
    if cfg is None:
        return None
    x, A, R = cfg
    n = rect_nu(R, A)
    up = min(sep(x, A, R.Ip, "upper"), sep(x, A, R.Im, "upper"))
    lo = min(sep(x, A, R.Ip, "lower"), sep(x, A, R.Im, "lower"))
    margin = max(up, lo) - Fraction(n, 2)
    return margin >= 0, float(margin), True


def _max_mu(B1, B2):
    vals = []
    for R, C in ((B1.rect, B2.A), (B1.rect, B2.B), (B2.rect, B1.A), (B2.rect, B1.B)):
        try:
            v = mu(R, C)
        except EmptyI:
            continue
        if v != mu_oracle(R, C):
            raise AssertionError("mu fast path and oracle disagree")
        vals.append(v)
    return max(vals) if vals else None


def _banner(rng):
    got = gen.banner_config(rng)
    if got is None:
        return None
    n, (B1, B2) = got
    B1.check()
    B2.check()
    gen.banner_hypotheses(B1, B2)
    N = homotopic_difference(B1, B2, check=False)
    if N < 10:
        return None
    best = _max_mu(B1, B2)
    bound = Fraction(N, 4) - 2
    if best is None:
        return False, -math.inf, True
    return best >= bound, float(best - bound), True


def _subarc(rng):
    pair = gen.arc_pair(rng)
    if pair is None:
        return None
    A, K = pair
    lo, hi = nu_contacts(A, K)
    if lo[0] == hi[0]:
        return None
    n = hi[1] - lo[1]
    Kp = gen.sub_arc_between(K, hi[2], lo[2])
    got = nu(Kp, A)
    return got == n, 0, got == nu_oracle(Kp, A) and n == nu_oracle(A, K)


LEMMAS = {
    "interval": _interval,
    "nu_theta": _nu_theta,
    "mu_interval": _mu_interval,
    "sep_nu": _sep_nu,
    "rectangle_winding": _winding,
    "banner": _banner,
    "subarc": _subarc,
}


def _shard(check, rng, want):
    done, rejected, bad, margin, mism = 0, 0, [], math.inf, 0
    for _ in range(want * ATTEMPT_FACTOR):
        if done >= want:
            break
        try:
            got = check(rng)
        except TopologyError:
            got = None
        if got is None:
            rejected += 1
            continue
        ok, m, agree = got
        done += 1
        mism += not agree
        margin = min(margin, m)
        if not ok:
            bad.append(done)
    return done, rejected, bad, margin, mism


def run_lemma(name, budget=1000, seed=0, threads=1):
    check = LEMMAS[name]
    shards = max(1, int(threads))
    children = np.random.SeedSequence([seed, sorted(LEMMAS).index(name)]).spawn(shards)
    sizes = [budget // shards + (1 if k < budget % shards else 0) for k in range(shards)]
    with ThreadPoolExecutor(max_workers=shards) as ex:
        parts = list(ex.map(lambda a: _shard(check, np.random.default_rng(a[0]), a[1]),
                            zip(children, sizes)))
    inst = sum(p[0] for p in parts)
    return {
        "lemma": name,
        "instances": inst,
        "rejected": sum(p[1] for p in parts),
        "violations": sum(len(p[2]) for p in parts),
        "oracle_mismatches": sum(p[4] for p in parts),
        "min_margin": min(p[3] for p in parts) if inst else None,
        "generation_failed": inst < budget,
    }


def curated():
    """Named worst-case constructions with their expected values."""
    out = []

    def rec(name, got, want):
        out.append({"case": name, "value": got, "expected": want, "ok": got == want})

    A, B = instances.theta_four()
    rec("theta_four", theta(A, B), 4)
    A, K = instances.nu_one()
    rec("nu_one", nu(A, K), 1)
    x, A, G = instances.sep_three()
    rec("sep_three", sep(x, A, G, "upper"), 3)
    A, K = instances.nu_one()
    rec("equal_arcs_nu_gap", abs(nu(A, K) - nu(A, K)) <= 2 * theta(A, A) + 1, True)
    B1, B2 = instances.banner_pair(12)
    N = homotopic_difference(B1, B2)
    rec("banner_difference", N, 12)
    rec("banner_max_mu_at_least_1", _max_mu(B1, B2) >= Fraction(N, 4) - 2, True)
    for n in (2, 3, 4):
        x, A, R = instances.winding_rectangle(n)
        up = min(sep(x, A, R.Ip, "upper"), sep(x, A, R.Im, "upper"))
        lo = min(sep(x, A, R.Ip, "lower"), sep(x, A, R.Im, "lower"))
        rec(f"winding_rectangle_{n}", max(up, lo) >= Fraction(n, 2), True)
    return out


def lemma_suite(budget=1000, seed=0, threads=1, lemmas=None):
    """Run every lemma on ``budget`` random instances plus the curated cases."""
    names = list(LEMMAS) if lemmas is None else list(lemmas)
    rows = [run_lemma(n, budget, seed, threads) for n in names]
    cur = curated()
    return {
        "budget": budget,
        "seed": seed,
        "lemmas": rows,
        "curated": cur,
        "violations": (sum(r["violations"] + r["oracle_mismatches"] for r in rows)
                       + sum(not c["ok"] for c in cur)),
    }
