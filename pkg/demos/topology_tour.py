"""The arc invariants on hand-built examples.

Coordinates are exact rationals, so every number below is exact, and each
one is also computed by a brute-force oracle.

    python3 demos/topology_tour.py
"""
from horseshoe.topology import homotopic_difference, mu, nu, sep, theta, theta_oracle
from horseshoe.topology import instances
from horseshoe.topology.lemmas import run_lemma

A, B = instances.theta_four()
print("theta of a staircase and a bar:", theta(A, B), "(oracle", theta_oracle(A, B), ")")

A, K = instances.nu_one()
print("nu of an arc that wraps once between its first and last hit:", nu(A, K))

x, A, G = instances.sep_three()
print("sep+ of the initial point of a helix under a bar:", sep(x, A, G, "upper"),
      " sep-:", sep(x, A, G, "lower"), " |nu(gamma, A)|:", abs(nu(G, A)))

B1, B2 = instances.banner_pair(12)
N = homotopic_difference(B1, B2)
print("banners with homotopic difference", N, "-> mu of the winding band along B1.B:",
      mu(B2.rect, B1.B), ">= N/4 - 2 =", N / 4 - 2)
print("rerouted once:", homotopic_difference(B1, instances.reroute_once(B1)))

for lemma in ("interval", "nu_theta", "sep_nu", "mu_interval"):
    r = run_lemma(lemma, budget=100, seed=1)
    print(f"{lemma:12s} {r['instances']} instances, {r['violations']} violations, "
          f"{r['oracle_mismatches']} oracle mismatches")
