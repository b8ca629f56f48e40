"""Twist and non-twist variations of the standard map.

Each row certifies a pair of fixed points with rotational difference 2 in
|y| <= 1, checks L2 >= L1 + c * N_L2 with L2 = 5 and finds an orbit going
from below y = -5 to above y = 5.  N_L2 is the largest vertical jump on the
band; it is 1 for the standard map and larger for the other w.

    python3 demos/hamiltonian_tables.py
"""
from horseshoe.certifiers import certify_hamiltonian
from horseshoe.recipes import NON_TWIST, TWIST, cells

for title, rows in (("twist", TWIST), ("non-twist", NON_TWIST)):
    print(title)
    for row, cfg in zip(rows, cells(rows)):
        cert = certify_hamiltonian(**cfg)
        nl2 = float.fromhex(cert["NL2_bound"][1])
        it = cert["records"]["crossing"]["iterations"]
        methods = ",".join(fp["method"] for fp in cert["fixed_points"])
        print(f"  h={row['h']:<12} w={row['w']:<10} N_L2<={nl2:.4f} it={it:>2} "
              f"(table {row['expect_iter']:>2})  {cert['verdict']}  [{methods}]")

# w = x(1-x) with h = sin(2 pi y): conjugating by (x, y) -> (1/2 - x, -y)
# turns it into w = x(x-1) and swaps the two crossing directions, so the
# downward crossing of one matches the upward crossing of the other
down = certify_hamiltonian(h="sin(2*pi*y)", w="x*(1-x)", direction="down")
up = certify_hamiltonian(h="sin(2*pi*y)", w="x*(x-1)", direction="up")
print("x(1-x) down:", down["records"]["crossing"]["iterations"],
      " x(x-1) up:", up["records"]["crossing"]["iterations"])
