"""Certificates are self-contained: recheck re-derives every record.

Certify the standard map, recheck it, then flip a single bit of one stored
number and watch the audit name the broken record.

    python3 demos/audit.py
"""
import copy

from horseshoe.certifiers import certify_hamiltonian
from horseshoe.recheck import recheck

cert = certify_hamiltonian(h="y", w="x")
rep = recheck(cert)
print("fresh certificate:", "ok" if rep.ok else rep.violations, f"({len(rep.checked)} records)")

edits = {
    "last crossing box": ("records", "crossing", "orbit", "boxes", -1, "y"),
    "N_L2 bound": ("records", "inequality", "NL2_bound"),
    "fixed point box": ("fixed_points", 0, "box", "x"),
}
for name, path in edits.items():
    bad = copy.deepcopy(cert)
    node = bad
    for p in path[:-1]:
        node = node[p]
    lo, hi = node[path[-1]]
    # one ulp up on the upper endpoint
    v = float.fromhex(hi)
    node[path[-1]] = [lo, (v + abs(v) * 2 ** -52 if v else 5e-324).hex()]
    rep = recheck(bad, check_hash=False)
    print(f"{name:>18}: {rep.violations[:2]}")

# with the hash check on, any edit at all is caught first
bad["assumptions"] = []
print("hash:", recheck(bad).violations[0])
