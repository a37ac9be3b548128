"""
The degree-4l family
====================

For odd l, an elementary abelian 2-group H extended by a dihedral group of
order 2l acts on 4l points.  Every element of H fixes a point, H is exactly
the subgroup generated by non-derangements, and the density is 2.
"""

from derangement_lab.constructions import build_fourell
from derangement_lab.perm import fix_subgroup
from derangement_lab.verify import verify_fourell

G, parts = build_fourell(3)
print("tau =", parts.tau)
print("c   =", parts.c)
print("H generated by", [str(x) for x in parts.H.generators])
print("Fix(G) == H:", fix_subgroup(G) == parts.H)

for ell in (3, 5, 7):
    v = verify_fourell(ell)
    print(f"l={ell}: passed={v.passed}, |G|={v.facts['order']}, parts={v.facts['parts']}, rho={v.facts['rho']}")

try:
    build_fourell(4)
except ValueError as exc:
    print("l=4:", exc)
