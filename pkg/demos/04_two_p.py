"""
Cliques of size p in degree-2p groups
=====================================

A transitive group of degree 2p contains an element whose powers form a
clique of size p, so the density is at most 2p / p = 2.
"""

from derangement_lab import constructions as C
from derangement_lab.solver import intersection_density, two_p_clique

groups = [
    (3, C.build_example6()),
    (3, C.build_wreath_cyclic(3)),
    (5, C.build_on_pairs(C.build_alternating(5))),
    (5, C.build_on_pairs(C.build_symmetric(5))),
    (7, C.build_dihedral(14)),
]
for p, g in groups:
    res = two_p_clique(g, p)
    print(f"{g.name} (p={p}): case {res.case}, clique element {res.clique[1]},"
          f" rho = {intersection_density(g)}")
