"""
A group on the lines of the affine plane
========================================

Translations together with a Singer cycle act on the q(q+1) lines of
AG(2,q).  The derangement graph splits into q+1 parts, one per coset of the
subgroup of translation-times-scalar maps, and the density equals q.
"""

from derangement_lab.constructions import build_gq, build_mq, enumerate_lines
from derangement_lab.dgraph import build_graph, complete_multipartite_decomposition
from derangement_lab.gf import field_of_order
from derangement_lab.perm import fix_subgroup
from derangement_lab.solver import intersection_density, max_coclique

s = field_of_order(3)
for line, pts in enumerate_lines(s)[:4]:
    print(f"line {line.flat}: slope code {line.dir}, offset {line.off}, points {pts}")

for q in (2, 3, 4, 5):
    G = build_gq(q)
    M = build_mq(q)
    graph = build_graph(G)
    parts = complete_multipartite_decomposition(graph)
    alpha = max_coclique(graph, parts)
    print(f"q={q}: |G|={G.order} on {G.degree} lines, Fix(G) = M_q: {fix_subgroup(G) == M},"
          f" {parts.part_count} parts of size {parts.part_size}, rho = {intersection_density(G, alpha)}")
