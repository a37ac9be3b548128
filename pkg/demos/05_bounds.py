"""
Clique-coclique and subgroup bounds
===================================

For a vertex-transitive graph alpha * omega <= |V|.  A transitive subgroup
H of G also bounds the density of G from above.
"""

from derangement_lab import constructions as C
from derangement_lab.dgraph import build_graph
from derangement_lab.solver import analyze, clique_coclique_check, max_clique, max_coclique, no_homomorphism_bound

for g in (C.build_symmetric(4), C.build_example6(), C.build_agl2(2)):
    graph = build_graph(g)
    rep = clique_coclique_check(graph, max_coclique(graph), max_clique(graph))
    print(f"{g.name}: alpha={rep.alpha} omega={rep.omega} |G|={rep.vertices} equality={rep.equality}")

rep = no_homomorphism_bound(C.build_agl2(3), C.build_gq(3))
print(f"AGL(2,3): rho = {rep.rho_g} <= rho(G_3) = {rep.rho_h}")

report = analyze(C.build_agl2(3))
print("AGL(2,3) rank", report.rank, "block systems", report.block_systems, "ekr", report.ekr)
