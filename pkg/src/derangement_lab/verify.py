"""End-to-end checks of the three main results at a chosen size.

Each ``verify_*`` function returns a :class:`Verification` whose checks are
named after the invariant they test, so a failing run says what broke.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .constructions import (affine_to_line_perm, build_fourell, build_gq, build_mq, build_singer,
                            line_through, mq_maps)
from .dgraph import build_graph, complete_multipartite_decomposition, is_intersecting_set
from .gf import field_of_order
from .perm import (BlockSystem, compose, conjugate, fix_subgroup, fixed_points, generate_group,
                   invert, is_normal, is_transitive, point_stabilizer)
from .solver import (DEFAULT_SOLVER_CAP, clique_coclique_check, intersection_density, max_clique,
                     max_coclique, two_p_clique)


@dataclass
class Verification:
    theorem: str
    params: dict
    checks: list = field(default_factory=list)
    facts: dict = field(default_factory=dict)

    def check(self, name, ok, detail=""):
        self.checks.append({"name": name, "pass": bool(ok), "detail": str(detail)})
        return ok

    @property
    def passed(self):
        return all(c["pass"] for c in self.checks)

    @property
    def failures(self):
        return [c["name"] for c in self.checks if not c["pass"]]

    def to_dict(self):
        return {"format": 1, "theorem": self.theorem, "params": self.params,
                "passed": self.passed, "facts": self.facts, "checks": self.checks}


def _fixed_line_of_scalar_map(m, s):
    """A line fixed by (b, kI): through (1-k)^-1 b for k != 1, else a line in direction b."""
    k = m.A.a
    b = m.b
    if k != 1:
        scale = s.inv(s.sub(1, k))
        beta = (s.mul(scale, b[0]), s.mul(scale, b[1]))
        other = (s.add(beta[0], 1), beta[1])
    else:
        beta = (0, 0)
        other = b if b != (0, 0) else (1, 0)
    return line_through(beta, other, s)


def verify_main(q, max_vertices=20000):
    """Complete (q+1)-partite derangement graph of G_q(A) on the q(q+1) lines."""
    v = Verification("main", {"q": q})
    s = field_of_order(q)
    A = build_singer(s)
    v.check("singer_order", A.order() == q * q - 1, f"order {A.order()}")
    G = build_gq(s)
    n = q * (q + 1)
    v.facts.update(degree=G.degree, order=G.order)
    v.check("degree", G.degree == n, G.degree)
    v.check("order", G.order == q * q * (q * q - 1), G.order)
    v.check("transitive", is_transitive(G))
    parallel = BlockSystem([range(d * q + 1, d * q + q + 1) for d in range(q + 1)])
    v.check("parallel_classes_are_blocks", parallel.is_preserved_by(G))
    stab = point_stabilizer(G, 1)
    v.check("stabilizer_order", stab.order == q * (q - 1), stab.order)

    M = build_mq(s)
    v.check("mq_order", M.order == q * q * (q - 1), M.order)
    v.check("mq_subgroup", all(x in G for x in M.elements))
    v.check("mq_normal", is_normal(G, M))
    formula_ok = True
    for m in mq_maps(s):
        x = affine_to_line_perm(m, s, check=False)
        line = _fixed_line_of_scalar_map(m, s)
        formula_ok &= x.images[line.flat] == line.flat and x in M
    v.check("mq_fixed_line_formula", formula_ok)
    v.check("mq_intersecting", all(fixed_points(x) for x in M.elements))
    F = fix_subgroup(G)
    v.check("fix_equals_mq", F == M, f"|Fix| = {F.order}")

    graph = build_graph(G, max_vertices=max_vertices)
    decomp = complete_multipartite_decomposition(graph)
    ok = decomp is not None
    v.check("complete_multipartite", ok)
    if ok:
        v.facts.update(parts=decomp.part_count, part_size=decomp.part_size)
        v.check("part_count", decomp.part_count == q + 1, decomp.part_count)
        v.check("part_size", decomp.part_size == q * q * (q - 1), decomp.part_size)
        alpha = max_coclique(graph, decomp)
        omega = max_clique(graph, decomp)
        rho = intersection_density(G, alpha)
        v.facts["rho"] = str(rho)
        v.check("rho_equals_q", rho == Fraction(q), rho)
        bound = clique_coclique_check(graph, alpha, omega)
        v.check("clique_coclique_equality", bound.equality and bound.witnesses_meet_once)
        part0 = sorted(G.elements[i] for i in decomp.parts[0])
        v.check("identity_part_is_fix", part0 == list(F.elements))
    return v


def verify_fourell(ell, max_vertices=20000):
    """Complete 2l-partite derangement graph of the degree-4l group."""
    v = Verification("fourell", {"ell": ell})
    G, sp = build_fourell(ell)
    H = sp.H
    n = 4 * ell
    v.facts.update(degree=G.degree, order=G.order)
    v.check("order", G.order == 2 ** (ell - 1) * 2 * ell, G.order)
    v.check("transitive", is_transitive(G))
    v.check("h_order", H.order == 2 ** (ell - 1), H.order)
    A, tau, c = sp.A, sp.tau, sp.c
    for i, j in [(1, 3), (2, 4), (3, 1), (4, 2)]:
        v.check(f"tau_inverts_A{i}", compose(compose(tau, A[i]), invert(tau)) == invert(A[j]))
    v.check("tau_inverts_c", compose(compose(tau, c), invert(tau)) == invert(c))
    Hs = set(H.elements)
    v.check("c_normalises_h", all(conjugate(x, c) in Hs for x in H.generators))
    v.check("tau_normalises_h", all(conjugate(x, tau) in Hs for x in H.generators))
    D = generate_group([c, tau])
    v.check("dihedral_order", D.order == 2 * ell, D.order)
    v.check("h_meets_dihedral_trivially", set(D.elements) & Hs == {G.identity})
    v.check("semidirect_order", G.order == H.order * D.order)
    v.check("h_parity_fixed_points", all(len(fixed_points(x)) >= 4 for x in H.elements))
    stab = point_stabilizer(G, 1)
    v.check("stabilizer_order", stab.order == 2 ** (ell - 2), stab.order)
    K = generate_group([sp.pi[j] for j in range(5, 4 * ell - 6, 4)] or [G.identity])
    v.check("stabilizer_is_k", K == stab)
    F = fix_subgroup(G)
    v.check("fix_equals_h", F == H, f"|Fix| = {F.order}")
    graph = build_graph(G, max_vertices=max_vertices)
    decomp = complete_multipartite_decomposition(graph)
    v.check("complete_multipartite", decomp is not None)
    if decomp is not None:
        v.facts.update(parts=decomp.part_count, part_size=decomp.part_size)
        v.check("part_count", decomp.part_count == 2 * ell, decomp.part_count)
        alpha = max_coclique(graph, decomp)
        rho = intersection_density(G, alpha)
        v.facts["rho"] = str(rho)
        v.check("rho_equals_2", rho == 2, rho)
    v.check("blocks_of_pairs", BlockSystem([(i, i + 1) for i in range(1, n, 2)]).is_preserved_by(G))
    return v


def verify_twop(g, p, solver_cap=DEFAULT_SOLVER_CAP):
    """A p-clique certifies density at most 2 for a transitive group of degree 2p."""
    v = Verification("twop", {"group": g.name, "p": p})
    v.check("degree", g.degree == 2 * p, g.degree)
    v.check("transitive", is_transitive(g))
    if not v.passed:
        return v
    res = two_p_clique(g, p)
    v.facts["case"] = res.case
    if res.clique:
        v.facts["clique"] = [repr(x) for x in res.clique]
        v.check("clique_size", len(res.clique) == p, len(res.clique))
        graph = build_graph(g)
        idx = [g.index[x] for x in res.clique]
        v.check("clique_in_graph", all(graph.adjacency[a, b] for a in idx for b in idx if a != b))
        v.check("rho_bound_from_clique", Fraction(g.degree, len(res.clique)) == 2)
        if g.order <= solver_cap:
            decomp = complete_multipartite_decomposition(graph)
            alpha = max_coclique(graph, decomp, cap=solver_cap)
            rho = intersection_density(g, alpha)
            v.facts["rho"] = str(rho)
            v.check("rho_at_most_2", rho <= 2, rho)
            v.check("coclique_intersecting",
                    is_intersecting_set(g, [g.elements[i] for i in alpha.witness]))
    else:
        v.facts["rho"] = str(res.rho)
        v.check("rho_at_most_2", res.rho <= 2, res.rho)
    return v
