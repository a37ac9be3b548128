"""Exact clique/coclique numbers of derangement graphs and the invariants built on them.

The clique search is a bitset branch and bound with a greedy colouring
bound.  Vertices are ranked by descending degree (ties by index) before
colouring; witnesses are the lexicographically least maximum cliques in
the original vertex labels, so they do not depend on search order.
"""

import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .dgraph import (DerangementGraph, build_graph, complete_multipartite_decomposition,
                     find_triangle, is_bipartite, is_intersecting_set)
from .errors import CapExceeded, DerangementLabError
from .gf import is_prime
from .perm import (BlockSystem, all_minimal_block_systems, compose, conjugate, cycle_type,
                   element_order_perm, fix_subgroup, invert, is_derangement, is_normal,
                   is_transitive, max_stabilizer_order, minimal_block, orbits,
                   point_stabilizer, rank_on_pairs)

log = logging.getLogger(__name__)

DEFAULT_SOLVER_CAP = 5000
DEFAULT_STRICT_CAP = 500
DEFAULT_ENUMERATION_CAP = 10 ** 5
THREADS_ENV = "DERANGEMENT_LAB_THREADS"


def solver_threads():
    """Worker count requested through the environment (the search itself runs serially)."""
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


@dataclass
class CliqueResult:
    size: int
    witness: list
    exact: bool = True


class _CliqueSearch:
    """Branch and bound over int bitsets in degree-ranked labels."""

    def __init__(self, adj):
        adj = np.asarray(adj, dtype=bool)
        n = adj.shape[0]
        self.n = n
        deg = adj.sum(axis=1)
        self.order = sorted(range(n), key=lambda v: (-int(deg[v]), v))
        self.rank = [0] * n
        for r, v in enumerate(self.order):
            self.rank[v] = r
        perm = np.array(self.order, dtype=np.int64)
        ranked = adj[np.ix_(perm, perm)] if n else adj
        packed = np.packbits(ranked, axis=1, bitorder="little")
        self.adj = [int.from_bytes(r.tobytes(), "little") for r in packed]

    def to_ranked(self, vertices):
        bits = 0
        for v in vertices:
            bits |= 1 << self.rank[v]
        return bits

    def _colour(self, P):
        adj = self.adj
        verts, bounds = [], []
        k = 0
        U = P
        while U:
            k += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                U ^= low
                Q = (Q ^ low) & ~adj[v]
                verts.append(v)
                bounds.append(k)
        return verts, bounds

    def run(self, P, best=0, target=None, collect=False, limit=None):
        """Search inside candidate set P.

        Without ``collect`` returns the largest clique found above ``best``
        (stopping early at ``target``).  With ``collect`` every clique of
        size exactly ``target`` is gathered, up to ``limit``.
        """
        self.best = best
        self.best_clique = None
        self.target = target
        self.collect = collect
        self.found = []
        self.limit = limit
        self.done = False
        self._expand(P, [])
        return self.best_clique if not collect else self.found

    def _expand(self, P, clique):
        verts, bounds = self._colour(P)
        adj = self.adj
        size = len(clique)
        for i in range(len(verts) - 1, -1, -1):
            if self.collect:
                if size + bounds[i] < self.target:
                    return
            elif size + bounds[i] <= self.best:
                return
            v = verts[i]
            clique.append(v)
            NP = P & adj[v]
            if NP and (not self.collect or size + 1 < self.target):
                self._expand(NP, clique)
            else:
                self._record(clique)
            clique.pop()
            if self.done:
                return
            P &= ~(1 << v)

    def _record(self, clique):
        if self.collect:
            if len(clique) == self.target:
                self.found.append(sorted(self.order[v] for v in clique))
                if self.limit is not None and len(self.found) >= self.limit:
                    self.done = True
            return
        if len(clique) > self.best:
            self.best = len(clique)
            self.best_clique = list(clique)
            if self.target is not None and self.best >= self.target:
                self.done = True

    def has_clique(self, P, k):
        if k <= 0:
            return True
        if P.bit_count() < k:
            return False
        return self.run(P, best=k - 1, target=k) is not None

    def lex_least(self, size, first=None):
        """Lexicographically least clique of the given size, in original labels."""
        n = self.n
        above = [0] * (n + 1)
        for v in range(n - 1, -1, -1):
            above[v] = above[v + 1] | (1 << self.rank[v])
        cand = (1 << n) - 1
        chosen = []
        need = size
        for v in range(n):
            if need == 0:
                break
            r = self.rank[v]
            if not (cand >> r) & 1:
                continue
            sub = cand & self.adj[r] & above[v + 1]
            if (first is not None and not chosen and v == first) or self.has_clique(sub, need - 1):
                chosen.append(v)
                cand = sub
                need -= 1
        if need:
            raise AssertionError("lexicographic witness search lost the clique")
        return chosen


def _greedy_clique(adj):
    adj = np.asarray(adj, dtype=bool)
    cand = np.ones(adj.shape[0], dtype=bool)
    clique = []
    while cand.any():
        v = int(np.nonzero(cand)[0][0])
        clique.append(v)
        cand &= adj[v]
    return clique


def clique_number(adj, vertex_transitive=False, cap=DEFAULT_SOLVER_CAP):
    """Exact maximum clique of a boolean adjacency matrix.

    With ``vertex_transitive`` the search is confined to cliques through
    vertex 0, which loses nothing when some automorphism moves any vertex
    to 0 (true for every Cayley graph).
    """
    adj = np.asarray(adj, dtype=bool)
    n = adj.shape[0]
    if n == 0:
        return CliqueResult(0, [])
    if n > cap:
        w = _greedy_clique(adj)
        log.warning("vertex count %d exceeds solver cap %d; returning a lower bound", n, cap)
        return CliqueResult(len(w), w, exact=False)
    search = _CliqueSearch(adj)
    if vertex_transitive:
        r0 = search.rank[0]
        found = search.run(search.adj[r0])
        size = 1 + (len(found) if found else 0)
        witness = search.lex_least(size, first=0)
    else:
        found = search.run((1 << n) - 1)
        size = len(found)
        witness = search.lex_least(size)
    return CliqueResult(size, witness)


def complement(adj):
    adj = np.asarray(adj, dtype=bool)
    out = ~adj
    np.fill_diagonal(out, False)
    return out


def _as_adjacency(graph):
    if isinstance(graph, DerangementGraph):
        return graph.adjacency, True
    return np.asarray(graph, dtype=bool), False


def max_clique(graph, decomposition=None, cap=DEFAULT_SOLVER_CAP):
    """Maximum clique; a multipartite decomposition short-circuits to one vertex per part."""
    if decomposition is not None:
        witness = sorted(min(part) for part in decomposition.parts)
        return CliqueResult(decomposition.part_count, witness)
    adj, vt = _as_adjacency(graph)
    return clique_number(adj, vertex_transitive=vt, cap=cap)


def max_coclique(graph, decomposition=None, cap=DEFAULT_SOLVER_CAP):
    """Maximum independent set; for a derangement graph, a largest intersecting family."""
    if decomposition is not None:
        part = next(p for p in decomposition.parts if 0 in p)
        return CliqueResult(len(part), sorted(part))
    adj, vt = _as_adjacency(graph)
    return clique_number(complement(adj), vertex_transitive=vt, cap=cap)


def all_maximum_cliques(adj, size, limit=DEFAULT_ENUMERATION_CAP):
    """Every clique of the given size (capped at ``limit``), sorted."""
    if size == 0:
        return [[]], True
    search = _CliqueSearch(adj)
    found = search.run((1 << search.n) - 1, target=size, collect=True, limit=limit)
    return sorted(found), not search.done


def all_maximum_cocliques(graph, size, limit=DEFAULT_ENUMERATION_CAP):
    adj, _ = _as_adjacency(graph)
    return all_maximum_cliques(complement(adj), size, limit)


@dataclass
class BoundReport:
    alpha: int
    omega: int
    vertices: int
    holds: bool
    equality: bool
    witnesses_meet_once: object = None


def clique_coclique_check(graph, alpha, omega):
    """alpha * omega <= |V|; at equality the two witnesses must share exactly one vertex."""
    n = graph.n if isinstance(graph, DerangementGraph) else len(graph)
    a = alpha.size if isinstance(alpha, CliqueResult) else alpha
    w = omega.size if isinstance(omega, CliqueResult) else omega
    report = BoundReport(a, w, n, a * w <= n, a * w == n)
    if report.equality and isinstance(alpha, CliqueResult) and isinstance(omega, CliqueResult):
        report.witnesses_meet_once = len(set(alpha.witness) & set(omega.witness)) == 1
    return report


def intersection_density(g, alpha=None, graph=None):
    """Largest intersecting family over the largest point stabilizer, exactly."""
    if alpha is None:
        graph = graph or build_graph(g)
        alpha = max_coclique(graph, complete_multipartite_decomposition(graph)).size
    elif isinstance(alpha, CliqueResult):
        alpha = alpha.size
    if not is_transitive(g):
        log.warning("%s is not transitive; using the largest point stabilizer", g.name)
    return Fraction(alpha, max_stabilizer_order(g))


def _is_stabilizer_coset(g, family):
    first = family[0]
    for w in range(g.degree):
        img = first.images[w]
        if all(x.images[w] == img for x in family):
            return True
    return False


def ekr_check(g, graph=None, alpha=None, strict_cap=DEFAULT_STRICT_CAP,
              enumeration_cap=DEFAULT_ENUMERATION_CAP):
    """Return ``(ekr, strict_ekr)``; ``strict_ekr`` is None when not decided."""
    if not is_transitive(g):
        raise DerangementLabError("EKR check needs a transitive group")
    graph = graph or build_graph(g)
    if alpha is None:
        alpha = max_coclique(graph, complete_multipartite_decomposition(graph)).size
    elif isinstance(alpha, CliqueResult):
        alpha = alpha.size
    stab = g.order // g.degree
    ekr = alpha == stab
    if not ekr or g.order > strict_cap:
        return ekr, None
    families, complete = all_maximum_cocliques(graph, alpha, enumeration_cap)
    if not complete:
        return ekr, None
    strict = all(_is_stabilizer_coset(g, [g.elements[i] for i in fam]) for fam in families)
    return ekr, strict


@dataclass
class TwoPClique:
    clique: list
    case: str
    rho_bound: Fraction
    rho: Fraction = None


def _is_clique(elements):
    return all(is_derangement(compose(x, invert(y)))
               for i, x in enumerate(elements) for y in elements[i + 1:])


def two_p_clique(g, p):
    """A clique of size p in the derangement graph of a transitive group of degree 2p.

    If some element of order p is a product of two p-cycles its powers form
    the clique.  Otherwise the first order-p element is a p-cycle on a
    block B of a two-block system {B, B'}; a p-cycle supported on B'
    multiplied with it gives the required product of two p-cycles.
    Primitive groups lacking such an element fall back to computing the
    density directly.
    """
    if not (isinstance(p, int) and p > 2 and is_prime(p)):
        raise ValueError(f"p = {p} is not an odd prime")
    if g.degree != 2 * p:
        raise ValueError(f"degree {g.degree} is not 2p = {2 * p}")
    if not is_transitive(g):
        raise DerangementLabError("two_p_clique needs a transitive group")
    sigma = next((x for x in g.elements if element_order_perm(x) == p), None)
    if sigma is None:
        raise DerangementLabError(f"no element of order {p}: not a valid transitive group of degree 2p")
    bound = Fraction(2 * p, p)
    if cycle_type(sigma) == (p, p):
        return _finish_two_p(g, [sigma ** k for k in range(p)], "double-cycle", bound)
    support = sorted(set(range(1, 2 * p + 1)) - set(fixed_point_list(sigma)))
    block = minimal_block(g, support[0], support[1])
    if len(block) == 2:
        raise DerangementLabError("p-cycle found alongside a block system of 2-sets")
    if len(block) == p:
        other = set(range(1, 2 * p + 1)) - set(block)
        for x in g.elements:
            if cycle_type(x)[0] == p and set(fixed_point_list(x)) == set(block):
                tau = compose(sigma, x)
                return _finish_two_p(g, [tau ** k for k in range(p)], "imprimitive", bound)
        raise DerangementLabError(f"no p-cycle supported on {sorted(other)}")
    for x in g.elements:
        if cycle_type(x) == (p, p):
            return _finish_two_p(g, [x ** k for k in range(p)], "primitive", bound)
    rho = intersection_density(g)
    return TwoPClique([], "primitive-fallback", rho, rho)


def fixed_point_list(x):
    return sorted(i + 1 for i, v in enumerate(x.images) if i == v)


def _finish_two_p(g, clique, case, bound):
    clique = sorted(clique)
    if len(set(clique)) != len(clique) or not _is_clique(clique):
        raise DerangementLabError("constructed set is not a clique")
    return TwoPClique(clique, case, bound)


@dataclass
class NoHomomorphismReport:
    alpha_g: int
    alpha_h: int
    bound: Fraction
    holds: bool
    rho_g: Fraction
    rho_h: Fraction
    rho_holds: bool


def no_homomorphism_bound(g, h, alpha_g=None, alpha_h=None):
    """Check alpha(G) <= alpha(H) |G|/|H| and rho(G) <= rho(H) for transitive H <= G."""
    if not all(x in g for x in h.elements):
        raise DerangementLabError("h is not a subgroup of g")
    if not (is_transitive(g) and is_transitive(h)):
        raise DerangementLabError("both groups must be transitive")
    if alpha_g is None:
        alpha_g = _alpha(g)
    if alpha_h is None:
        alpha_h = _alpha(h)
    bound = Fraction(alpha_h * g.order, h.order)
    rho_g = Fraction(alpha_g * g.degree, g.order)
    rho_h = Fraction(alpha_h * h.degree, h.order)
    return NoHomomorphismReport(alpha_g, alpha_h, bound, alpha_g <= bound, rho_g, rho_h, rho_g <= rho_h)


def _alpha(g):
    graph = build_graph(g)
    return max_coclique(graph, complete_multipartite_decomposition(graph)).size


# -- whole-group analysis ---------------------------------------------------

@dataclass
class AnalysisReport:
    name: str
    degree: int
    order: int
    transitive: bool
    stabilizer_size: int
    alpha: int
    omega: int
    clique_witness: list
    coclique_witness: list
    rho: Fraction
    ekr: bool
    strict_ekr: object
    multipartite: object
    rank: object
    block_systems: list
    fix_order: int
    exact: bool = True
    checks: list = field(default_factory=list)

    def check(self, name, ok, detail=""):
        self.checks.append({"name": name, "pass": bool(ok), "detail": detail})

    @property
    def passed(self):
        return all(c["pass"] for c in self.checks)

    def to_dict(self):
        return {
            "format": 1,
            "group": {"name": self.name, "degree": self.degree, "order": self.order},
            "transitive": self.transitive,
            "stabilizer_size": self.stabilizer_size,
            "alpha": self.alpha,
            "omega": self.omega,
            "rho": {"num": self.rho.numerator, "den": self.rho.denominator},
            "rho_is_integer": self.rho.denominator == 1,
            "ekr": self.ekr,
            "strict_ekr": self.strict_ekr,
            "multipartite": self.multipartite,
            "rank": self.rank,
            "block_systems": self.block_systems,
            "fix_order": self.fix_order,
            "exact": self.exact,
            "clique_witness": self.clique_witness,
            "coclique_witness": self.coclique_witness,
            "checks": self.checks,
        }


def analyze(g, max_vertices=20000, solver_cap=DEFAULT_SOLVER_CAP, strict_cap=DEFAULT_STRICT_CAP,
            cross_check_limit=200):
    """Compute every invariant of ``g`` and the structural checks that go with them."""
    graph = build_graph(g, max_vertices=max_vertices)
    transitive = is_transitive(g)
    decomp = complete_multipartite_decomposition(graph)
    omega = max_clique(graph, decomp, cap=solver_cap)
    alpha = max_coclique(graph, decomp, cap=solver_cap)
    stab = max_stabilizer_order(g)
    rho = Fraction(alpha.size, stab)
    F = fix_subgroup(g)
    if transitive:
        ekr, strict = ekr_check(g, graph, alpha.size, strict_cap=strict_cap)
        rank = rank_on_pairs(g) if g.degree ** 2 <= 10 ** 7 else None
        systems = [{"cells": s.cell_count, "cell_size": s.cell_size}
                   for s in all_minimal_block_systems(g)]
    else:
        ekr, strict, rank, systems = alpha.size <= stab, None, None, []
    multipartite = None
    if decomp is not None:
        multipartite = {"parts": decomp.part_count, "part_size": decomp.part_size}
    report = AnalysisReport(
        name=g.name, degree=g.degree, order=g.order, transitive=transitive,
        stabilizer_size=stab, alpha=alpha.size, omega=omega.size,
        clique_witness=omega.witness, coclique_witness=alpha.witness, rho=rho,
        ekr=ekr, strict_ekr=strict, multipartite=multipartite, rank=rank,
        block_systems=systems, fix_order=F.order, exact=alpha.exact and omega.exact)
    _run_checks(report, g, graph, alpha, omega, decomp, F, solver_cap, cross_check_limit)
    return report


def _run_checks(report, g, graph, alpha, omega, decomp, F, solver_cap, cross_check_limit):
    bound = clique_coclique_check(graph, alpha, omega)
    detail = f"{bound.alpha}*{bound.omega} vs {bound.vertices}"
    report.check("clique_coclique_bound", bound.holds, detail)
    if bound.witnesses_meet_once is not None:
        report.check("clique_coclique_equality_witness", bound.witnesses_meet_once)
    family = [g.elements[i] for i in alpha.witness]
    report.check("coclique_witness_intersecting", is_intersecting_set(g, family))
    adj = graph.adjacency
    w = omega.witness
    report.check("clique_witness_adjacent", bool(all(adj[a, b] for a in w for b in w if a != b)))
    der = {g.elements[i] for i in graph.der}
    inv_closed = all(invert(x) in der for x in der)
    conj_closed = all(conjugate(x, s) in der for x in der for s in g.generators)
    report.check("derangements_closed", inv_closed and conj_closed)
    report.check("fix_normal", is_normal(g, F), f"|Fix(G)| = {F.order}")
    if report.transitive:
        stab_ok = all(point_stabilizer(g, w).order * g.degree == g.order
                      for w in range(1, g.degree + 1))
        report.check("orbit_stabilizer", stab_ok)
        fix_blocks = BlockSystem(orbits(F)).is_preserved_by(g) if len(orbits(F)) > 0 else False
        report.check("fix_orbits_blocks", fix_blocks)
        if g.degree >= 3:
            report.check("triangle_present", find_triangle(graph) is not None)
            report.check("not_bipartite", not is_bipartite(graph))
            report.check("rho_range", 1 <= report.rho <= Fraction(g.degree, 3), str(report.rho))
        elif g.degree == 2:
            report.check("bipartite_degree_two", is_bipartite(graph))
    if decomp is not None:
        report.check("multipartite_parts_match_fix",
                     decomp.part_size == F.order and decomp.part_count * F.order == g.order)
        if g.order <= cross_check_limit:
            a = clique_number(complement(adj), vertex_transitive=True, cap=solver_cap).size
            o = clique_number(adj, vertex_transitive=True, cap=solver_cap).size
            report.check("multipartite_shortcut_vs_search",
                         (a, o) == (alpha.size, omega.size), f"search gave alpha={a}, omega={o}")
    if not report.exact:
        report.check("solver_exact", False, "solver cap hit; values are lower bounds")
