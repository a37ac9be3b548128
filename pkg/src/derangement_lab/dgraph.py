"""Derangement graphs: construction, bipartiteness, triangles, multipartite structure."""

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceeded, InconsistencyError
from .perm import fix_subgroup, is_derangement

DEFAULT_MAX_VERTICES = 20000


def derangement_set(g):
    """Derangements of g, in canonical element order."""
    return [x for x in g.elements if is_derangement(x)]


def derangement_indices(g):
    arr = g.array
    return np.nonzero((arr != np.arange(g.degree)).all(axis=1))[0]


@dataclass
class DerangementGraph:
    """Cayley graph of a group on its derangements.

    Vertex i is ``group.elements[i]``; ``adjacency`` is a dense boolean
    matrix, and ``rows`` gives the same rows as Python-int bitsets.
    """

    group: object
    adjacency: np.ndarray
    der: np.ndarray
    _rows: list = field(default=None, repr=False)

    @property
    def n(self):
        return self.adjacency.shape[0]

    @property
    def degree(self):
        return len(self.der)

    @property
    def rows(self):
        if self._rows is None:
            self._rows = bitset_rows(self.adjacency)
        return self._rows

    def packed_rows(self):
        """Adjacency rows packed eight vertices per byte, little-endian bit order."""
        return np.packbits(self.adjacency, axis=1, bitorder="little")


def bitset_rows(adj):
    """Rows of a boolean matrix as ints with bit j set when adj[i, j]."""
    packed = np.packbits(np.asarray(adj, dtype=bool), axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


def build_graph(g, max_vertices=DEFAULT_MAX_VERTICES):
    """Derangement graph: x ~ y iff x * y^-1 is a derangement.

    For each derangement d the neighbours of every element x are read off
    as the rows ``x[d]``, i.e. ``d * x`` acting left to right.
    """
    if g.order > max_vertices:
        raise CapExceeded(f"|G| = {g.order} exceeds vertex cap {max_vertices}", partial=0)
    arr = g.array
    der = derangement_indices(g)
    N = g.order
    adj = np.zeros((N, N), dtype=bool)
    base = g.base
    for d in der:
        if base is None:
            nbr = g.lookup_rows(arr[:, arr[d]])
        else:
            nbr = g.lookup_base_images(arr[:, arr[d][base]])
        adj[np.arange(N), nbr] = True
    return DerangementGraph(g, adj, der)


def pointwise_adjacency(g):
    """Oracle: x ~ y iff x and y disagree on every point."""
    arr = g.array
    adj = np.ones((g.order, g.order), dtype=bool)
    for w in range(g.degree):
        col = arr[:, w]
        adj &= col[:, None] != col[None, :]
    return adj


def is_bipartite(graph):
    adj = _adjacency(graph)
    n = adj.shape[0]
    color = np.full(n, -1)
    nbrs = [np.nonzero(r)[0] for r in adj]
    for s in range(n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in nbrs[u]:
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return False
    return True


def find_triangle(graph):
    """Lexicographically least triangle (u < v < w), or None."""
    rows = _rows(graph)
    for u, ru in enumerate(rows):
        higher = ru >> (u + 1) << (u + 1)
        while higher:
            v = (higher & -higher).bit_length() - 1
            common = ru & rows[v] & ~((1 << (v + 1)) - 1)
            if common:
                return (u, v, (common & -common).bit_length() - 1)
            higher &= higher - 1
    return None


@dataclass
class MultipartiteDecomposition:
    parts: list
    part_count: int
    part_size: int
    fix_order: int
    complete_graph: bool = False


def coset_labels(g, h):
    """Label each element of g by its right coset ``h * x``."""
    labels = np.full(g.order, -1)
    arr = g.array
    h_rows = h.array
    nxt = 0
    for i in range(g.order):
        if labels[i] >= 0:
            continue
        members = g.lookup_rows(arr[i][h_rows])
        labels[members] = nxt
        nxt += 1
    return labels


def partition_witness(adj, labels):
    """First vertex pair where adjacency differs from "labels differ", or None."""
    expected = labels[:, None] != labels[None, :]
    bad = np.argwhere(adj != expected)
    if len(bad) == 0:
        return None
    u, v = map(int, bad[0])
    kind = "edge inside a part" if adj[u, v] else "missing edge between parts"
    return (u, v, kind)


def structural_parts(adj):
    """Parts of a complete multipartite graph read off its non-adjacency rows.

    The graph is complete multipartite iff non-adjacency (with the diagonal)
    is an equivalence relation; returns the classes, or None.
    """
    non = ~np.asarray(adj, dtype=bool)
    np.fill_diagonal(non, True)
    packed = np.packbits(non, axis=1)
    classes = {}
    for i, r in enumerate(packed):
        classes.setdefault(r.tobytes(), []).append(i)
    for members in classes.values():
        if not np.array_equal(np.nonzero(non[members[0]])[0], members):
            return None
    return sorted(classes.values())


def complete_multipartite_decomposition(graph):
    """Parts of a complete multipartite derangement graph, or None.

    The algebraic route tests whether Fix(G) is derangement-free and takes
    its right cosets as parts; the structural route reads the parts off the
    adjacency rows.  Disagreement raises InconsistencyError.
    """
    g = graph.group
    F = fix_subgroup(g)
    algebraic = not any(is_derangement(x) for x in F.elements)
    structural = structural_parts(graph.adjacency)
    if algebraic:
        labels = coset_labels(g, F)
        witness = partition_witness(graph.adjacency, labels)
        if witness is not None:
            raise InconsistencyError(f"Fix(G) is intersecting but coset partition fails at {witness}")
        parts = [sorted(np.nonzero(labels == k)[0].tolist()) for k in range(labels.max() + 1)]
        if structural is None or sorted(parts) != structural:
            raise InconsistencyError("structural parts differ from Fix(G)-cosets")
        return MultipartiteDecomposition(parts, len(parts), F.order, F.order,
                                         complete_graph=F.order == 1)
    if structural is not None:
        raise InconsistencyError("graph is complete multipartite although Fix(G) has a derangement")
    return None


def multipartite_witness(graph):
    """Why the Fix(G)-coset partition is not a complete multipartite structure."""
    F = fix_subgroup(graph.group)
    return partition_witness(graph.adjacency, coset_labels(graph.group, F))


def is_intersecting_set(g, family):
    """True iff every two members agree on some point."""
    rows = np.array([x.images for x in family], dtype=np.int32).reshape(len(family), g.degree)
    for i in range(len(rows)):
        if not (rows[i + 1:] == rows[i]).any(axis=1).all():
            return False
    return True


def _adjacency(graph):
    return graph.adjacency if isinstance(graph, DerangementGraph) else np.asarray(graph, dtype=bool)


def _rows(graph):
    if isinstance(graph, DerangementGraph):
        return graph.rows
    if isinstance(graph, np.ndarray):
        return bitset_rows(graph)
    return list(graph)
