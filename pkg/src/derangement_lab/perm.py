"""Permutations, exhaustively enumerated groups, orbits, blocks and Fix(G).

Points are labelled ``1..n`` at every public surface; internally a
permutation is the tuple of 0-based images.  Products read left to right:
``a * b`` (or ``compose(a, b)``) applies ``a`` first, then ``b``.
"""

from collections import deque
from math import lcm

import numpy as np

from .errors import CapExceeded, DerangementLabError

DEFAULT_MAX_ORDER = 10 ** 6


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images

    @classmethod
    def _trusted(cls, images):
        p = object.__new__(cls)
        p.images = images
        return p

    @classmethod
    def identity(cls, n):
        return cls._trusted(tuple(range(n)))

    @classmethod
    def from_one_based(cls, images):
        return cls(i - 1 for i in images)

    @classmethod
    def from_cycles(cls, n, *cycles):
        """Build from 1-based cycles, e.g. ``from_cycles(6, (1, 3, 5), (2, 4, 6))``."""
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if a in seen:
                    raise ValueError(f"point {a} appears in two cycles")
                if not 1 <= a <= n:
                    raise ValueError(f"point {a} outside 1..{n}")
                seen.add(a)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b - 1
        return cls._trusted(tuple(img))

    @property
    def degree(self):
        return len(self.images)

    def one_based(self):
        return [i + 1 for i in self.images]

    def __call__(self, point):
        """Image of a 1-based point."""
        return self.images[point - 1] + 1

    def __mul__(self, other):
        return compose(self, other)

    def __invert__(self):
        return invert(self)

    def __pow__(self, e):
        if e < 0:
            return invert(self) ** (-e)
        result = Permutation.identity(self.degree)
        for _ in range(e):
            result = compose(result, self)
        return result

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def is_identity(self):
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self, include_fixed=False):
        """Disjoint cycles as tuples of 1-based points, each starting at its least point."""
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(x + 1 for x in cyc))
        return out

    def __repr__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def compose(a, b):
    """``a`` then ``b``: point i goes to b(a(i))."""
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")
    return Permutation._trusted(tuple(map(b.images.__getitem__, a.images)))


def invert(a):
    inv = [0] * a.degree
    for i, x in enumerate(a.images):
        inv[x] = i
    return Permutation._trusted(tuple(inv))


def conjugate(x, g):
    """``g^-1 * x * g``; with left-to-right products this is x relabelled by g."""
    return compose(compose(invert(g), x), g)


def fixed_points(a):
    return {i + 1 for i, x in enumerate(a.images) if i == x}


def is_derangement(a):
    return all(i != x for i, x in enumerate(a.images))


def cycle_type(a):
    return tuple(sorted((len(c) for c in a.cycles(include_fixed=True)), reverse=True))


def element_order_perm(a):
    return lcm(*cycle_type(a)) if a.degree else 1


class PermGroup:
    """A permutation group stored with its full, sorted element list.

    Element index 0 is always the identity, because the identity is the
    smallest image vector.
    """

    def __init__(self, degree, generators, elements, name=""):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(sorted(elements))
        self.name = name
        self._index = None
        self._array = None
        self._keys = None

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def __eq__(self, other):
        return isinstance(other, PermGroup) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        label = self.name or "PermGroup"
        return f"<{label}: degree {self.degree}, order {self.order}>"

    @property
    def identity(self):
        return self.elements[0]

    @property
    def index(self):
        """Map element -> position in the canonical order."""
        if self._index is None:
            self._index = {x: i for i, x in enumerate(self.elements)}
        return self._index

    @property
    def array(self):
        """``order x degree`` array of 0-based images, one row per element."""
        if self._array is None:
            dtype = np.int16 if self.degree < 2 ** 15 else np.int32
            self._array = np.array([x.images for x in self.elements], dtype=dtype).reshape(
                self.order, self.degree)
        return self._array

    # -- vectorised element lookup ------------------------------------------

    def _base(self):
        """Points whose images determine an element uniquely (greedy base)."""
        arr = self.array
        rows = np.arange(self.order)
        ident = np.arange(self.degree)
        base = []
        while len(rows) > 1:
            sub = arr[rows]
            moved = np.nonzero((sub != ident).any(axis=0))[0]
            b = int(moved[0])
            base.append(b)
            rows = rows[sub[:, b] == b]
        return base

    def _lookup_table(self):
        if self._keys is None:
            base = self._base()
            if self.degree ** max(len(base), 1) >= 2 ** 62:
                table = {r.tobytes(): i for i, r in enumerate(self.array.astype(np.int32))}
                self._keys = (None, table, None)
            else:
                keys = self._encode(self.array, base)
                order = np.argsort(keys)
                self._keys = (base, keys[order], order)
        return self._keys

    @property
    def base(self):
        """Points whose images determine an element, or None if keys would overflow."""
        return self._lookup_table()[0]

    def lookup_rows(self, rows):
        """Indices of the elements whose image rows are given; -1 when absent."""
        rows = np.asarray(rows)
        base, keys, order = self._lookup_table()
        if base is None:
            return np.array([keys.get(r.tobytes(), -1) for r in rows.astype(np.int32)], dtype=np.int64)
        idx = self.lookup_base_images(rows[:, base])
        found = idx >= 0
        found[found] = (self.array[idx[found]] == rows[found]).all(axis=1)
        return np.where(found, idx, -1)

    def lookup_base_images(self, images):
        """Indices of the elements with the given images of ``self.base``; -1 when absent.

        Only valid for rows known to come from group elements when the
        answer is not -1.
        """
        base, keys, order = self._lookup_table()
        images = np.asarray(images, dtype=np.int64)
        k = np.zeros(len(images), dtype=np.int64)
        for col in range(len(base)):
            k = k * self.degree + images[:, col]
        pos = np.minimum(np.searchsorted(keys, k), len(keys) - 1)
        return np.where(keys[pos] == k, order[pos], -1)

    def _encode(self, rows, base):
        key = np.zeros(len(rows), dtype=np.int64)
        for b in base:
            key = key * self.degree + rows[:, b].astype(np.int64)
        return key


def generate_group(gens, name="", max_order=DEFAULT_MAX_ORDER):
    """Breadth-first closure of ``gens`` under right multiplication."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].degree
    if any(g.degree != n for g in gens):
        raise ValueError("generators have different degrees")
    ident = Permutation.identity(n)
    seen = {ident.images}
    queue = deque([ident.images])
    gen_images = [g.images for g in gens]
    while queue:
        x = queue.popleft()
        for g in gen_images:
            y = tuple(map(g.__getitem__, x))
            if y not in seen:
                seen.add(y)
                if len(seen) > max_order:
                    raise CapExceeded(f"group order exceeds cap {max_order}", partial=len(seen))
                queue.append(y)
    elements = [Permutation._trusted(x) for x in seen]
    return PermGroup(n, gens, elements, name)


def subgroup_from_elements(elements, degree, name=""):
    """Wrap a known closed set of elements, picking a small generating set."""
    elements = sorted(elements)
    gens = []
    current = {Permutation.identity(degree)}
    for x in elements:
        if x not in current:
            gens.append(x)
            current = set(generate_group(gens).elements)
    if len(current) != len(elements):
        raise DerangementLabError("element set is not closed under composition")
    return PermGroup(degree, gens or [Permutation.identity(degree)], elements, name)


def orbits(g, points=None):
    """Orbits as sorted lists of 1-based points, ordered by least point.

    With ``points`` given, only the orbits meeting those points are returned.
    """
    n = g.degree
    start = range(n) if points is None else sorted(p - 1 for p in points)
    gens = [x.images for x in g.generators]
    seen = [False] * n
    out = []
    for s in start:
        if seen[s]:
            continue
        orb = [s]
        seen[s] = True
        for a in orb:
            for x in gens:
                b = x[a]
                if not seen[b]:
                    seen[b] = True
                    orb.append(b)
        out.append(sorted(a + 1 for a in orb))
    return sorted(out)


def is_transitive(g):
    return len(orbits(g)) == 1


def point_stabilizer(g, point):
    if not 1 <= point <= g.degree:
        raise ValueError(f"point {point} outside 1..{g.degree}")
    w = point - 1
    elems = [x for x in g.elements if x.images[w] == w]
    return subgroup_from_elements(elems, g.degree, name=f"{g.name}_{point}")


def max_stabilizer_order(g):
    return max(sum(1 for x in g.elements if x.images[w] == w) for w in range(g.degree))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def minimal_block(g, alpha, beta):
    """Smallest block containing ``alpha`` and ``beta`` (1-based), as a sorted list.

    Classes are merged with union-find: whenever two points are joined,
    their images under every generator are joined as well.
    """
    if alpha == beta:
        raise ValueError("alpha and beta must differ")
    if not is_transitive(g):
        raise DerangementLabError("minimal_block needs a transitive group")
    uf = _UnionFind(g.degree)
    gens = [x.images for x in g.generators]
    a, b = alpha - 1, beta - 1
    uf.union(a, b)
    pending = [(a, b)]
    while pending:
        a, b = pending.pop()
        for x in gens:
            if uf.union(x[a], x[b]):
                pending.append((x[a], x[b]))
    root = uf.find(alpha - 1)
    return [i + 1 for i in range(g.degree) if uf.find(i) == root]


class BlockSystem:
    """A partition of the points into equal cells, each a sorted 1-based tuple."""

    def __init__(self, blocks):
        self.blocks = tuple(sorted(tuple(sorted(b)) for b in blocks))
        sizes = {len(b) for b in self.blocks}
        if len(sizes) != 1:
            raise ValueError("cells of a block system must have equal size")
        self.cell_size = sizes.pop()
        self.cell_count = len(self.blocks)

    def is_preserved_by(self, g):
        cells = set(self.blocks)
        for x in g.generators:
            for b in self.blocks:
                if tuple(sorted(x(p) for p in b)) not in cells:
                    return False
        return True

    def __eq__(self, other):
        return isinstance(other, BlockSystem) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"BlockSystem({self.cell_count} cells of size {self.cell_size})"


def block_system_from_block(g, block):
    """Translate a block under the group until the points are covered."""
    cells = {tuple(sorted(block))}
    todo = list(cells)
    gens = list(g.generators)
    while todo:
        b = todo.pop()
        for x in gens:
            c = tuple(sorted(x(p) for p in b))
            if c not in cells:
                cells.add(c)
                todo.append(c)
    return BlockSystem(cells)


def all_minimal_block_systems(g):
    """Nontrivial block systems arising as minimal_block(1, beta), beta = 2..n."""
    if not is_transitive(g):
        raise DerangementLabError("block systems need a transitive group")
    found = {}
    for beta in range(2, g.degree + 1):
        block = tuple(minimal_block(g, 1, beta))
        if len(block) == g.degree or block in found:
            continue
        found[block] = block_system_from_block(g, block)
    return sorted(found.values(), key=lambda s: (s.cell_size, s.blocks))


def is_subgroup(g, h):
    return all(x in g for x in h.elements)


def fix_subgroup(g, max_order=DEFAULT_MAX_ORDER):
    """Subgroup generated by the elements with at least one fixed point."""
    gens = []
    current = {g.identity}
    for x in g.elements:
        if x not in current and not is_derangement(x):
            gens.append(x)
            current = set(generate_group(gens, max_order=max_order).elements)
    if not gens:
        gens = [g.identity]
    return PermGroup(g.degree, gens, current, name=f"Fix({g.name})")


def is_normal(g, h):
    """True iff ``h`` is normalised by every generator of ``g``."""
    if not is_subgroup(g, h):
        raise DerangementLabError("h is not a subgroup of g")
    members = set(h.elements)
    for x in g.generators:
        for y in h.generators:
            if conjugate(y, x) not in members:
                return False
    return True


def rank_on_pairs(g, max_pairs=10 ** 7):
    """Number of orbits of g on ordered pairs of points."""
    n = g.degree
    if n * n > max_pairs:
        raise CapExceeded(f"{n * n} point pairs exceed cap {max_pairs}", partial=0)
    gens = [x.images for x in g.generators]
    seen = bytearray(n * n)
    count = 0
    for start in range(n * n):
        if seen[start]:
            continue
        count += 1
        seen[start] = 1
        stack = [start]
        while stack:
            ab = stack.pop()
            a, b = divmod(ab, n)
            for x in gens:
                c = x[a] * n + x[b]
                if not seen[c]:
                    seen[c] = 1
                    stack.append(c)
    return count
