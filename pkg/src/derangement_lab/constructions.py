"""Group families acting on lines of AG(2, q), the degree-4l family, and reference groups.

Lines of the affine plane over GF(q) are indexed by ``dir * q + off``.
Directions ``0..q-1`` are the slopes ``(1, s)`` with ``s`` the element code,
and direction ``q`` is the vertical ``(0, 1)``.  A slope line with offset
``c`` is ``{(x, s*x + c)}``; the vertical line with offset ``c`` is
``{(c, y)}``.  Lines sharing a direction form one parallel class.
"""

from dataclasses import dataclass
from itertools import product

from .errors import DerangementLabError
from .gf import DEFAULT_FIELD_CAP, field_of_order, find_primitive_poly2, prime_factors
from .perm import DEFAULT_MAX_ORDER, Permutation, compose, generate_group


@dataclass(frozen=True)
class Matrix2x2:
    """``[[a, b], [c, d]]`` over a field, entries stored as element codes."""

    a: int
    b: int
    c: int
    d: int
    spec: object

    @classmethod
    def identity(cls, s):
        return cls(1, 0, 0, 1, s)

    @classmethod
    def scalar(cls, k, s):
        return cls(k, 0, 0, k, s)

    @classmethod
    def from_rows(cls, rows, s):
        (a, b), (c, d) = rows
        return cls(a, b, c, d, s)

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def det(self):
        s = self.spec
        return s.sub(s.mul(self.a, self.d), s.mul(self.b, self.c))

    def __mul__(self, o):
        s = self.spec
        add, mul = s.add, s.mul
        return Matrix2x2(add(mul(self.a, o.a), mul(self.b, o.c)),
                         add(mul(self.a, o.b), mul(self.b, o.d)),
                         add(mul(self.c, o.a), mul(self.d, o.c)),
                         add(mul(self.c, o.b), mul(self.d, o.d)), s)

    def apply(self, v):
        s = self.spec
        x, y = v
        return (s.add(s.mul(self.a, x), s.mul(self.b, y)),
                s.add(s.mul(self.c, x), s.mul(self.d, y)))

    def is_identity(self):
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def order(self, limit=None):
        """Multiplicative order by repeated multiplication."""
        if self.det() == 0:
            raise ValueError("singular matrix has no order")
        limit = limit or self.spec.q ** 4
        m, x = 1, self
        while not x.is_identity():
            x = x * self
            m += 1
            if m > limit:
                raise AssertionError("order search exceeded limit")
        return m


@dataclass(frozen=True)
class AffineMap:
    """``v -> A v + b``; products follow ``(a, A)(b, B) = (a + A b, A B)``."""

    b: tuple
    A: Matrix2x2

    def __call__(self, v):
        s = self.A.spec
        w = self.A.apply(v)
        return (s.add(w[0], self.b[0]), s.add(w[1], self.b[1]))

    def __mul__(self, other):
        s = self.A.spec
        ab = self.A.apply(other.b)
        return AffineMap((s.add(self.b[0], ab[0]), s.add(self.b[1], ab[1])), self.A * other.A)


@dataclass(frozen=True)
class LineIndex:
    dir: int
    off: int
    q: int

    @property
    def flat(self):
        return self.dir * self.q + self.off

    @classmethod
    def from_flat(cls, idx, q):
        return cls(idx // q, idx % q, q)


def line_points(line, s):
    """Points of a line as a list of (x, y) code pairs in x-then-y order."""
    q = s.q
    if line.dir == q:
        return [(line.off, y) for y in range(q)]
    return [(x, s.add(s.mul(line.dir, x), line.off)) for x in range(q)]


def enumerate_lines(s):
    """All q(q+1) lines with their point sets, in flat-index order."""
    q = s.q
    return [(LineIndex(d, c, q), line_points(LineIndex(d, c, q), s))
            for d in range(q + 1) for c in range(q)]


def line_through(p1, p2, s):
    """Index of the line through two distinct points."""
    (x1, y1), (x2, y2) = p1, p2
    if x1 == x2:
        if y1 == y2:
            raise ValueError("points coincide")
        return LineIndex(s.q, x1, s.q)
    slope = s.mul(s.sub(y2, y1), s.inv(s.sub(x2, x1)))
    off = s.sub(y1, s.mul(slope, x1))
    return LineIndex(slope, off, s.q)


def affine_to_line_perm(m, s, check=True):
    """Permutation of the q(q+1) lines induced by an affine map."""
    if m.A.det() == 0:
        raise ValueError("affine map is not invertible")
    images = []
    for line, pts in enumerate_lines(s):
        img = [m(v) for v in pts]
        target = line_through(img[0], img[1], s)
        if check and sorted(img) != sorted(line_points(target, s)):
            raise DerangementLabError(f"image of line {line} is not a line")
        images.append(target.flat)
    return Permutation(images)


def build_singer(s):
    """Companion matrix of the smallest primitive quadratic: a Singer cycle of GL(2, q)."""
    return Matrix2x2.from_rows(find_primitive_poly2(s).companion(), s)


def _translation(vec, s):
    return AffineMap(tuple(vec), Matrix2x2.identity(s))


def _basis_translations(s):
    """Translations by p^i * e1 and p^i * e2: together they generate all of GF(q)^2."""
    out = []
    for i in range(s.k):
        c = s.p ** i
        out += [_translation((c, 0), s), _translation((0, c), s)]
    return out


def _field(q_or_spec):
    if isinstance(q_or_spec, int):
        return field_of_order(q_or_spec, DEFAULT_FIELD_CAP)
    return q_or_spec


def build_gq(s, max_order=DEFAULT_MAX_ORDER):
    """Translations extended by a Singer cycle, acting on the lines.

    Generated by the Singer matrix and the two unit translations; the
    Singer cycle conjugates those around to every translation.
    """
    s = _field(s)
    A = build_singer(s)
    gens = [AffineMap((0, 0), A), _translation((1, 0), s), _translation((0, 1), s)]
    g = generate_group([affine_to_line_perm(m, s) for m in gens],
                       name=f"G_{s.q}(A)", max_order=max_order)
    expected = s.q ** 2 * (s.q ** 2 - 1)
    if g.order != expected:
        raise DerangementLabError(f"G_q(A) has order {g.order}, expected {expected}")
    return g


def _primitive_scalar(s):
    """Least code generating the multiplicative group of the field."""
    for k in range(1, s.q):
        if all(s.pow(k, (s.q - 1) // r) != 1 for r in prime_factors(s.q - 1)):
            return k
    return 1


def mq_maps(s):
    """Every affine map (b, kI) with b in GF(q)^2 and k nonzero."""
    s = _field(s)
    return [AffineMap((x, y), Matrix2x2.scalar(k, s))
            for k in range(1, s.q) for x in range(s.q) for y in range(s.q)]


def build_mq(s, max_order=DEFAULT_MAX_ORDER):
    """Translations together with the nonzero scalar matrices, acting on the lines."""
    s = _field(s)
    gens = _basis_translations(s)
    if s.q > 2:
        gens.append(AffineMap((0, 0), Matrix2x2.scalar(_primitive_scalar(s), s)))
    return generate_group([affine_to_line_perm(m, s) for m in gens],
                          name=f"M_{s.q}", max_order=max_order)


def _matrix_group(gens):
    s = gens[0].spec
    seen = {Matrix2x2.identity(s)}
    todo = list(seen)
    while todo:
        x = todo.pop()
        for g in gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def gl2_generators(s):
    """A Singer cycle plus the first matrix in row-major scan that completes GL(2, q)."""
    A = build_singer(s)
    q = s.q
    gl_order = (q * q - 1) * (q * q - q)
    singer = _matrix_group([A])
    for a, b, c, d in product(range(q), repeat=4):
        B = Matrix2x2(a, b, c, d, s)
        if B.det() == 0 or B in singer:
            continue
        if len(_matrix_group([A, B])) == gl_order:
            return A, B
    raise AssertionError("GL(2, q) generator search failed")  # pragma: no cover


def build_agl2(s, max_order=DEFAULT_MAX_ORDER):
    """The full affine group AGL(2, q) acting on the lines."""
    s = _field(s)
    A, B = gl2_generators(s)
    maps = _basis_translations(s) + [AffineMap((0, 0), A), AffineMap((0, 0), B)]
    return generate_group([affine_to_line_perm(m, s) for m in maps],
                          name=f"AGL(2,{s.q})", max_order=max_order)


@dataclass
class FourEllSpec:
    ell: int
    n: int
    sigma: dict
    pi: dict
    A: dict
    c: Permutation
    tau: Permutation
    H: object = None


def fourell_parts(ell):
    """Generators of the degree-4l family; labels follow 1-based point arithmetic."""
    if ell < 3 or ell % 2 == 0:
        raise ValueError("ℓ must be odd and at least 3")
    n = 4 * ell
    last = 4 * ell - 3
    starts = range(1, n + 1, 4)
    sigma = {i: Permutation.from_cycles(n, (i, i + 1), (i + 2, i + 3)) for i in starts}
    pi = {j: compose(sigma[j], sigma[last]) for j in starts}
    A = {i: Permutation.from_cycles(n, tuple(i + 4 * t for t in range(ell))) for i in (1, 2, 3, 4)}
    c = Permutation.from_cycles(n, *(A[i].cycles()[0] for i in (1, 2, 3, 4)))
    transpositions = [(1, 3), (2, 4)]
    for i in range(1, ell):
        transpositions += [(1 + 4 * i, 3 + 4 * (ell - i)), (2 + 4 * i, 4 + 4 * (ell - i))]
    pts = [x for t in transpositions for x in t]
    if len(set(pts)) != len(pts):
        raise AssertionError("τ transpositions overlap")
    tau = Permutation.from_cycles(n, *transpositions)
    return FourEllSpec(ell, n, sigma, pi, A, c, tau)


def build_fourell(ell, max_order=DEFAULT_MAX_ORDER):
    """Return ``(G, spec)`` with G generated by the pi_j, c and tau."""
    spec = fourell_parts(ell)
    S = [spec.pi[j] for j in sorted(spec.pi) if not spec.pi[j].is_identity()]
    spec.H = generate_group(S, name=f"H_{ell}", max_order=max_order)
    G = generate_group(S + [spec.c, spec.tau], name=f"fourell({ell})", max_order=max_order)
    return G, spec


def build_example6():
    n = 6
    gens = [Permutation.from_cycles(n, (1, 2), (3, 4)),
            Permutation.from_cycles(n, (3, 4), (5, 6)),
            Permutation.from_cycles(n, (1, 3, 5), (2, 4, 6))]
    return generate_group(gens, name="example6")


def build_cyclic_regular(n):
    if n < 1:
        raise ValueError("n must be positive")
    gen = Permutation.from_cycles(n, tuple(range(1, n + 1))) if n > 1 else Permutation.identity(1)
    return generate_group([gen], name=f"C{n}")


def build_dihedral(n):
    """Symmetries of the n-gon acting on its vertices."""
    rot = Permutation.from_cycles(n, tuple(range(1, n + 1)))
    refl = Permutation([(-i) % n for i in range(n)])
    return generate_group([rot, refl], name=f"D{2 * n}")


def build_symmetric(n):
    if n == 1:
        return generate_group([Permutation.identity(1)], name="Sym(1)")
    gens = [Permutation.from_cycles(n, (1, 2))]
    if n > 2:
        gens.append(Permutation.from_cycles(n, tuple(range(1, n + 1))))
    return generate_group(gens, name=f"Sym({n})")


def build_alternating(n):
    gens = [Permutation.from_cycles(n, (i, i + 1, i + 2)) for i in range(1, n - 1)]
    return generate_group(gens or [Permutation.identity(n)], name=f"Alt({n})")


def build_wreath_cyclic(p):
    """C_p wr C_2 on 2p points: independent p-cycles on two halves plus the swap."""
    n = 2 * p
    gens = [Permutation.from_cycles(n, tuple(range(1, p + 1))),
            Permutation.from_cycles(n, tuple(range(p + 1, n + 1))),
            Permutation.from_cycles(n, *[(i, i + p) for i in range(1, p + 1)])]
    return generate_group(gens, name=f"C{p}wrC2")


def build_on_pairs(g, name=None):
    """Induced action of a group of degree m on the m(m-1)/2 unordered pairs.

    Pairs are listed lexicographically: {1,2}, {1,3}, ..., {m-1,m}.
    """
    m = g.degree
    pairs = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    pos = {pr: t for t, pr in enumerate(pairs)}
    gens = []
    for x in g.generators:
        gens.append(Permutation(pos[tuple(sorted((x(i), x(j))))] for i, j in pairs))
    return generate_group(gens, name=name or f"{g.name} on pairs")


def line_table(s):
    """Rows of (flat_index, dir, off, points) for CSV export."""
    s = _field(s)
    return [(line.flat, line.dir, line.off, pts) for line, pts in enumerate_lines(s)]
