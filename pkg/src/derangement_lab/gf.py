"""Arithmetic in GF(p^k) and search for primitive quadratics.

Elements are encoded by the integer ``sum(a_i * p**i)`` of their coefficient
vector, so ``0`` and ``1`` are the field zero and one and the natural integer
order is a canonical element order.
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

DEFAULT_FIELD_CAP = 2 ** 20
_TABLE_LIMIT = 256


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n):
    """Distinct prime factors of n, ascending (trial division)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p), coefficient lists low degree first ------------

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m over GF(p)."""
    a = _poly_trim(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        lead = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * mi) % p
        a = _poly_trim(a)
    return a


def _monic_polys(p, d):
    """All monic degree-d polynomials, ordered by (a_{d-1}, ..., a_0)."""
    for top in product(range(p), repeat=d):
        yield list(reversed(top)) + [1]


def is_irreducible(poly, p):
    """Irreducibility of a monic polynomial over GF(p).

    Degree 2 and 3 use the root test; higher degrees trial-divide by every
    monic polynomial of degree up to half the degree.
    """
    poly = list(poly)
    k = len(poly) - 1
    if k <= 1:
        return k == 1
    if k <= 3:
        for x in range(p):
            if sum(c * pow(x, i, p) for i, c in enumerate(poly)) % p == 0:
                return False
        return True
    for d in range(1, k // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(poly, f, p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^k) defined by a monic irreducible ``modulus`` = [a_0, ..., a_k]."""

    p: int
    k: int
    modulus: tuple

    @property
    def q(self):
        return self.p ** self.k

    def to_dict(self):
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    # -- integer-code arithmetic, used by the hot paths of the constructions

    def coeffs(self, code):
        out = []
        for _ in range(self.k):
            out.append(code % self.p)
            code //= self.p
        return out

    def code(self, coeffs):
        c = 0
        for a in reversed(list(coeffs)):
            c = c * self.p + a % self.p
        return c

    def _raw_add(self, a, b):
        if self.p == 2:
            return a ^ b
        return self.code(x + y for x, y in zip(self.coeffs(a), self.coeffs(b)))

    def _raw_mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        rem = _poly_mod(prod, self.modulus, self.p)
        return self.code(rem + [0] * (self.k - len(rem)))

    @cached_property
    def _tables(self):
        if self.q > _TABLE_LIMIT:
            return None
        q = self.q
        add = np.array([[self._raw_add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
        mul = np.array([[self._raw_mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
        neg = np.array([self.code(-c for c in self.coeffs(a)) for a in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        return add.tolist(), mul.tolist(), neg.tolist(), inv.tolist()

    def add(self, a, b):
        t = self._tables
        return t[0][a][b] if t else self._raw_add(a, b)

    def neg(self, a):
        t = self._tables
        return t[2][a] if t else self.code(-c for c in self.coeffs(a))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        t = self._tables
        return t[1][a][b] if t else self._raw_mul(a, b)

    def pow(self, a, e):
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in " + repr(self))
        t = self._tables
        if t:
            return t[3][a]
        return self.pow(a, self.q - 2)

    def element(self, code):
        return FieldElement(code, self)

    def elements(self):
        return [FieldElement(c, self) for c in range(self.q)]


@dataclass(frozen=True)
class FieldElement:
    code: int
    spec: FieldSpec = field(repr=False)

    def __post_init__(self):
        if not 0 <= self.code < self.spec.q:
            raise ValueError(f"code {self.code} out of range for {self.spec!r}")

    @property
    def coeffs(self):
        return self.spec.coeffs(self.code)

    def _check(self, other):
        if not isinstance(other, FieldElement) or other.spec != self.spec:
            raise ValueError("field elements belong to different fields")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.spec.add(self.code, other.code), self.spec)

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.spec.sub(self.code, other.code), self.spec)

    def __neg__(self):
        return FieldElement(self.spec.neg(self.code), self.spec)

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.spec.mul(self.code, other.code), self.spec)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.spec.pow(self.code, e), self.spec)

    def inverse(self):
        return FieldElement(self.spec.inv(self.code), self.spec)

    def __int__(self):
        return self.code


@dataclass(frozen=True)
class Poly2:
    """Monic ``x^2 + c1*x + c0`` over GF(q)."""

    c1: FieldElement
    c0: FieldElement

    def companion(self):
        """Companion matrix ``[[0, 1], [-c0, -c1]]`` as a tuple of row tuples of codes."""
        s = self.c0.spec
        return ((0, 1), (s.neg(self.c0.code), s.neg(self.c1.code)))

    def __repr__(self):
        return f"x^2 + {self.c1.code}*x + {self.c0.code} over {self.c0.spec!r}"


def make_field(p, k=1, cap=DEFAULT_FIELD_CAP):
    """Build GF(p^k) with the lexicographically smallest irreducible modulus.

    Candidates are monic degree-k polynomials ordered by (a_{k-1}, ..., a_0).
    """
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if p ** k > cap:
        raise ValueError(f"field size {p}^{k} exceeds cap {cap}")
    if k == 1:
        return FieldSpec(p, 1, (0, 1))
    for poly in _monic_polys(p, k):
        if is_irreducible(poly, p):
            return FieldSpec(p, k, tuple(poly))
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def field_of_order(q, cap=DEFAULT_FIELD_CAP):
    """GF(q) for a prime power q."""
    for p in prime_factors(q)[:1]:
        k, m = 0, q
        while m % p == 0:
            m //= p
            k += 1
        if m == 1:
            return make_field(p, k, cap)
    raise ValueError(f"{q} is not a prime power")


def _check_same(a, b, s):
    if a.spec != s or b.spec != s:
        raise ValueError("field elements do not belong to " + repr(s))


def ff_add(a, b, s):
    _check_same(a, b, s)
    return a + b


def ff_mul(a, b, s):
    _check_same(a, b, s)
    return a * b


def ff_inv(a, s):
    _check_same(a, a, s)
    if a.code == 0:
        raise ZeroDivisionError("0 is not invertible")
    return a.inverse()


def element_order(a, s):
    """Multiplicative order of a nonzero element, by repeated multiplication."""
    _check_same(a, a, s)
    if a.code == 0:
        raise ZeroDivisionError("0 has no multiplicative order")
    m, x = 1, a.code
    while x != 1:
        x = s.mul(x, a.code)
        m += 1
    return m


# -- 2x2 matrices over GF(q) as ((a, b), (c, d)) tuples of codes -----------

def _mat_mul(s, x, y):
    (a, b), (c, d) = x
    (e, f), (g, h) = y
    add, mul = s.add, s.mul
    return ((add(mul(a, e), mul(b, g)), add(mul(a, f), mul(b, h))),
            (add(mul(c, e), mul(d, g)), add(mul(c, f), mul(d, h))))


def _mat_pow(s, m, e):
    result = ((1, 0), (0, 1))
    while e:
        if e & 1:
            result = _mat_mul(s, result, m)
        m = _mat_mul(s, m, m)
        e >>= 1
    return result


def _has_order(s, m, n):
    """True iff the matrix m has multiplicative order exactly n."""
    ident = ((1, 0), (0, 1))
    if _mat_pow(s, m, n) != ident:
        return False
    return all(_mat_pow(s, m, n // r) != ident for r in prime_factors(n))


def find_primitive_poly2(s):
    """Smallest monic quadratic over GF(q) whose companion has order q^2 - 1.

    Candidates are scanned by (c1, c0) codes ascending.
    """
    q = s.q
    target = q * q - 1
    for c1 in range(q):
        for c0 in range(1, q):
            poly = Poly2(FieldElement(c1, s), FieldElement(c0, s))
            if _has_order(s, poly.companion(), target):
                return poly
    raise AssertionError("no primitive quadratic found")  # pragma: no cover
