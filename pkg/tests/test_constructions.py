import itertools

import pytest

from derangement_lab import constructions as C
from derangement_lab.gf import field_of_order
from derangement_lab.perm import (Permutation, compose, fix_subgroup, fixed_points, invert,
                                  is_transitive, point_stabilizer, rank_on_pairs)


def test_lines():
    assert len(C.enumerate_lines(field_of_order(2))) == 6
    s = field_of_order(3)
    lines = C.enumerate_lines(s)
    assert len(lines) == 12
    pts = [set(p) for _, p in lines]
    assert all(len(p) == 3 for p in pts)
    for v in itertools.product(range(3), repeat=2):
        assert sum(v in p for p in pts) == 4
    assert set(C.line_points(C.LineIndex(0, 0, 2), field_of_order(2))) == {(0, 0), (1, 0)}


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_two_points_one_line(q):
    s = field_of_order(q)
    pts = {ln.flat: set(p) for ln, p in C.enumerate_lines(s)}
    for a, b in itertools.combinations(itertools.product(range(q), repeat=2), 2):
        through = [f for f, p in pts.items() if a in p and b in p]
        assert through == [C.line_through(a, b, s).flat]


def test_affine_images():
    s = field_of_order(2)
    ident = C.AffineMap((0, 0), C.Matrix2x2.identity(s))
    assert C.affine_to_line_perm(ident, s).is_identity()
    t = C.affine_to_line_perm(C.AffineMap((1, 0), C.Matrix2x2.identity(s)), s)
    horizontal = [ln.flat for ln, _ in C.enumerate_lines(s) if ln.dir == 0]
    vertical = [ln.flat for ln, _ in C.enumerate_lines(s) if ln.dir == 2]
    assert all(t.images[f] == f for f in horizontal)
    assert t.images[vertical[0]] == vertical[1] and t.images[vertical[1]] == vertical[0]


@pytest.mark.parametrize("q", [3, 4, 5])
def test_scalar_maps_fix_a_line_in_every_direction(q):
    s = field_of_order(q)
    for m in C.mq_maps(s):
        k = m.A.a
        if k in (0, 1):
            continue
        x = C.affine_to_line_perm(m, s, check=False)
        scale = s.inv(s.sub(1, k))
        beta = (s.mul(scale, m.b[0]), s.mul(scale, m.b[1]))
        for d in range(q + 1):
            direction = (1, d) if d < q else (0, 1)
            if d == q:
                other = (beta[0], s.add(beta[1], 1))
            else:
                other = (s.add(beta[0], 1), s.add(beta[1], direction[1]))
            ln = C.line_through(beta, other, s)
            assert x.images[ln.flat] == ln.flat


def test_singer():
    a2 = C.build_singer(field_of_order(2))
    assert a2.rows() == ((0, 1), (1, 1)) and a2.order() == 3
    a3 = C.build_singer(field_of_order(3))
    assert a3.rows() == ((0, 1), (1, 2)) and a3.order() == 8


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_singer_power_is_identity(q):
    s = field_of_order(q)
    a = C.build_singer(s)
    m = C.Matrix2x2.identity(s)
    for _ in range(q * q - 1):
        m = m * a
    assert m.is_identity()


@pytest.mark.parametrize("q,order", [(2, 12), (3, 72), (4, 240)])
def test_gq_orders(q, order):
    g = C.build_gq(q)
    assert g.order == order and g.degree == q * (q + 1) and is_transitive(g)


def test_mq():
    assert C.build_mq(2).order == 4
    m3 = C.build_mq(3)
    assert m3.order == 18 and all(fixed_points(x) for x in m3.elements)
    assert C.build_mq(2) == fix_subgroup(C.build_gq(2))


def test_agl2():
    assert C.build_agl2(2).order == 24 and C.build_agl2(2).degree == 6
    a3 = C.build_agl2(3)
    assert a3.order == 432 and rank_on_pairs(a3) == 3
    assert fix_subgroup(C.build_agl2(2)) == C.build_agl2(2)


def test_gq_inside_agl2():
    a = C.build_agl2(3)
    assert all(x in a for x in C.build_gq(3).generators)


def test_fourell():
    G, sp = C.build_fourell(3)
    assert G.order == 24 and G.degree == 12
    tau = Permutation.from_cycles(12, (1, 3), (2, 4), (5, 11), (6, 12), (7, 9), (8, 10))
    assert sp.tau == tau
    assert compose(compose(tau, sp.c), invert(tau)) == invert(sp.c)
    G5, _ = C.build_fourell(5)
    assert G5.order == 160 and G5.degree == 20


@pytest.mark.parametrize("ell", [1, 2, 4, 6])
def test_fourell_needs_odd_ell(ell):
    with pytest.raises(ValueError, match="must be odd"):
        C.build_fourell(ell)


def test_example6():
    g = C.build_example6()
    assert g.order == 12 and point_stabilizer(g, 1).order == 2


def test_reference_groups():
    assert C.build_cyclic_regular(3).order == 3
    assert C.build_dihedral(5).order == 10
    assert C.build_symmetric(4).order == 24 and C.build_alternating(5).order == 60
    assert C.build_wreath_cyclic(5).order == 50
    pairs = C.build_on_pairs(C.build_alternating(5))
    assert pairs.degree == 10 and pairs.order == 60 and is_transitive(pairs)


def test_line_table_rows():
    rows = C.line_table(2)
    assert len(rows) == 6
    assert rows[0][:3] == (0, 0, 0)
