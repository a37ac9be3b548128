import itertools

import pytest
from hypothesis import given, strategies as st

from derangement_lab import constructions as C
from derangement_lab.errors import CapExceeded
from derangement_lab.perm import (BlockSystem, Permutation, all_minimal_block_systems, compose,
                                  conjugate, cycle_type, element_order_perm, fix_subgroup,
                                  fixed_points, generate_group, invert, is_normal, minimal_block,
                                  orbits, point_stabilizer, rank_on_pairs)
from oracles import naive_closure

cyc = Permutation.from_cycles


def perms(n):
    return st.permutations(range(n)).map(Permutation)


def test_compose_and_invert():
    ident = Permutation.identity(3)
    assert compose(cyc(3, (1, 2)), cyc(3, (1, 2))) == ident
    assert compose(cyc(3, (1, 2, 3)), cyc(3, (1, 2, 3))) == cyc(3, (1, 3, 2))
    assert invert(cyc(3, (1, 2, 3))) == cyc(3, (1, 3, 2))
    assert invert(ident) == ident


def test_products_read_left_to_right():
    a, b = cyc(3, (1, 2)), cyc(3, (2, 3))
    # a first sends 1 to 2, then b sends 2 to 3
    assert (a * b)(1) == 3


def test_fourell_generator_examples():
    sp = C.fourell_parts(3)
    assert compose(sp.sigma[1], sp.sigma[9]) == cyc(12, (1, 2), (3, 4), (9, 10), (11, 12))
    assert fixed_points(sp.pi[1]) == {5, 6, 7, 8}
    assert invert(sp.tau) == sp.tau
    assert fixed_points(sp.tau) == set()
    assert list(cycle_type(sp.tau)) == [2] * 6
    assert element_order_perm(sp.c) == 3


def test_cycle_data():
    s = cyc(6, (1, 3, 5), (2, 4, 6))
    assert element_order_perm(s) == 3
    assert list(cycle_type(s)) == [3, 3]
    assert list(cycle_type(Permutation.identity(6))) == [1] * 6
    assert fixed_points(Permutation.identity(6)) == set(range(1, 7))
    assert element_order_perm(Permutation.identity(4)) == 1


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))
    with pytest.raises(ValueError):
        Permutation.from_one_based([1, 2, 4])


@given(perms(7), perms(7), perms(7))
def test_group_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * ~a == Permutation.identity(7)
    assert ~(a * b) == ~b * ~a
    assert conjugate(a * b, c) == conjugate(a, c) * conjugate(b, c)


@given(perms(8))
def test_order_kills_element(a):
    k = element_order_perm(a)
    assert (a ** k).is_identity()
    assert all(not (a ** j).is_identity() for j in range(1, k))
    assert sum(cycle_type(a)) == 8


@pytest.mark.parametrize("gens", [
    [cyc(6, (1, 2), (3, 4)), cyc(6, (3, 4), (5, 6)), cyc(6, (1, 3, 5), (2, 4, 6))],
    [cyc(5, (1, 2, 3, 4, 5)), cyc(5, (1, 2))],
    [cyc(7, (1, 2, 3, 4, 5, 6, 7)), cyc(7, (2, 3, 5), (4, 7, 6))],
])
def test_closure_matches_naive(gens):
    g = generate_group(gens)
    assert {x.images for x in g.elements} == naive_closure([x.images for x in gens])
    assert g.elements[0].is_identity()


def test_generate_examples():
    g = generate_group([cyc(6, (1, 2), (3, 4)), cyc(6, (3, 4), (5, 6)), cyc(6, (1, 3, 5), (2, 4, 6))])
    assert g.order == 12
    sp = C.fourell_parts(3)
    h = generate_group([sp.pi[1], sp.pi[5]])
    assert h.order == 4 and all(element_order_perm(x) <= 2 for x in h.elements)
    assert generate_group([cyc(9, tuple(range(1, 10)))]).order == 9


def test_cap():
    with pytest.raises(CapExceeded):
        generate_group([cyc(7, (1, 2)), cyc(7, tuple(range(1, 8)))], max_order=100)


def test_orbits():
    G, sp = C.build_fourell(3)
    hc = generate_group(list(sp.H.generators) + [sp.c])
    assert orbits(hc) == [[1, 2, 5, 6, 9, 10], [3, 4, 7, 8, 11, 12]]
    assert orbits(generate_group([Permutation.identity(4)])) == [[1], [2], [3], [4]]
    assert orbits(G) == [list(range(1, 13))]


def test_stabilizers():
    G, _ = C.build_fourell(3)
    st1 = point_stabilizer(G, 1)
    assert set(st1.elements) == {G.identity, cyc(12, (5, 6), (7, 8), (9, 10), (11, 12))}
    s3 = C.build_symmetric(3)
    assert set(point_stabilizer(s3, 3).elements) == {s3.identity, cyc(3, (1, 2))}
    g2 = C.build_gq(2)
    assert all(point_stabilizer(g2, w).order == 2 for w in range(1, 7))


@pytest.mark.parametrize("builder", [lambda: C.build_gq(3), lambda: C.build_fourell(3)[0],
                                     C.build_example6, lambda: C.build_dihedral(6)])
def test_orbit_stabilizer(builder):
    g = builder()
    for w in range(1, g.degree + 1):
        orbit = next(o for o in orbits(g) if w in o)
        assert len(orbit) * point_stabilizer(g, w).order == g.order


def test_minimal_blocks():
    g2 = C.build_gq(2)
    assert minimal_block(g2, 1, 2) == [1, 2]
    assert minimal_block(C.build_symmetric(4), 1, 2) == [1, 2, 3, 4]
    assert minimal_block(C.build_fourell(3)[0], 1, 2) == [1, 2]


def _brute_block_systems(g):
    """Partitions of the points into equal cells preserved by g, by trying every candidate block of 1."""
    n = g.degree
    systems = set()
    for size in range(2, n):
        if n % size:
            continue
        for rest in itertools.combinations(range(2, n + 1), size - 1):
            block = frozenset((1,) + rest)
            images = {frozenset(x(p) for p in block) for x in g.elements}
            if all(b == block or not (b & block) for b in images) and sum(map(len, images)) == n:
                systems.add(BlockSystem(images))
    return systems


def _refines(fine, coarse):
    return all(any(set(a) <= set(b) for b in coarse.blocks) for a in fine.blocks)


@pytest.mark.parametrize("builder", [lambda: C.build_cyclic_regular(6), C.build_example6,
                                     lambda: C.build_dihedral(6), lambda: C.build_gq(2)])
def test_block_systems_are_found(builder):
    g = builder()
    found = set(all_minimal_block_systems(g))
    brute = _brute_block_systems(g)
    assert found <= brute
    minimal = {s for s in brute if not any(t.cell_size < s.cell_size and _refines(t, s) for t in brute)}
    assert minimal <= found


def test_block_system_examples():
    assert sorted(s.cell_size for s in all_minimal_block_systems(C.build_cyclic_regular(6))) == [2, 3]
    assert all_minimal_block_systems(C.build_symmetric(5)) == []
    agl = all_minimal_block_systems(C.build_agl2(3))
    assert [(s.cell_count, s.cell_size) for s in agl] == [(4, 3)]
    gq = all_minimal_block_systems(C.build_gq(3))
    parallel = BlockSystem([range(3 * d + 1, 3 * d + 4) for d in range(4)])
    assert parallel in gq


def test_fix_subgroup_examples():
    G, sp = C.build_fourell(3)
    F = fix_subgroup(G)
    assert F == sp.H and G.order // F.order == 6
    assert fix_subgroup(C.build_gq(2)).order == 4
    assert fix_subgroup(C.build_cyclic_regular(7)).order == 1


def test_normality():
    G, _ = C.build_fourell(3)
    assert is_normal(G, fix_subgroup(G))
    s3 = C.build_symmetric(3)
    assert not is_normal(s3, generate_group([cyc(3, (1, 2))]))
    assert is_normal(C.build_gq(3), C.build_mq(3))


def test_rank():
    assert rank_on_pairs(C.build_agl2(2)) == 3
    assert rank_on_pairs(C.build_symmetric(4)) == 2
    assert rank_on_pairs(C.build_cyclic_regular(6)) == 6
