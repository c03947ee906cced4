import math
from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given, settings, strategies as st

from tvcalc import (
    Colouring,
    admissible_colouring,
    admissible_triple,
    build_skeleton,
    cocycle_space_1,
    colouring_weight,
    enumerate_admissible,
    enumerate_census,
    field_init,
    numeric_eval,
    state_sum,
    tetrahedron_weight,
    tv,
    tv_at_class,
)
from tvcalc.colourings import WeightSystem, edge_weight, triangle_weight, \
    vertex_weight
from tvcalc.triangulation import make_triangulation


def _oracle_triple(r, a, b, c):
    # re-derived from the definition: even sum, capped sum, each colour
    # at most the sum of the other two
    if (a + b + c) % 2 or a + b + c > 2 * (r - 2):
        return False
    return a <= b + c and b <= a + c and c <= a + b


def _oracle_count(skel, r, integer_only=False):
    domain = range(0, r - 1, 2) if integer_only else range(r - 1)
    hits = 0
    for cand in product(domain, repeat=skel.e):
        if all(_oracle_triple(r, *(cand[x] for x in tri))
               for tri in skel.triangle_edge_classes):
            hits += 1
    return hits


def test_admissible_triple_table():
    assert admissible_triple(5, 0, 0, 0)
    assert admissible_triple(5, 1, 1, 0)
    assert admissible_triple(5, 2, 2, 2)
    assert not admissible_triple(5, 1, 0, 0)      # odd sum
    assert not admissible_triple(5, 3, 1, 0)      # 3 > 1 + 0
    assert not admissible_triple(5, 3, 3, 2)      # sum 8 > 2(r-2) = 6
    assert admissible_triple(6, 3, 3, 2)


@given(st.integers(3, 12), st.integers(0, 10), st.integers(0, 10),
       st.integers(0, 10))
def test_admissible_triple_is_symmetric(r, a, b, c):
    values = [admissible_triple(r, *p) for p in permutations((a, b, c))]
    assert all(values) or not any(values)


@given(st.integers(3, 12), st.integers(0, 10), st.integers(0, 10),
       st.integers(0, 10))
def test_admissible_triple_matches_oracle(r, a, b, c):
    assert admissible_triple(r, a, b, c) == _oracle_triple(r, a, b, c)


def test_enumeration_matches_product_filter(census1, census2):
    for tri in census1 + census2:
        skel = build_skeleton(tri)
        for r in (3, 4, 5, 6):
            found, stats = enumerate_admissible(skel, r)
            assert len(found) == _oracle_count(skel, r)
            assert stats.admissible_count == len(found)
            assert len({c.doubled for c in found}) == len(found)
            for col in found:
                assert admissible_colouring(skel, col.doubled, r)


def test_integer_only_is_the_even_subset(census2):
    for tri in census2[:8]:
        skel = build_skeleton(tri)
        full, _ = enumerate_admissible(skel, 6)
        even, _ = enumerate_admissible(skel, 6, integer_only=True)
        want = {c.doubled for c in full
                if all(a % 2 == 0 for a in c.doubled)}
        assert {c.doubled for c in even} == want


def test_class_filter_partitions_colourings(census1):
    for tri in census1:
        skel = build_skeleton(tri)
        basis = cocycle_space_1(skel)
        full, _ = enumerate_admissible(skel, 5)
        seen = set()
        for bits in range(1 << basis.beta1):
            coords = tuple((bits >> k) & 1 for k in range(basis.beta1))
            part, _ = enumerate_admissible(skel, 5, class_coords=coords)
            part_set = {c.doubled for c in part}
            assert not part_set & seen
            seen |= part_set
        assert seen == {c.doubled for c in full}


def test_class_filter_length_checked(census1):
    skel = build_skeleton(census1[0])
    with pytest.raises(ValueError):
        enumerate_admissible(skel, 5, class_coords=(0, 1, 0))


def test_small_r_rejected(census1):
    with pytest.raises(ValueError):
        enumerate_admissible(census1[0], 2)


def test_integer_only_never_visits_more_nodes(one_vertex_corpus):
    for tri in one_vertex_corpus:
        for r in (5, 7):
            _, full = enumerate_admissible(tri, r)
            _, even = enumerate_admissible(tri, r, integer_only=True)
            assert even.nodes_visited < full.nodes_visited


def test_vertex_weight_numeric():
    for r, q in ((4, 1), (5, 1), (7, 3)):
        ctx = field_init(r, q)
        got = complex(numeric_eval(vertex_weight(ctx), 15))
        want = 2 * math.sin(math.pi * q / r) ** 2 / r
        assert abs(got - want) < 1e-12


def test_edge_weight_values():
    ctx = field_init(5, 1)
    assert edge_weight(ctx, 0) == ctx.one
    assert edge_weight(ctx, 1) == -ctx.quantum_integer(2)
    assert edge_weight(ctx, 2) == ctx.quantum_integer(3)


def test_triangle_weight_zero_is_one():
    ctx = field_init(6, 1)
    assert triangle_weight(ctx, 0, 0, 0) == ctx.one


def test_triangle_weight_formula_spot():
    # (1,1,2): half-sum 2, parts (1,1,0) -> +[0]![1]![1]! / [3]!
    ctx = field_init(6, 1)
    assert triangle_weight(ctx, 1, 1, 2) == ctx.inverse_bracket_factorial(3)
    # (1,1,0): half-sum 1, sign (-1)^1, parts (0,0,1) -> -[1]!/[2]!
    want = -(ctx.bracket_factorial(1) * ctx.inverse_bracket_factorial(2))
    assert triangle_weight(ctx, 1, 1, 0) == want


def test_triangle_weight_symmetric():
    ctx = field_init(7, 1)
    for a, b, c in ((1, 1, 2), (2, 2, 2), (0, 3, 3)):
        base = triangle_weight(ctx, a, b, c)
        for p in permutations((a, b, c)):
            assert triangle_weight(ctx, *p) == base


def test_tetrahedron_weight_zero_colouring():
    for r in (4, 5, 7):
        ctx = field_init(r, 1)
        assert tetrahedron_weight(ctx, (0,) * 6) == ctx.one


def test_tetrahedron_weight_rejects_inadmissible():
    ctx = field_init(5, 1)
    with pytest.raises(ValueError):
        tetrahedron_weight(ctx, (1, 0, 0, 0, 0, 0))


def test_tetrahedron_weight_relabelling_invariance():
    # relabelling the four corners permutes the six edge colours
    from tvcalc.triangulation import ALL_PERMS, EDGE_INDEX, EDGE_VERTICES
    ctx = field_init(7, 1)
    colours = (2, 4, 2, 2, 2, 4)
    base = tetrahedron_weight(ctx, colours)
    for perm in ALL_PERMS:
        mapped = [0] * 6
        for k, (u, v) in enumerate(EDGE_VERTICES):
            uu, vv = sorted((perm[u], perm[v]))
            mapped[EDGE_INDEX[(uu, vv)]] = colours[k]
        assert tetrahedron_weight(ctx, tuple(mapped)) == base


def test_colouring_weight_rejects_inadmissible(census1):
    skel = build_skeleton(census1[0])
    bad = Colouring((1,) + (0,) * (skel.e - 1))
    if admissible_colouring(skel, bad.doubled, 5):
        pytest.skip("unexpectedly admissible")
    with pytest.raises(ValueError):
        colouring_weight(skel, bad, 5)


def test_weight_system_matches_colouring_weight(census1):
    skel = build_skeleton(census1[0])
    ws = WeightSystem(skel, 5, 1)
    found, _ = enumerate_admissible(skel, 5)
    for col in found:
        assert ws.colouring_weight(col) == colouring_weight(skel, col, 5)


def test_state_sum_thread_invariance(z2hs2):
    tri = z2hs2[0]
    base, stats1 = state_sum(tri, 5, 1)
    for threads in (2, 4):
        value, stats = state_sum(tri, 5, 1, threads=threads)
        assert value == base
        assert stats.admissible_count == stats1.admissible_count


def test_tv_rejects_open_triangulation():
    open_tri = make_triangulation([[None, None, None, None]])
    with pytest.raises(ValueError):
        tv(open_tri, 5, 1)


def test_sphere_values_exact(z2hs1):
    for tri in z2hs1:
        value = tv(tri, 4, 1)
        assert value.is_rational() and value.as_rational() == Fraction(1, 4)


def test_sphere_values_numeric(z2hs1):
    # the corpus holds one 3-sphere (trivial H1); at q = 1 its value is
    # (2/r) sin^2(pi/r)
    from tvcalc import h1_integral
    spheres = [t for t in z2hs1
               if str(h1_integral(build_skeleton(t))) == "0"]
    assert len(spheres) == 1
    for r in (3, 5, 7):
        got = complex(numeric_eval(tv(spheres[0], r, 1), 15))
        want = 2 * math.sin(math.pi / r) ** 2 / r
        assert abs(got - want) < 1e-12


def test_level_three_value_of_z2hs(z2hs1, z2hs2):
    # only the zero colouring contributes: the vertex factor alone
    for tri in z2hs1 + z2hs2:
        value = tv(tri, 3, 1)
        assert value.is_rational() and value.as_rational() == Fraction(1, 2)


def test_tv_at_class_partitions_the_sum(census1):
    for tri in census1:
        skel = build_skeleton(tri)
        basis = cocycle_space_1(skel)
        for r, q in ((4, 1), (5, 1), (5, 3)):
            total = tv(skel, r, q)
            acc = None
            for bits in range(1 << basis.beta1):
                coords = tuple((bits >> k) & 1 for k in range(basis.beta1))
                part = tv_at_class(skel, r, q, coords)
                acc = part if acc is None else acc + part
            assert acc == total
