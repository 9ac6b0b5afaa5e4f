import pytest

from oracles import all_perms, brute_is_primitive, invariant_partitions, mul, naive_closure, normal_subgroups
from solvcover.affine import affine_group
from solvcover.group import (
    BlockSystem,
    NotPrimitive,
    NotSolvable,
    NotTransitive,
    OrderExceedsCap,
    PermGroup,
    TrivialGroup,
    alternating_group,
    are_conjugate,
    centralizer_in,
    conjugating_element,
    cyclic_group,
    derived_series,
    dihedral_group,
    elements,
    find_block_system,
    is_elementary_abelian,
    is_primitive,
    is_solvable,
    is_transitive,
    max_fixed_points,
    minimal_block_containing,
    minimal_normal_subgroups,
    stabilizer,
    symmetric_group,
    verify_structure,
)
from solvcover.perm import Permutation, fixed_point_count, parse_permutation


def G(d, *gens):
    return PermGroup.from_cycles(d, *gens)


S4 = G(4, "(1 2)", "(1 2 3 4)")
C5 = G(5, "(1 2 3 4 5)")
V4 = G(4, "(1 2)(3 4)", "(1 3)(2 4)")


def translations(H, d):
    # the unique minimal normal subgroup of an affine group
    (N,) = minimal_normal_subgroups(H)
    assert N.order() == d
    return N


def test_elements_examples():
    assert len(elements(C5)) == 5
    assert {g.images for g in elements(S4)} == naive_closure([g.images for g in S4.generators], 4)
    assert len(elements(S4)) == 24
    assert len(elements(PermGroup([], 3))) == 1


def test_elements_sorted_and_deterministic():
    els = elements(S4)
    assert els == sorted(els)
    assert els == elements(G(4, "(1 2 3 4)", "(1 2)"))


def test_order_cap():
    with pytest.raises(OrderExceedsCap):
        elements(symmetric_group(6), cap=100)
    with pytest.raises(OrderExceedsCap):
        PermGroup(symmetric_group(7).generators, 7, cap=1000).order()


def test_is_transitive():
    assert is_transitive(C5)
    assert not is_transitive(G(4, "(1 2)"))
    assert is_transitive(S4)


def test_minimal_block_examples():
    bs = minimal_block_containing(G(4, "(1 2 3 4)"), (0, 2))
    assert bs == BlockSystem(((0, 2), (1, 3)))
    assert minimal_block_containing(C5, (0, 1)) is None
    assert minimal_block_containing(S4, (0, 1)) is None
    with pytest.raises(NotTransitive):
        minimal_block_containing(G(4, "(1 2)"), (0, 1))


def test_minimal_block_matches_partition_oracle():
    # finest invariant partition joining 0 and x, by brute force
    for H in [G(4, "(1 2 3 4)"), dihedral_group(6), G(6, "(1 2 3 4 5 6)"), G(8, "(1 2 3 4 5 6 7 8)")]:
        gens = [g.images for g in H.generators]
        parts = invariant_partitions(gens, H.degree)
        for x in range(1, H.degree):
            joined = [p for p in parts if any(0 in b and x in b for b in p)]
            finest = max(joined, key=len)
            bs = minimal_block_containing(H, (0, x))
            got = {frozenset(b) for b in bs.blocks} if bs else {frozenset(range(H.degree))}
            assert got == finest
            if bs:
                assert bs.is_invariant(H)
                assert H.degree % bs.block_size == 0


def test_is_primitive_examples():
    agl15 = affine_group(5, 1)
    assert is_primitive(agl15)
    d4 = G(4, "(1 2 3 4)", "(1 3)")
    assert not is_primitive(d4)
    assert find_block_system(d4) == BlockSystem(((0, 2), (1, 3)))
    assert not is_primitive(G(5, "(1 2 3)"))


@pytest.mark.parametrize("H", [
    G(4, "(1 2 3 4)"), V4, S4, alternating_group(4), dihedral_group(5), dihedral_group(6),
    G(6, "(1 2 3)(4 5 6)", "(1 4)"), G(6, "(1 2 3 4 5 6)", "(1 2)"), affine_group(2, 3),
])
def test_is_primitive_matches_partition_oracle(H):
    assert is_primitive(H) == brute_is_primitive([g.images for g in H.generators], H.degree)


def brute_derived_orders(H):
    elems = {g.images for g in H}
    orders = [len(elems)]
    while True:
        comms = {mul(mul(inv_(a), inv_(b)), mul(a, b)) for a in elems for b in elems}
        nxt = naive_closure(list(comms), H.degree)
        if len(nxt) == len(elems):
            return orders
        elems = nxt
        orders.append(len(elems))


def inv_(g):
    out = [0] * len(g)
    for i, x in enumerate(g):
        out[x] = i
    return tuple(out)


def test_derived_series_s4():
    orders = [H.order() for H in derived_series(S4)]
    assert orders == [24, 12, 4, 1] == brute_derived_orders(S4)
    assert is_solvable(S4)


def test_derived_series_a5():
    A5 = alternating_group(5)
    series = derived_series(A5)
    assert [H.order() for H in series] == [60]
    assert brute_derived_orders(A5) == [60]
    assert not is_solvable(A5)
    assert not is_solvable(symmetric_group(5))
    assert [H.order() for H in derived_series(symmetric_group(5))] == [120, 60]


def test_derived_series_trivial_and_strict():
    assert [H.order() for H in derived_series(PermGroup([], 3))] == [1]
    for H in [affine_group(3, 2), affine_group(2, 3), dihedral_group(8)]:
        orders = [K.order() for K in derived_series(H)]
        assert all(a > b for a, b in zip(orders, orders[1:]))
        assert orders == brute_derived_orders(H)


def test_cyclic_groups_solvable():
    for n in range(1, 9):
        assert is_solvable(cyclic_group(n))


def test_stabilizer_examples():
    agl = affine_group(5, 1)
    assert stabilizer(agl, 0).order() == 4
    for x in range(5):
        assert stabilizer(C5, x).order() == 1
    S3on = stabilizer(S4, 3)
    assert S3on.order() == 6
    assert all(g(3) == 3 for g in S3on)


def test_minimal_normal_examples():
    mins = minimal_normal_subgroups(affine_group(5, 1))
    assert [N.order() for N in mins] == [5]
    S3 = G(3, "(1 2)", "(1 2 3)")
    mins = minimal_normal_subgroups(S3)
    assert len(mins) == 1 and mins[0] == G(3, "(1 2 3)")
    mins = minimal_normal_subgroups(V4)
    assert [N.order() for N in mins] == [2, 2, 2]


@pytest.mark.parametrize("H", [affine_group(5, 1), V4, S4, G(3, "(1 2)", "(1 2 3)"), dihedral_group(6),
                               alternating_group(4)])
def test_minimal_normal_matches_oracle(H):
    normals = normal_subgroups({g.images for g in H})
    ident = tuple(range(H.degree))
    nontriv = [N for N in normals if N != {ident}]
    expected = {N for N in nontriv if not any(M < N for M in nontriv)}
    assert {frozenset(g.images for g in N) for N in minimal_normal_subgroups(H)} == expected


def test_centralizer_examples():
    A = V4
    for g in A:
        assert centralizer_in(A, g) == A
    agl = affine_group(5, 1)
    T = translations(agl, 5)
    assert T == C5
    four_cycle = next(g for g in stabilizer(agl, 0) if len(g.cycles()) == 2 and g(0) == 0
                      and max(map(len, g.cycles())) == 4)
    assert centralizer_in(T, four_cycle).order() == 1
    assert centralizer_in(S4, Permutation.identity(4)) == S4


def test_elementary_abelian_examples():
    T = translations(affine_group(3, 2), 9)
    assert T.order() == 9
    assert is_elementary_abelian(T) == (True, 3)
    assert is_elementary_abelian(G(4, "(1 2 3 4)")) == (False, None)
    assert is_elementary_abelian(PermGroup([], 4)) == (True, None)
    assert is_elementary_abelian(S4) == (False, None)


def brute_max_fixed(H):
    return max(fixed_point_count(g) for g in H if not g.is_identity())


def test_max_fixed_points_examples():
    from solvcover.affine import semilinear_group

    v, w = max_fixed_points(affine_group(5, 1))
    assert v == 1 == brute_max_fixed(affine_group(5, 1)) and fixed_point_count(w) == 1
    v, w = max_fixed_points(semilinear_group(2, 3))
    assert v <= 2 and v == brute_max_fixed(semilinear_group(2, 3))
    v, w = max_fixed_points(S4)
    assert v == 2 and len([c for c in w.cycles() if len(c) == 2]) == 1
    with pytest.raises(TrivialGroup):
        max_fixed_points(PermGroup([], 3))


@pytest.mark.parametrize("H,p,k", [(affine_group(5, 1), 5, 1), (affine_group(3, 2), 3, 2), (S4, 2, 2)])
def test_verify_structure_examples(H, p, k):
    rep = verify_structure(H)
    assert rep.all_pass
    assert (rep.p, rep.k) == (p, k)
    assert rep.minimal_normal_subgroups[0].order() == p**k
    assert rep.stabilizer_core_free


def test_verify_structure_rejects():
    with pytest.raises(NotPrimitive):
        verify_structure(G(4, "(1 2 3 4)"))
    with pytest.raises(NotSolvable):
        verify_structure(alternating_group(5))


def test_conjugacy_search():
    H1 = G(4, "(1 2 3 4)")
    H2 = G(4, "(1 3 2 4)")
    x = conjugating_element(H1, H2)
    assert x is not None
    assert {(x * g * ~x) for g in H1} == set(H2)
    assert not are_conjugate(G(4, "(1 2)(3 4)", "(1 3)(2 4)"), G(4, "(1 2 3 4)"))
    # same order, not conjugate in S_6: regular C6 vs S3 acting regularly
    C6 = G(6, "(1 2 3 4 5 6)")
    S3reg = G(6, "(1 2 3)(4 5 6)", "(1 4)(2 6)(3 5)")
    assert S3reg.order() == 6 and is_transitive(S3reg)
    assert not are_conjugate(C6, S3reg)


def test_conjugacy_against_brute_force():
    # every conjugate of a transitive group by a random element is recognised,
    # and the verdict for a non-conjugate pair agrees with trying all of S_5
    import random

    rng = random.Random(7)
    D5 = dihedral_group(5)
    for _ in range(10):
        x = Permutation(rng.sample(range(5), 5))
        K = PermGroup([x * g * ~x for g in D5.generators], 5)
        assert are_conjugate(D5, K)
    C5b = G(5, "(1 2 3 4 5)")
    brute = any({tuple(x[g[xi]] for xi in inv_(x)) for g in (h.images for h in D5)} ==
                {h.images for h in C5b} for x in all_perms(5))
    assert are_conjugate(D5, C5b) == brute == False  # noqa: E712


def test_group_equality_by_elements():
    assert G(4, "(1 2 3 4)", "(1 2)") == S4
    assert hash(G(4, "(1 2 3 4)", "(1 2)")) == hash(S4)
    assert V4.is_subgroup_of(S4)
