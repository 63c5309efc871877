import random

import pytest

from gmpy2 import mpq

from mouldlab.core.expr import parse
from mouldlab.operad import (
    MouldComponent,
    compose_at,
    dend_left,
    dend_right,
    derivation,
    middle_gen,
    push,
    unit,
    zero_component,
)
from mouldlab.trees import (
    LEAF,
    TreeBasisExpander,
    binary_decompose,
    binary_trees,
    corolla,
    expand_in_tree_basis,
    expansion_to_json,
    graft_generator,
    is_binary,
    is_leaf,
    is_tamari_interval,
    leaf_count,
    left_comb,
    multi_residue,
    pi,
    pi_fibers,
    planar_generator_expression,
    planar_trees,
    psi_planar_tree,
    psi_tree,
    right_comb,
    sum_psi_trees,
    tamari_cocovers,
    tamari_covers,
    tamari_interval,
    tamari_leq,
    top_vertex_removals,
    tree_basis_independent,
    tree_degree,
    tree_from_json,
    tree_from_text,
    tree_to_json,
    tree_to_text,
    vertex_intervals,
)

BIG_TREE = (("L", (("L", "L"), "L")), (("L", "L"), ("L", "L")))


def test_binary_tree_counts():
    catalan = [1, 1, 2, 5, 14, 42, 132]
    for n, expected in enumerate(catalan):
        trees = binary_trees(n)
        assert len(trees) == expected
        assert len(set(trees)) == expected
        for t in trees:
            assert is_binary(t)
            assert tree_degree(t) == n
            assert leaf_count(t) == n + 1


def test_comb_and_corolla_shapes():
    assert left_comb(1) == ("L", "L") == right_comb(1)
    assert left_comb(3) == ((("L", "L"), "L"), "L")
    assert right_comb(3) == ("L", ("L", ("L", "L")))
    assert corolla(3) == ("L", "L", "L", "L")
    assert is_leaf(LEAF)
    assert not is_binary(corolla(3))
    assert is_binary(left_comb(5))
    assert tree_degree(corolla(4)) == 4


def test_vertex_intervals():
    assert vertex_intervals(("L", "L")) == ((1, 1),)
    assert set(vertex_intervals(left_comb(3))) == {(1, 1), (1, 2), (1, 3)}
    assert set(vertex_intervals(right_comb(3))) == {(1, 3), (2, 3), (3, 3)}
    got = set(vertex_intervals(BIG_TREE))
    assert got == {(1, 3), (1, 7), (2, 2), (2, 3), (5, 5), (5, 7), (7, 7)}


def test_psi_values():
    assert psi_tree(("L", "L")) == unit()
    assert str(psi_tree(left_comb(3)).value) == "1/(u1*(u1+u2)*(u1+u2+u3))"
    assert str(psi_tree(right_comb(3)).value) == "1/((u1+u2+u3)*(u2+u3)*u3)"
    big = psi_tree(BIG_TREE)
    assert str(big.value) == (
        "1/((u1+u2+u3)*(u1+u2+u3+u4+u5+u6+u7)*u2*(u2+u3)"
        "*u5*(u5+u6+u7)*u7)"
    )


def test_sum_of_psi_images():
    # the all-trees sum collapses to a product of single variables
    for n in range(1, 5):
        total = zero_component(n)
        for t in binary_trees(n):
            total = total + psi_tree(t)
        assert total.value == sum_psi_trees(n)
    assert str(sum_psi_trees(2)) == "1/(u1*u2)"
    assert str(sum_psi_trees(3)) == "1/(u1*u2*u3)"


def test_tree_text_and_json_round_trip():
    for n in range(0, 5):
        for t in binary_trees(n):
            assert tree_from_text(tree_to_text(t)) == t
            assert tree_from_json(tree_to_json(t)) == t
    for n in range(1, 4):
        for t in planar_trees(n):
            assert tree_from_text(tree_to_text(t)) == t
    assert tree_to_text(("L", ("L", "L"))) == "(L,(L,L))"
    with pytest.raises(ValueError):
        tree_from_text("(L,")
    with pytest.raises(ValueError):
        tree_from_text("(K,L)")


def test_pi_sorts_words_into_trees():
    assert pi((1,)) == ("L", "L")
    assert pi((1, 2, 3)) == right_comb(3)
    assert pi((3, 2, 1)) == left_comb(3)
    assert pi((4, 1, 6, 3, 5, 2, 7)) == BIG_TREE
    assert pi((4, 6, 5, 1, 3, 7, 2)) == BIG_TREE
    with pytest.raises(ValueError):
        pi((1, 1, 2))
    with pytest.raises(ValueError):
        pi((0, 1))


def test_pi_fiber_sizes():
    fibers = pi_fibers(3)
    assert set(fibers) == set(binary_trees(3))
    assert sorted(fibers.values()) == [1, 1, 1, 1, 2]
    assert sum(pi_fibers(4).values()) == 24


def test_multi_residue_detects_the_sorting_tree():
    ld = psi_tree((("L", "L"), "L"))
    assert multi_residue(ld, (2, 1)) == 1
    assert multi_residue(ld, (1, 2)) == 0
    import itertools

    for n in range(1, 4):
        for t in binary_trees(n):
            f = psi_tree(t)
            for sigma in itertools.permutations(range(1, n + 1)):
                value = multi_residue(f, sigma)
                assert (value != 0) == (pi(sigma) == t)
    with pytest.raises(ValueError):
        multi_residue(ld, (1, 1))
    with pytest.raises(ValueError):
        multi_residue(ld, (1,))


def test_graft_generator_positions():
    t = ("L", ("L", "L"))
    assert graft_generator(t, 1, "left") == (("L", "L"), ("L", "L"))
    assert graft_generator(t, 2, "left") == ("L", (("L", "L"), "L"))
    assert graft_generator(t, 2, "right") == ("L", ("L", ("L", "L")))
    with pytest.raises(ValueError):
        graft_generator(t, 1, "right")
    with pytest.raises(ValueError):
        graft_generator(t, 3, "left")
    with pytest.raises(ValueError):
        graft_generator(t, 0, "left")


def test_graft_matches_operad_composition():
    gens = {"left": dend_left(), "right": dend_right()}
    for n in range(1, 6):
        for t in binary_trees(n):
            valid = 0
            for i in range(1, n + 1):
                for side in ("left", "right"):
                    try:
                        grafted = graft_generator(t, i, side)
                    except ValueError:
                        continue
                    valid += 1
                    assert psi_tree(grafted) == compose_at(
                        psi_tree(t), gens[side], i
                    )
            # each leaf supports exactly one generator graft
            assert valid == leaf_count(t)


def test_binary_decompose_round_trip():
    assert binary_decompose((("L", "L"), "L")) == (("L", "L"), 1, "left")
    for n in range(2, 6):
        for t in binary_trees(n):
            s, i, side = binary_decompose(t)
            assert tree_degree(s) == n - 1
            assert graft_generator(s, i, side) == t
    with pytest.raises(ValueError):
        binary_decompose(("L", "L"))
    with pytest.raises(ValueError):
        binary_decompose(corolla(3))


def test_removing_top_vertices_differentiates_psi():
    assert top_vertex_removals((("L", "L"), "L")) == [("L", "L")]
    for n in range(2, 5):
        for t in binary_trees(n):
            total = zero_component(n - 1)
            for s in top_vertex_removals(t):
                total = total + psi_tree(s)
            assert derivation(psi_tree(t)) == total


def test_tamari_rotations():
    lc, rc = left_comb(3), right_comb(3)
    assert set(tamari_covers(lc)) == {
        (("L", ("L", "L")), "L"),
        (("L", "L"), ("L", "L")),
    }
    assert tamari_covers(rc) == frozenset()
    assert tamari_cocovers(lc) == frozenset()
    assert set(tamari_cocovers(rc)) == {
        ("L", (("L", "L"), "L")),
        (("L", "L"), ("L", "L")),
    }
    # the degree-3 lattice is the pentagon: five trees, five cover edges
    assert sum(len(tamari_covers(t)) for t in binary_trees(3)) == 5


def test_tamari_order():
    a = (("L", "L"), ("L", "L"))
    b = (("L", ("L", "L")), "L")
    assert not tamari_leq(a, b)
    assert not tamari_leq(b, a)
    for n in range(1, 5):
        lc, rc = left_comb(n), right_comb(n)
        for t in binary_trees(n):
            assert tamari_leq(t, t)
            assert tamari_leq(lc, t)
            assert tamari_leq(t, rc)
        assert tamari_interval(lc, rc) == frozenset(binary_trees(n))
    assert tamari_interval(a, a) == frozenset({a})
    assert tamari_interval(right_comb(3), left_comb(3)) == frozenset()


def test_tamari_interval_recognition():
    assert is_tamari_interval(set(binary_trees(3)))
    assert is_tamari_interval({left_comb(4)})
    assert not is_tamari_interval({left_comb(3), right_comb(3)})
    assert not is_tamari_interval(set())
    middle = tamari_interval(left_comb(3), (("L", "L"), ("L", "L")))
    assert is_tamari_interval(set(middle))


def test_tree_basis_independence():
    for n in range(1, 5):
        assert tree_basis_independent(n)


def test_expand_in_tree_basis():
    for n in range(1, 4):
        for t in binary_trees(n):
            assert expand_in_tree_basis(psi_tree(t)) == {t: mpq(1)}
    a, b = left_comb(3), right_comb(3)
    f = psi_tree(a).scale(mpq(2)) + psi_tree(b).scale(mpq(-3, 7))
    assert expand_in_tree_basis(f) == {a: mpq(2), b: mpq(-3, 7)}
    assert expand_in_tree_basis(zero_component(3)) == {}
    with pytest.raises(ValueError):
        expand_in_tree_basis(middle_gen())
    with pytest.raises(ValueError):
        expand_in_tree_basis(push(middle_gen()))
    payload = expansion_to_json({a: mpq(2)})
    assert payload == {"(((L,L),L),L)": "2"}


def test_tree_basis_expander_matches_symbolic_expansion():
    rng = random.Random(11)
    for n in range(2, 5):
        expander = TreeBasisExpander(n, seed=3)
        trees = binary_trees(n)
        for _ in range(4):
            f = zero_component(n)
            expected = {}
            for t in rng.sample(trees, min(3, len(trees))):
                c = mpq(rng.randint(-4, 4))
                if c == 0:
                    continue
                f = f + psi_tree(t).scale(c)
                expected[t] = expected.get(t, mpq(0)) + c
            expected = {t: c for t, c in expected.items() if c != 0}
            assert expander.expand(f) == expected
            if n <= 4:
                assert expand_in_tree_basis(f) == expected
        outside = MouldComponent(n, parse("1/(u1+u2)"))
        with pytest.raises(ValueError):
            expander.expand(outside)


def test_planar_tree_counts():
    expected = [1, 3, 11, 45]
    for n, count in enumerate(expected, start=1):
        trees = planar_trees(n)
        assert len(trees) == count
        assert len(set(trees)) == count
        binary = [t for t in trees if is_binary(t)]
        assert len(binary) == len(binary_trees(n))


def test_psi_on_planar_trees():
    assert str(psi_planar_tree(corolla(3)).value) == "1/(u1+u2+u3)"
    for n in range(1, 4):
        for t in binary_trees(n):
            assert psi_planar_tree(t) == psi_tree(t)
    mixed = ("L", "L", ("L", "L"))
    assert str(psi_planar_tree(mixed).value) == "1/((u1+u2+u3)*u3)"


def test_planar_generator_expression_matches_psi():
    for n in range(1, 4):
        for t in planar_trees(n):
            assert planar_generator_expression(t) == psi_planar_tree(t)
