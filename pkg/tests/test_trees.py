import pytest
from hypothesis import given, settings, strategies as st

from operadforge.trees import (
    LevelTree,
    TreeMorphism,
    TwoLeafTree,
    compose_morphisms,
    degenerate_tree,
    fiber,
    identity_morphism,
    leaf_order,
    linear_tree,
    prunisation,
    quasi_bijection_exists,
    subtree,
    surjective_morphisms,
)


def test_nested_serialization_golden():
    T = LevelTree(2, ((2,), (1, 2)))
    assert T.to_nested() == [[1], [2]]
    assert LevelTree.from_nested(2, [[1], [2]]) == T


def test_nested_degenerate_and_linear():
    assert degenerate_tree(2).to_nested() == []
    assert linear_tree(3).to_nested() == [[[1]]]


@st.composite
def random_tree(draw):
    depth = draw(st.integers(min_value=1, max_value=3))
    fibers = [(draw(st.integers(min_value=0, max_value=3)),)]
    for k in range(1, depth):
        width = sum(fibers[k - 1])
        fibers.append(tuple(draw(st.integers(min_value=0, max_value=2)) for _ in range(width)))
    return LevelTree(depth, tuple(fibers))


@settings(max_examples=100, deadline=None)
@given(random_tree())
def test_nested_roundtrip(T):
    if T.is_degenerate() and T.depth > 1:
        return  # [] loses the depth, reconstructed separately
    assert LevelTree.from_nested(T.depth, T.to_nested()) == T


@settings(max_examples=100, deadline=None)
@given(random_tree())
def test_prunisation_idempotent(T):
    P = prunisation(T)
    assert P.is_pruned() or P.num_leaves() == 0
    assert prunisation(P) == P


def test_leaf_order_on_two_leaf_trees():
    for n, a in [(3, 0), (3, 1), (3, 2), (4, 1)]:
        T = TwoLeafTree(n, a, (1, 2)).tree()
        orders = leaf_order(T)
        assert orders == {frozenset({0, 1}): a}


def test_subtree_and_fiber():
    T = LevelTree(3, ((2,), (1, 2), (2, 1, 1)))
    S = subtree(T, 1, 1)
    assert S.depth == 2
    assert S.num_leaves() == 2
    phi = surjective_morphisms(T, linear_tree(3))[0]
    # the whole source collapses onto the single chain
    F = fiber(phi, (3, 0))
    assert F.depth == 3
    assert F.num_leaves() == T.num_leaves()
    with pytest.raises(ValueError):
        fiber(phi, (1, 0))  # not a leaf of the target


def test_morphism_validation():
    line2 = LevelTree(2, ((1,), (2,)))
    with pytest.raises(ValueError):
        # not monotone within the single level-2 fiber
        TreeMorphism(line2, line2, ((0,), (0,), (1, 0)))
    T = LevelTree(2, ((2,), (1, 1)))
    with pytest.raises(ValueError):
        # level-2 vertex sent over the wrong level-1 branch
        TreeMorphism(T, T, ((0,), (0, 1), (1, 0)))
    ok = TreeMorphism(T, line2, ((0,), (0, 0), (0, 1)))
    assert ok.apply(2, 1) == 1


def test_identity_and_composition():
    T = LevelTree(2, ((2,), (1, 2)))
    ident = identity_morphism(T)
    assert compose_morphisms(ident, ident).maps == ident.maps


def test_surjective_morphism_counts():
    T2 = LevelTree(2, ((2,), (1, 1)))
    assert len(surjective_morphisms(T2, T2)) == 1
    line = LevelTree(2, ((1,), (1,)))
    # both leaves collapse onto the single branch
    assert len(surjective_morphisms(T2, line)) == 1
    assert surjective_morphisms(line, T2) == []


def test_quasi_bijection_direction():
    # same numbering: meeting level can only go up; different: strictly
    assert quasi_bijection_exists(2, 0, "id", 1, "id")
    assert not quasi_bijection_exists(2, 1, "id", 0, "id")
    assert quasi_bijection_exists(2, 0, "id", 1, "swap")
    assert not quasi_bijection_exists(2, 1, "id", 1, "swap")
    assert quasi_bijection_exists(2, 1, "id", 1, "id")


def test_two_leaf_tree_shape():
    T = TwoLeafTree(3, 1, (1, 2)).tree()
    assert T.depth == 3
    assert T.num_leaves() == 2
    assert T.is_pruned()
