import pytest
from hypothesis import given, settings, strategies as st

from operadforge.poset_topology import (
    FinitePoset,
    dismantle,
    homology,
    milgram_poset,
    order_complex,
    smith_normal_form,
)
from operadforge.signatures import enumerate_downset, sig_leq
from operadforge.vdgen import generate_V


def chain_poset(n):
    return FinitePoset(list(range(n)), lambda x, y: x <= y)


def test_axiom_rejection():
    with pytest.raises(ValueError):
        FinitePoset([0, 1], [[False, False], [False, True]])  # not reflexive
    with pytest.raises(ValueError):
        FinitePoset([0, 1], [[True, True], [True, True]])  # not antisymmetric
    with pytest.raises(ValueError):
        FinitePoset(
            [0, 1, 2],
            [[True, True, False], [False, True, True], [False, False, True]],
        )  # not transitive
    with pytest.raises(ValueError):
        FinitePoset([0, 0], lambda x, y: True)  # duplicate elements


def test_covers_and_extremes():
    P = chain_poset(3)
    assert P.covers() == [(0, 1), (1, 2)]
    assert P.minimum() == 0
    assert P.maximum() == 2
    assert P.op().maximum() == 0


def test_order_complex_counts():
    cx = order_complex(chain_poset(3))
    assert [len(g) for g in cx.generators] == [3, 3, 1]
    assert cx.euler_characteristic() == 1
    # antichain: vertices only
    A = FinitePoset([0, 1, 2], lambda x, y: x == y)
    assert [len(g) for g in order_complex(A).generators] == [3]


def test_smith_normal_form_goldens():
    assert smith_normal_form({}) == []
    assert smith_normal_form({(0, 0): 2, (1, 1): 6}) == [2, 6]
    # diag(4, 6) has invariant factors 2 | 12
    assert smith_normal_form({(0, 0): 4, (1, 1): 6}) == [2, 12]
    assert smith_normal_form({(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): -1}) == [1, 2]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_milgram_poset_is_a_sphere(n):
    P = milgram_poset(n)
    assert len(P) == 2 * n
    rep = homology(order_complex(P), reduced=True)
    assert rep.is_acyclic() is (False)
    expected = {q: (1 if q == n - 1 else 0) for q in rep.betti}
    assert rep.betti == expected
    assert all(not t for t in rep.torsion.values())
    assert rep.euler_consistent()


def test_crown_is_not_dismantlable():
    res = dismantle(milgram_poset(2))
    assert not res.success
    assert len(res.core) == 4


@pytest.mark.parametrize("d", [2, 3])
def test_label_downset_poset_contractible(d):
    elems = enumerate_downset(generate_V(d).elements)
    P = FinitePoset(elems, sig_leq)
    assert dismantle(P).success
    rep = homology(order_complex(P), reduced=True)
    assert rep.is_acyclic()


@st.composite
def subset_poset(draw):
    subs = draw(
        st.lists(st.frozensets(st.integers(0, 3), max_size=4), min_size=1, max_size=6, unique=True)
    )
    return FinitePoset(subs, lambda x, y: x <= y)


@settings(max_examples=60, deadline=None)
@given(subset_poset())
def test_homology_euler_consistency(P):
    # order_complex asserts that the boundary squares to zero
    cx = order_complex(P)
    assert homology(cx, reduced=True).euler_consistent()
    assert homology(cx, reduced=False).euler_consistent()
