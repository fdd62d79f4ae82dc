import pytest
from hypothesis import given, settings, strategies as st

from operadforge.signatures import (
    BergerElement,
    TruncatedSignature,
    berger_leq,
    enumerate_downset,
    factor_to_k2,
    k2_to_factor,
    meet,
    parse_signature,
    sig_leq,
)
from operadforge.vdgen import generate_V


def sig(text, d):
    return parse_signature(text, d)


def test_parse_and_text_roundtrip():
    s = sig("(1212)|(21)", 2)
    assert s.factors == ("1212", "21")
    assert s.text() == "(1212)|(21)"
    assert parse_signature("1212|21", 2) == s


def test_validation_rejects_bad_strings():
    with pytest.raises(ValueError):
        sig("(11)|(12)", 2)  # not alternating
    with pytest.raises(ValueError):
        sig("(12)|(12)", 2)  # non-last factor too short
    with pytest.raises(ValueError):
        sig("(121)|(121)", 3)  # m < d forces last factor length 2
    with pytest.raises(ValueError):
        sig("(121)|(121)|(121)|(12)", 3)  # too many factors


def test_factor_k2_conversions():
    x = factor_to_k2("121")
    assert x.mu == (1,) and x.sigma == (1, 2)
    y = factor_to_k2("2121")
    assert y.mu == (2,) and y.sigma == (2, 1)
    assert k2_to_factor(x) == "121"
    assert k2_to_factor(y) == "2121"


def test_berger_order_strictness():
    # same movement pattern: mu may stay equal; flipped: must drop
    assert berger_leq(factor_to_k2("121"), factor_to_k2("1212"))
    assert berger_leq(factor_to_k2("212"), factor_to_k2("1212"))
    assert not berger_leq(factor_to_k2("212"), factor_to_k2("121"))
    assert not berger_leq(factor_to_k2("1212"), factor_to_k2("121"))


def test_sig_leq_examples():
    assert sig_leq(sig("(121)|(12)", 2), sig("(121)|(121)", 2))
    assert sig_leq(sig("(121)|(21)", 2), sig("(1212)|(21)", 2))
    # equal complexity with flipped movement never compares
    assert not sig_leq(sig("(121)|(12)", 2), sig("(1212)|(21)", 2))
    assert not sig_leq(sig("(212)|(21)", 2), sig("(121)|(121)", 2))
    # absent levels sit at the bottom
    assert sig_leq(sig("(12)", 2), sig("(121)|(12)", 2))


def test_downset_sizes():
    assert len(enumerate_downset(generate_V(2).elements)) == 7
    assert len(enumerate_downset(generate_V(3).elements)) == 17
    assert len(enumerate_downset(generate_V(4).elements)) == 40


def test_meet_golden_d2():
    V = generate_V(2).elements
    assert meet(V[0], V[1]).text() == "(121)|(21)"


def downset_elements(d):
    return enumerate_downset(generate_V(d).elements)


@st.composite
def downset_pair(draw):
    d = draw(st.integers(min_value=2, max_value=3))
    P = downset_elements(d)
    i = draw(st.integers(min_value=0, max_value=len(P) - 1))
    j = draw(st.integers(min_value=0, max_value=len(P) - 1))
    return P[i], P[j]


@settings(max_examples=150, deadline=None)
@given(downset_pair())
def test_swap_is_an_order_automorphism(pair):
    a, b = pair
    assert a.swap().swap() == a
    assert sig_leq(a, b) == sig_leq(a.swap(), b.swap())


@settings(max_examples=60, deadline=None)
@given(downset_pair())
def test_meet_is_the_greatest_lower_bound(pair):
    a, b = pair
    m = meet(a, b)
    lower = [x for x in downset_elements(a.d) if sig_leq(x, a) and sig_leq(x, b)]
    if m is None:
        # no unique maximum among the common lower bounds
        assert not lower or sum(
            all(sig_leq(y, x) for y in lower) for x in lower
        ) != 1
    else:
        assert sig_leq(m, a) and sig_leq(m, b)
        for x in lower:
            assert sig_leq(x, m)
