import pytest
from hypothesis import given, strategies as st

from dilator.lattice import (
    LatticeElement, RankMismatch, ball, decompose, decompositions, join, semigroup_ball,
)

E = LatticeElement

nat = st.lists(st.integers(0, 6), min_size=2, max_size=2).map(lambda c: E(tuple(c)))
grp = st.lists(st.integers(-6, 6), min_size=2, max_size=2).map(lambda c: E(tuple(c)))


@pytest.mark.parametrize("r, s, expected", [
    ((1, 2), (3, 0), (3, 2)),
    ((0,), (0,), (0,)),
    ((2,), (5,), (5,)),
])
def test_join_examples(r, s, expected):
    assert join(E(r), E(s)) == E(expected)


def test_join_rank_mismatch():
    with pytest.raises(RankMismatch):
        join(E((1,)), E((1, 2)))


def test_join_rejects_group_elements():
    with pytest.raises(ValueError):
        join(E((-1,)), E((2,)))


@pytest.mark.parametrize("t, r, s", [
    ((-2, 3), (2, 0), (0, 3)),
    ((0, 0), (0, 0), (0, 0)),
    ((4,), (0,), (4,)),
])
def test_decompose_examples(t, r, s):
    assert decompose(E(t)) == (E(r), E(s))


def test_ball_examples():
    assert ball(1, 1) == [E((-1,)), E((0,)), E((1,))]
    assert ball(0, 2) == [E((0, 0))]
    assert len(ball(1, 2)) == 9
    assert ball(1, 2) == sorted(ball(1, 2), key=lambda e: e.coords)


@given(nat, nat, nat)
def test_join_is_a_semilattice(a, b, c):
    assert join(a, b) == join(b, a)
    assert join(join(a, b), c) == join(a, join(b, c))
    assert join(a, a) == a
    j = join(a, b)
    assert a <= j and b <= j


@given(nat, nat, nat)
def test_join_is_least(a, b, u):
    if a <= u and b <= u:
        assert join(a, b) <= u


@given(grp)
def test_decompose_is_minimal_and_disjoint(t):
    r, s = decompose(t)
    assert r.is_positive() and s.is_positive()
    assert s - r == t
    assert all(min(a, b) == 0 for a, b in zip(r, s))


def test_every_shifted_decomposition_is_valid():
    for t in ball(2, 2):
        pairs = list(decompositions(t, 2))
        assert len(pairs) == len(semigroup_ball(2, 2))
        for r, s in pairs:
            assert r.is_positive() and s.is_positive() and s - r == t


def test_partial_order_matches_semigroup_membership():
    assert E((1, 2)) <= E((1, 3))
    assert not E((1, 2)) <= E((0, 3))
