from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dilator import cocycle as C
from dilator import interaction as I
from dilator.cylinder import CylinderFunction, indicator_basis
from dilator.lattice import ball

import oracles
from conftest import BIN, ind

F = Fraction
one = CylinderFunction.constant(BIN, 1)


def const(q):
    return CylinderFunction.constant(BIN, q)


def oracle_fn(gen, t, f, n_out):
    table = oracles.transfer(gen, t, lambda y: f(BIN.parse_word(y)), n_out)
    return CylinderFunction(BIN, (n_out,), [table[x] for x in oracles.words(n_out)])


FAIR = {0: F(1, 2), 1: F(1, 2)}
BIASED = {0: F(1, 3), 1: F(2, 3)}


def test_transfer_examples(fair, biased):
    assert I.transfer(fair, (1,), ind("0")) == const(F(1, 2))
    assert oracle_fn(FAIR, 1, ind("0"), 0) == const(F(1, 2))
    assert I.transfer(biased, (1,), ind("0")) == const(F(1, 3))
    assert oracle_fn(BIASED, 1, ind("0"), 0) == const(F(1, 3))
    for t in range(4):
        assert I.transfer(biased, (t,), one) == 1


def test_transfer_depth_bookkeeping(biased):
    # max(depth b, depth omega_t) - t, floored at 0
    assert I.transfer(biased, (2,), ind("0101")).depth == (2,)
    assert I.transfer(biased, (3,), ind("0")).depth == (0,)


def test_transfer_against_oracle(biased):
    for t in range(4):
        for a in indicator_basis(BIN, 3):
            got = I.transfer(biased, (t,), a)
            n = max(3, t) - t
            assert got == oracle_fn(BIASED, t, a, n)


def test_transfer_rejects_negative(fair):
    with pytest.raises(ValueError):
        I.transfer(fair, (-1,), one)


def test_v_apply_examples(fair, biased):
    a = ind("01")
    assert I.v_apply(fair, (0,), a) == a
    assert I.v_apply(fair, (-1,), ind("1")) == const(F(1, 2))
    assert I.v_apply(biased, (-1,), ind("1")) == const(F(2, 3))
    assert I.v_apply(fair, (1,), ind("0")) == ind("0").pullback((1,))
    assert I.v_apply(fair, (1,), ind("0")) == CylinderFunction.from_function(BIN, 2, lambda w: int(w[0][1] == 0))


def test_expectation_examples(fair, biased):
    assert I.expectation(fair, (1,), ind("0")) == const(F(1, 2))
    assert I.expectation(biased, (1,), ind("0")) == const(F(1, 3))
    a = ind("10")
    for t in range(3):
        assert I.expectation(biased, (t,), a.pullback((t,))) == a.pullback((t,))
        assert I.expectation(biased, (t,), one) == 1


def test_expectation_rejects_negative(fair):
    with pytest.raises(ValueError):
        I.expectation(fair, (-2,), one)


def test_operator_matrix_is_stochastic(biased):
    for t in ball(2, 1):
        _, m = I.operator_matrix(biased, t, 2)
        for row in m:
            assert sum(row) == 1 and min(row) >= 0


@pytest.mark.parametrize("name", ["fair", "biased"])
def test_axiom_suite_reference_cocycles(name, request):
    rep = I.axiom_suite(request.getfixturevalue(name), 2, 2)
    assert rep.ok, rep.failures()[:2]


def test_axiom_suite_two_factors():
    sys_ = I.InteractionSystem(C.random_cocycle((2, 2), seed=7))
    rep = I.axiom_suite(sys_, 1, 1)
    assert rep.ok, rep.failures()[:2]
    assert I.partial_action_suite(sys_, 1, 1).ok


def test_axiom_suite_catches_broken_normalization():
    sys_ = I.InteractionSystem(C.with_entry(C.fair(), 0, 0, F(3, 4)))
    rep = I.axiom_suite(sys_, 2, 2)
    assert not rep.ok
    failed = {c.check for c in rep.failures()}
    assert "axiom.unital" in failed
    witness = rep.failures()[0].witness
    assert witness and "lhs" in witness and "rhs" in witness


@pytest.mark.parametrize("name", ["fair", "biased"])
def test_partial_action_suite(name, request):
    rep = I.partial_action_suite(request.getfixturevalue(name), 2, 2)
    assert rep.ok, rep.failures()[:2]


def test_fair_expectations_on_depth_two(fair):
    for a in indicator_basis(BIN, 2):
        e2 = I.expectation(fair, (2,), a)
        assert I.expectation(fair, (1,), e2) == e2
        assert I.expectation(fair, (2,), I.expectation(fair, (1,), a)) == e2


def test_gamma_inverse(biased):
    for a in indicator_basis(BIN, 3):
        assert I.v_apply(biased, (-1,), I.v_apply(biased, (1,), a)) == a


def test_compare_examples(fair, biased):
    lhs, rhs = I.compare(fair, biased, (-1,), ind("0"))
    assert lhs == rhs == const(F(1, 2))
    lhs, rhs = I.compare(fair, fair, (-2,), ind("01"))
    assert lhs == rhs
    lhs, rhs = I.compare(fair, biased, (2,), ind("1"))
    assert lhs == rhs == ind("1").pullback((2,))


def test_compare_relaxed_is_an_error(fair, relaxed):
    with pytest.raises(ValueError):
        I.compare(fair, relaxed, (-1,), ind("0"))


def test_index_is_reciprocal_weight(biased):
    idx = biased.index((1,))
    assert idx(BIN.parse_word("0")) == 3 and idx(BIN.parse_word("1")) == F(3, 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 5000), st.integers(-2, 2), st.integers(0, 2))
def test_decomposition_independence_random(seed, t, w):
    sys_ = I.InteractionSystem(C.random_cocycle((2,), seed=seed, depth=2))
    r, s = max(-t, 0) + w, max(t, 0) + w
    for a in indicator_basis(BIN, 2):
        assert I.v_apply(sys_, (t,), a, (C.lattice.LatticeElement((r,)), C.lattice.LatticeElement((s,)))) == \
            I.v_apply(sys_, (t,), a)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 5000), st.integers(0, 3))
def test_transfer_module_identity_random(seed, t):
    sys_ = I.InteractionSystem(C.random_cocycle((3,), seed=seed, depth=2))
    S = sys_.system
    for a in indicator_basis(S, 1):
        for b in indicator_basis(S, 1):
            assert I.transfer(sys_, (t,), a.pullback((t,)) * b) == a * I.transfer(sys_, (t,), b)
        assert I.transfer(sys_, (t,), a.pullback((t,))) == a
