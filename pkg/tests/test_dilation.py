from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dilator import cocycle as C
from dilator import dilation as Dl
from dilator import interaction as I
from dilator.cylinder import CylinderFunction, indicator_basis
from dilator.dilation import DilationElement, beta_apply, big_expectation, embed
from dilator.lattice import LatticeElement, ball
from dilator.report import CERTIFICATE, WITNESS

from conftest import BIN, ind, word

F = Fraction
one = CylinderFunction.constant(BIN, 1)


def el(level, f):
    return DilationElement(LatticeElement((level,)), f)


def test_embed_examples():
    assert embed(one) == el(0, one)
    assert embed(ind("0")) != embed(ind("1"))
    assert embed(ind("01")) == embed(ind("01"))
    assert embed(ind("0")) * embed(ind("01")) == embed(ind("0") * ind("01"))


def test_equivalence_along_connecting_maps():
    a = ind("10")
    assert el(1, a) == el(3, a.pullback((2,)))
    assert el(1, a) != el(0, a)


def test_beta_examples():
    a = ind("01")
    assert beta_apply((-1,), embed(a)) == el(1, a)
    assert beta_apply((1,), el(1, a)) == embed(a)
    assert beta_apply((1,), embed(ind("0"))) == embed(ind("0").pullback((1,)))


def test_big_expectation_examples(fair):
    assert big_expectation(fair, el(1, ind("0"))) == embed(CylinderFunction.constant(BIN, F(1, 2)))
    a = ind("011")
    assert big_expectation(fair, embed(a)) == embed(a)
    assert big_expectation(fair, el(1, a)) == big_expectation(fair, el(2, a.pullback((1,))))


def test_algebra_examples():
    a, b = ind("0"), ind("11")
    assert el(1, a) + el(1, b) == el(1, a + b)
    assert el(1, a) * el(2, b) == el(2, a.pullback((1,)) * b)
    e = el(1, ind("0"))
    assert e * e == e


def test_positivity_is_representative_independent():
    e = el(1, ind("0") - ind("1"))
    assert not e.is_positive()
    assert not e.raise_to(LatticeElement((3,))).is_positive()
    assert el(2, ind("01")).raise_to(LatticeElement((4,))).is_positive()


def test_base_part():
    assert el(2, ind("0").pullback((2,))).base_part() == ind("0")
    assert el(1, ind("0")).base_part() is None


@pytest.mark.slow
@pytest.mark.parametrize("name", ["fair", "biased"])
def test_dilation_suite(name, request):
    rep = Dl.dilation_suite(request.getfixturevalue(name), 2, 2)
    assert rep.ok, rep.failures()[:2]
    families = {c.check for c in rep.checks}
    for fam in ("dilation.law", "dilation.admissible_commute", "dilation.admissible_unital",
                "dilation.restriction_residual", "dilation.induced_map", "dilation.restriction"):
        assert fam in families


def test_dilation_suite_zero_translation(fair):
    rep = Dl.dilation_suite(fair, 1, 0)
    assert rep.ok
    assert all(c.parameters.get("t", [0]) == [0] for c in rep.checks if "t" in c.parameters)


def test_dilation_suite_mutation():
    sys_ = I.InteractionSystem(C.with_entry(C.fair(), 0, 0, F(3, 4)))
    rep = Dl.dilation_suite(sys_, 1, 1)
    failed = {c.check for c in rep.failures()}
    assert failed & {"dilation.law", "dilation.admissible_unital"}
    assert all(c.witness for c in rep.failures())


def test_faithfulness_certificate(fair, biased):
    for sys_ in (fair, biased):
        rep = Dl.faithfulness(sys_, 4, 3)
        assert rep.checks[0].status == CERTIFICATE


def test_faithfulness_witness(relaxed):
    rep = Dl.faithfulness(relaxed, 4, 3)
    chk = rep.checks[0]
    assert chk.status == WITNESS
    b = Dl.find_unfaithful(relaxed, 4, 3)
    assert b == el(1, ind("0"))
    assert not b.is_zero() and b.is_positive()
    assert big_expectation(relaxed, b * b).is_zero()


def test_zero_is_not_a_witness(relaxed):
    zero = el(1, CylinderFunction.constant(BIN, 0))
    assert big_expectation(relaxed, zero * zero).is_zero()
    assert Dl.find_unfaithful(relaxed, 4, 3) != zero


def test_fiber_measure_examples(fair, biased):
    x = word("")
    for y in Dl.lifts(fair, x, (2,)):
        assert Dl.fiber_measure(fair, x, (2,), y) == F(1, 4)
    assert Dl.fiber_measure(fair, word("01"), (0,), word("01")) == 1
    assert Dl.fiber_measure(biased, x, (1,), word("0")) == F(1, 3)
    assert Dl.fiber_measure(biased, x, (1,), word("1")) == F(2, 3)


def test_fiber_measure_rejects_non_lift(fair):
    with pytest.raises(ValueError):
        Dl.fiber_measure(fair, word("0"), (1,), word("11"))


@pytest.mark.parametrize("name", ["fair", "biased"])
def test_fiber_suite(name, request):
    assert Dl.fiber_suite(request.getfixturevalue(name), 3).ok


@pytest.mark.parametrize("name", ["fair", "biased"])
def test_expectation_forcing(name, request):
    assert Dl.expectation_forcing(request.getfixturevalue(name), 2, 2).ok


def test_forcing_at_level_zero_is_identity(biased):
    for a in indicator_basis(BIN, 2):
        assert embed(I.v_apply(biased, (0,), a)) == big_expectation(biased, embed(a))


def test_dilation_element_json():
    e = el(1, ind("0"))
    assert e.to_json() == {"level": [1], "fn": {"depth": [1], "table": {"0": "1", "1": "0"}}}


def test_deterministic_construction(biased):
    first = Dl.dilation_suite(biased, 1, 1).to_json(verbose=True)
    again = Dl.dilation_suite(I.InteractionSystem(C.biased()), 1, 1).to_json(verbose=True)
    assert first == again


spanning = st.tuples(st.integers(0, 2), st.integers(0, 3)).map(lambda p: el(p[0], indicator_basis(BIN, 2)[p[1]]))
group = st.integers(-3, 3)


@settings(max_examples=40, deadline=None)
@given(spanning, spanning, group, group)
def test_beta_is_an_automorphic_action(b, c, u, v):
    assert beta_apply((u,), beta_apply((v,), b)) == beta_apply((u + v,), b)
    assert beta_apply((0,), b) == b
    assert beta_apply((u,), b * c) == beta_apply((u,), b) * beta_apply((u,), c)
    assert beta_apply((u,), b + c) == beta_apply((u,), b) + beta_apply((u,), c)


@settings(max_examples=40, deadline=None)
@given(spanning, st.sampled_from(indicator_basis(BIN, 1)), st.sampled_from(indicator_basis(BIN, 2)))
def test_expectation_is_a_bimodule_projection(b, a, c):
    sys_ = I.InteractionSystem(C.biased())
    Fb = big_expectation(sys_, b)
    assert big_expectation(sys_, Fb) == Fb
    assert Fb.is_positive()
    assert big_expectation(sys_, embed(a) * b * embed(c)) == embed(a) * Fb * embed(c)
    assert big_expectation(sys_, embed(one)) == embed(one)
