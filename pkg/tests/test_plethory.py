from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from plethys.errors import ActionEscape, ClosureEscape, NotWpc, SchemaError
from plethys.exact import Lattice
from plethys.ivpoly import IvPoly, compose, to_rational_poly
from plethys.plethory import FinOrder, is_wpc, p_ring_action, verify_plethory_axioms, w_lower, w_upper

from .oracles import binom

C = IvPoly.binomial
half = Fraction(1, 2)
Z, Zi, Zh, ZZ = FinOrder.integers(), FinOrder.gaussian(), FinOrder.dyadic(), FinOrder.split()
small_ivpolys = st.lists(st.integers(-6, 6), max_size=5).map(IvPoly)


def test_is_wpc_examples():
    for N in (2, 5, 12):
        assert is_wpc(Z, N).verdict == f"yes-up-to-{N}"
    v = is_wpc(Zi, 10)
    assert v.verdict == "no"
    assert v.witness == ((0, 1), 2, (-half, -half))
    assert is_wpc(Zh, 12).verdict == "yes-up-to-12"
    assert is_wpc(ZZ, 12).is_yes


def test_gaussian_binomials_match_oracle():
    """C(i, n) from the multiplication table against the complex falling factorial."""
    for n in range(7):
        acc_re, acc_im = Fraction(1), Fraction(0)
        for k in range(n):
            re, im = acc_re * (-k) - acc_im, acc_re + acc_im * (-k)
            acc_re, acc_im = re / (k + 1), im / (k + 1)
        assert Zi.binomials((0, 1), n)[n] == (acc_re, acc_im)


def test_dyadic_binomial_denominators_are_powers_of_two():
    for n in range(13):
        den = binom(half, n).denominator
        assert den & (den - 1) == 0
        assert Zh.contains((binom(half, n),))


def test_w_lower_examples():
    assert w_lower(Z, 6).status == "stabilized"
    assert w_lower(Z, 6).order.same_ring(Z)
    first = w_lower(Zi, 2, max_iters=1)
    assert first.status == "not-stabilized"
    assert first.order.contains((-half, -half))
    assert first.added[0] == (-half, -half)
    # the product round of the same pass adds ((-1-i)/2)^2 = i/2
    assert first.order.lattice == Lattice.from_generators(2, [(half, 0), (0, half)])
    res = w_lower(Zi, 3, max_iters=4)
    assert res.status == "not-stabilized"
    assert {2, 6} <= set(res.denominators())
    assert res.order.contains((half, Fraction(1, 6)))


def test_w_upper_examples():
    up = w_upper(Zi, [(1, 0), (0, 1)], 10)
    assert up.lattice == Lattice.from_generators(2, [(1, 0)])
    assert not up.contains((0, 1))
    assert w_upper(Z, [(1,)], 8).same_ring(Z)
    split = w_upper(ZZ, [(1, 0)], 10)
    assert split.contains((1, 0)) and split.same_ring(ZZ)


def test_w_upper_rejects_outside_candidate():
    with pytest.raises(ClosureEscape):
        w_upper(Zi, [(half, 0)], 4)


@pytest.mark.parametrize("A", [Z, Zh, ZZ], ids=["Z", "Z[1/2]", "ZxZ"])
def test_adjunction_on_wpc_rings(A):
    up = w_upper(A, A.generators, 10)
    low = w_lower(A, 10)
    assert up.same_ring(A)
    assert low.status == "stabilized"
    assert low.order.same_ring(A)


@pytest.mark.parametrize("A", [Z, Zi, Zh, ZZ], ids=["Z", "Z[i]", "Z[1/2]", "ZxZ"])
def test_galois_inequalities(A):
    up = w_upper(A, [A.one, *A.generators], 6)
    low = w_lower(A, 3, max_iters=2)
    assert up.issubring(A)
    assert A.issubring(low.order)


def test_w_lower_idempotent_at_fixed_point():
    for A in (Z, ZZ, Zh):
        res = w_lower(A, 6)
        again = w_lower(res.order, 6)
        assert again.status == "stabilized" and again.order.same_ring(res.order)
        assert again.added == ()


def test_action_examples():
    act = p_ring_action(Z)
    assert act(C(2), (5,)) == (10,)
    assert act(compose(C(2), C(2)), (4,)) == act(C(2), act(C(2), (4,))) == (15,)
    with pytest.raises(NotWpc):
        p_ring_action(Zi)
    with pytest.raises(ActionEscape):
        act(C(2), (half,))


@given(st.integers(-40, 40), st.integers(-40, 40))
def test_action_unit_law(a, b):
    assert p_ring_action(Z)(IvPoly.X(), (a,)) == (a,)
    assert p_ring_action(ZZ)(IvPoly.X(), (a, b)) == (a, b)


@given(small_ivpolys, st.integers(-30, 30), st.integers(-30, 30), st.integers(0, 6))
def test_action_is_rational_evaluation(f, a, b, e):
    """The action agrees with evaluating the monomial form over Q."""
    F = to_rational_poly(f)
    assert p_ring_action(Z)(f, (a,)) == (F(a),)
    assert p_ring_action(ZZ)(f, (a, b)) == (F(a), F(b))
    x = Fraction(a, 2 ** e)
    assert p_ring_action(Zh)(f, (x,)) == (F(x),)


@given(small_ivpolys, small_ivpolys, st.integers(-8, 8))
def test_action_associativity(f, g, a):
    act = p_ring_action(Z)
    assert act(compose(f, g), (a,)) == act(f, act(g, (a,)))


def test_plethory_axioms_degree_24():
    report = verify_plethory_axioms(24, samples=200)
    assert report["verdict"] == "pass"
    assert report["checks"]["associativity"]["passed"] > 50


def test_triple_composition_example():
    c2 = C(2)
    lhs = compose(compose(c2, c2), c2)
    assert lhs == compose(c2, compose(c2, c2))
    assert lhs.degree == 8


def test_finorder_validation():
    with pytest.raises(ValueError):
        FinOrder(2, (((1, 0), (0, 1)), ((0, 0), (-1, 0))), (1, 0), Lattice.standard(2))
    with pytest.raises(ValueError):
        FinOrder(1, (((1,),),), (1,), Lattice.from_generators(1, [(2,)]))
    with pytest.raises(ValueError):
        FinOrder(2, (((1, 0), (0, 1)), ((0, 1), (-1, 0))), (1, 0), Lattice.from_generators(2, [(1, 0), (0, half)]))


@pytest.mark.parametrize("name", FinOrder.PRESETS)
def test_finorder_json_round_trip(name):
    A = FinOrder.preset(name)
    B = FinOrder.from_json(A.to_json())
    assert B == A


def test_finorder_json_rejects():
    with pytest.raises(SchemaError):
        FinOrder.from_json({"rank": 2, "mult_table": [[[1, 0]]]})
    with pytest.raises(SchemaError):
        FinOrder.preset("Q")
