import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from plethys.errors import BudgetExceeded, DegreeExceeded, ParameterMismatch, PrecisionInsufficient, SchemaError
from plethys.exact import MultiRatPoly, RatPoly
from plethys.ivpoly import IvPoly, compose, eval_int
from plethys.witt import (
    EvalHom,
    add_by_expansion,
    eval_hom,
    hom_census,
    legendre,
    mul_by_expansion,
    torsion_argument_check,
    witt_action,
    witt_add,
    witt_mul,
)

C = IvPoly.binomial
X = IvPoly.X()
primes = st.sampled_from([2, 3, 5, 7])


@st.composite
def hom_cases(draw):
    p, k, d = draw(primes), draw(st.integers(1, 3)), draw(st.integers(1, 6))
    a, b = draw(st.integers(0, 10**8)), draw(st.integers(0, 10**8))
    f = IvPoly(draw(st.lists(st.integers(-50, 50), min_size=1, max_size=d + 1)))
    return eval_hom(p, k, d, a), eval_hom(p, k, d, b), f


def test_eval_examples():
    phi = eval_hom(2, 1, 2, 7, precision=4)
    assert int(phi(C(2))) == 1
    for alpha in (0, 5, 1234567):
        phi = eval_hom(3, 2, 4, alpha)
        assert int(phi(X)) == alpha % 9
        assert int(phi(IvPoly.const(-7))) == -7 % 9


def test_sum_of_evaluations_example():
    e3, e5 = eval_hom(2, 3, 2, 3), eval_hom(2, 3, 2, 5)
    direct = witt_add(e3, e5)(C(2))
    expanded = add_by_expansion(e3, e5, C(2))
    assert int(direct) == int(expanded) == 28 % 8 == 4
    assert math.comb(3, 2) + 3 * 5 + math.comb(5, 2) == 28


@given(hom_cases())
def test_identities(case):
    phi, _, f = case
    zero, one = eval_hom(phi.p, phi.k, phi.d, 0), eval_hom(phi.p, phi.k, phi.d, 1)
    assert witt_add(phi, zero) == phi
    assert witt_mul(phi, one) == phi


@given(hom_cases())
def test_ring_structure_soundness(case):
    phi, psi, f = case
    assert witt_add(phi, psi)(f) == add_by_expansion(phi, psi, f)
    assert witt_mul(phi, psi)(f) == mul_by_expansion(phi, psi, f)


@given(hom_cases())
def test_x_map_is_ring_homomorphism(case):
    phi, psi, _ = case
    assert witt_add(phi, psi)(X) == phi(X) + psi(X)
    assert witt_mul(phi, psi)(X) == phi(X) * psi(X)


@given(primes, st.integers(1, 3), st.integers(1, 8), st.integers(-10**6, 10**6), st.integers(-50, 50),
       st.lists(st.integers(-50, 50), min_size=1, max_size=9))
def test_well_defined_modulo_precision(p, k, d, a, t, coeffs):
    f = IvPoly(coeffs[: d + 1])
    M = k + legendre(d, p)
    assert (eval_int(f, a) - eval_int(f, a + t * p ** M)) % p ** k == 0


def test_witt_action_examples():
    phi = eval_hom(2, 1, 4, 5, precision=5)
    assert witt_action(X, phi) == phi
    out = witt_action(C(2), phi)
    assert out.alpha.precision == 4 and out.alpha.residue == 10 and out.d == 2


@given(st.integers(0, 10**6))
def test_witt_action_composition(alpha):
    phi = eval_hom(2, 2, 8, alpha)
    f = g = C(2)
    lhs = witt_action(compose(f, g), phi)
    rhs = witt_action(f, witt_action(g, phi))
    M = min(lhs.alpha.precision, rhs.alpha.precision)
    assert lhs.alpha.residue % 2 ** M == rhs.alpha.residue % 2 ** M
    assert lhs.d == rhs.d == 2
    assert lhs.restriction() == rhs.restriction()


def test_census_2_1_4():
    report = hom_census(2, 1, 4)
    assert report["count"] == 8 and report["stable"] and report["count_doubled"] == 8
    assert report["min_precision"] == 3
    assert report["add_well_defined"] and report["mul_well_defined"] and report["x_map_surjective"]
    for h in report["homs"]:
        a = int(h["alpha"])
        b0, b1, b2 = a & 1, (a >> 1) & 1, (a >> 2) & 1
        assert [int(x) for x in h["restriction"]] == [b0, b1, b0 & b1, b2]


@pytest.mark.parametrize("p,k", [(2, 1), (2, 3), (3, 1), (3, 2), (5, 1)])
def test_census_degree_one(p, k):
    assert hom_census(p, k, 1)["count"] == p ** k


@pytest.mark.parametrize("p,k,d", [(3, 1, 3), (2, 2, 3), (5, 1, 5)])
def test_census_matches_brute_force(p, k, d):
    report = hom_census(p, k, d)
    m = p ** k

    def tuples(upto):
        return {tuple(math.comb(a, n) % m for n in range(1, d + 1)) for a in range(upto)}

    assert report["count"] == len(tuples(report["range"]))
    assert report["count_doubled"] == len(tuples(2 * report["range"]))
    assert report["stable"]


def test_census_budget():
    with pytest.raises(BudgetExceeded):
        hom_census(2, 1, 4, budget=10)


def test_errors():
    with pytest.raises(PrecisionInsufficient):
        eval_hom(2, 3, 4, 1, precision=5)
    with pytest.raises(ParameterMismatch):
        witt_add(eval_hom(2, 1, 2, 1), eval_hom(2, 1, 3, 1))
    with pytest.raises(DegreeExceeded):
        eval_hom(2, 1, 2, 1)(C(3))


@given(hom_cases())
def test_eval_hom_json_round_trip(case):
    phi = case[0]
    assert EvalHom.from_json(phi.to_json()) == phi


def test_eval_hom_json_rejects():
    with pytest.raises(SchemaError):
        EvalHom.from_json({"p": 4, "k": 1, "d": 1, "alpha": {"precision": 2, "residue": "1"}})
    with pytest.raises(SchemaError):
        EvalHom.from_json({"p": 2, "k": 1, "d": 1, "alpha": {"precision": 2, "residue": "1/2"}})


@given(st.integers(0, 5000), primes)
def test_legendre(n, p):
    v, f = 0, math.factorial(n)
    while f % p == 0:
        f //= p
        v += 1
    assert legendre(n, p) == v


def test_torsion_p2():
    r = torsion_argument_check(2)
    assert r["verdict"] == "pass"
    assert r["F_binomial"] == C(2).to_json()
    assert MultiRatPoly.from_json(r["cross_term"]) == MultiRatPoly.var(0, 2) * MultiRatPoly.var(1, 2)
    F = RatPoly([0, Fraction(-1, 2), Fraction(1, 2)])
    assert F.compose(RatPoly([0, 2])) == RatPoly([0, -1, 2])


@pytest.mark.parametrize("p", [2, 3, 5])
def test_torsion_all(p):
    r = torsion_argument_check(p)
    assert r["verdict"] == "pass"
    coeffs = IvPoly.from_json(r["F_binomial"]).coeffs
    assert all(isinstance(c, int) for c in coeffs)
    if p == 3:
        assert IvPoly.from_json(r["F_binomial"]) == IvPoly.from_dict({2: 2, 3: 2})
