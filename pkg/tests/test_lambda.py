import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from plethys.errors import BudgetExceeded, DimensionMismatch, ParameterMismatch, PrecisionInsufficient, SchemaError
from plethys.exact import MultiRatPoly
from plethys.lambda_ring import (
    _specialize,
    LambdaTrunc,
    adams,
    bin_compare_witt,
    bin_fixed_points,
    binomial_embed,
    from_ghost,
    ghost,
    is_adams_fixed,
    lambda_add,
    lambda_mul,
    truncate,
    universal_polys,
)
from plethys.witt import PadicTrunc

from .oracles import complete_homogeneous, log_derivative_ghosts, series_mul

moduli = st.sampled_from([2, 3, 4, 5, 8, 9, 12, 97])
roots = st.lists(st.integers(-6, 6), max_size=4)


@st.composite
def series(draw, N=None, m=None):
    m = draw(moduli) if m is None else m
    N = draw(st.integers(0, 8)) if N is None else N
    return LambdaTrunc(m, N, draw(st.lists(st.integers(0, m - 1), min_size=N, max_size=N)))


@st.composite
def series_pair(draw):
    m, N = draw(moduli), draw(st.integers(0, 8))
    return draw(series(N, m)), draw(series(N, m))


def h(xs, m, N):
    return LambdaTrunc(m, N, complete_homogeneous(xs, N))


@pytest.mark.parametrize("N", range(0, 9))
def test_universal_tables_integral(N):
    t = universal_polys(N)
    polys = list(t.sum) + list(t.product) + [q for v in t.adams.values() for q in v]
    assert all(q.has_integer_coefficients() for q in polys)
    assert len(t.sum) == len(t.product) == N
    assert all(len(t.adams[n]) == N // n for n in range(1, N + 1))


def test_universal_table_budget():
    with pytest.raises(BudgetExceeded):
        universal_polys(17)


def test_sum_table_first_coefficient():
    t = universal_polys(3)
    a1, b1 = MultiRatPoly.var(0, 6), MultiRatPoly.var(3, 6)
    assert t.sum[0] == a1 + b1


@pytest.mark.parametrize("N", range(1, 9))
def test_ghost_homomorphism_symbolic(N):
    t = universal_polys(N)
    a = [MultiRatPoly.var(i, 2 * N) for i in range(N)]
    b = [MultiRatPoly.var(N + i, 2 * N) for i in range(N)]
    ga, gb = ghost(a), ghost(b)
    assert ghost(t.sum) == [x + y for x, y in zip(ga, gb)]
    assert ghost(t.product) == [x * y for x, y in zip(ga, gb)]
    for n in range(2, N + 1):
        assert ghost(t.adams[n]) == [ga[n * k - 1] for k in range(1, N // n + 1)]


def test_ghost_examples():
    assert ghost(LambdaTrunc.one(101, 6)) == [1] * 6
    assert ghost(LambdaTrunc.zero(7, 5)) == [0] * 5


def test_ghost_of_linear_series():
    """Under the complete-homogeneous convention, 1 + a T has ghosts (-1)^(k+1) a^k."""
    N = 6
    a1 = MultiRatPoly.var(0, 1)
    g = ghost([a1] + [MultiRatPoly.zero(1)] * (N - 1))
    assert g == [a1 ** k * (-1) ** (k + 1) for k in range(1, N + 1)]
    for a in (-3, 2, 5):
        assert ghost([a] + [0] * (N - 1)) == log_derivative_ghosts([a] + [0] * (N - 1), N)


@given(st.lists(st.fractions(max_denominator=9), max_size=7))
def test_ghost_matches_log_derivative(a):
    assert ghost(a) == log_derivative_ghosts(a, len(a))
    assert from_ghost(ghost(a)) == [Fraction(x) for x in a]


@given(roots, st.integers(1, 8))
def test_ghost_is_power_sum(xs, N):
    assert ghost(complete_homogeneous(xs, N)) == [sum(x ** k for x in xs) for k in range(1, N + 1)]


def test_adams_examples():
    for N in range(1, 9):
        x = LambdaTrunc.one(13, N)
        for n in range(1, N + 1):
            assert adams(n, x) == LambdaTrunc.one(13, N // n)
    x = LambdaTrunc(11, 5, [3, 1, 4, 1, 5])
    assert adams(1, x) is x
    t = universal_polys(4)
    a1 = MultiRatPoly.var(0, 8)
    assert t.adams[2][0] == 2 * MultiRatPoly.var(1, 8) - a1 * a1
    assert adams(2, LambdaTrunc(101, 4, [7, 0, 0, 0])).coeffs[0] == -49 % 101


@given(series_pair())
def test_sum_is_series_product(pair):
    x, y = pair
    expected = [c % x.m for c in series_mul(x.coeffs, y.coeffs, x.N)]
    assert list(lambda_add(x, y).coeffs) == expected
    t = universal_polys(x.N)
    point = list(x.coeffs) + list(y.coeffs)
    assert [_specialize(q, point, x.m) for q in t.sum] == expected


@given(roots, roots, moduli, st.integers(1, 7))
def test_product_on_roots(xs, ys, m, N):
    assert lambda_mul(h(xs, m, N), h(ys, m, N)) == h([x * y for x in xs for y in ys], m, N)
    assert lambda_add(h(xs, m, N), h(ys, m, N)) == h(xs + ys, m, N)


@given(roots, moduli, st.integers(1, 8), st.integers(1, 8))
def test_adams_on_roots(xs, m, N, n):
    assert adams(n, h(xs, m, N)) == h([x ** n for x in xs], m, N // n)


@given(series(), st.integers(1, 4), st.integers(1, 4))
def test_adams_multiplicativity(x, n, k):
    if n * k <= max(x.N, 1):
        assert adams(n, adams(k, x)) == adams(n * k, x)


@given(series_pair())
def test_ring_laws(pair):
    x, y = pair
    assert lambda_add(x, y) == lambda_add(y, x)
    assert lambda_mul(x, y) == lambda_mul(y, x)
    assert lambda_mul(x, LambdaTrunc.one(x.m, x.N)) == x
    assert lambda_add(x, LambdaTrunc.zero(x.m, x.N)) == x


def test_binomial_embed_examples():
    assert binomial_embed(1, 7, 5) == LambdaTrunc.one(7, 5)
    assert binomial_embed(0, 7, 5) == LambdaTrunc.zero(7, 5)
    assert binomial_embed(2, 5, 3).coeffs == (2, 3, 4)


def test_binomial_embed_padic():
    assert binomial_embed(PadicTrunc(2, 6, 13), 8, 4) == binomial_embed(13, 8, 4)
    with pytest.raises(PrecisionInsufficient):
        binomial_embed(PadicTrunc(2, 3, 13), 8, 4)
    with pytest.raises(PrecisionInsufficient):
        binomial_embed(PadicTrunc(3, 9, 13), 8, 4)


@given(st.integers(-200, 200), st.integers(-200, 200), moduli, st.integers(1, 7))
def test_embedded_set_closure(a, b, m, N):
    ea, eb = binomial_embed(a, m, N), binomial_embed(b, m, N)
    assert lambda_add(ea, eb) == binomial_embed(a + b, m, N)
    assert lambda_mul(ea, eb) == binomial_embed(a * b, m, N)


@pytest.mark.parametrize("m,N", [(2, 1), (2, 4), (2, 6), (3, 3), (4, 3), (5, 3)])
def test_fixed_set_contains_embedded(m, N):
    res = bin_fixed_points(m, N)
    assert res.contained
    assert tuple([0] * N) in res.fixed and tuple([1] * N) in res.fixed
    doc = res.to_json()
    assert doc["fixed_count"] == len(res.fixed) and doc["embedded_count"] == len(res.embedded)


def test_fixed_set_example_2_4():
    res = bin_fixed_points(2, 4, sweep=8)
    assert res.contained
    fixed = {c for c in itertools.product(range(2), repeat=4)
             if all(adams(n, LambdaTrunc(2, 4, c)) == truncate(LambdaTrunc(2, 4, c), 4 // n) for n in (2, 3, 4))}
    assert res.fixed == fixed
    assert len(res.embedded) == 8


@given(series())
def test_unit_series_fixed(x):
    assert is_adams_fixed(LambdaTrunc.zero(x.m, x.N))
    assert is_adams_fixed(LambdaTrunc.one(x.m, x.N))


def test_fixed_points_budget():
    with pytest.raises(BudgetExceeded):
        bin_fixed_points(5, 8, budget=1000)


def test_bin_compare_2_4():
    r = bin_compare_witt(2, 4, sweep=8)
    assert r["verdict"] == "pass"
    assert r["bijection"] and r["additive"] and r["multiplicative"] and r["identities"]
    assert r["pairs_checked"] == 64
    assert bin_compare_witt(3, 3)["verdict"] == "pass"


def test_validation():
    with pytest.raises(DimensionMismatch):
        LambdaTrunc(5, 3, [1, 2])
    with pytest.raises(ValueError):
        LambdaTrunc(1, 0, [])
    with pytest.raises(ParameterMismatch):
        lambda_add(LambdaTrunc(5, 2, [1, 2]), LambdaTrunc(7, 2, [1, 2]))


@given(series())
def test_json_round_trip(x):
    assert LambdaTrunc.from_json(x.to_json()) == x
    assert truncate(x, 0) == LambdaTrunc(x.m, 0, [])


@pytest.mark.parametrize("bad", [
    {"m": 1, "N": 1, "coeffs": ["0"]},
    {"m": 5, "N": 2, "coeffs": ["0"]},
    {"m": 5, "N": 1, "coeffs": ["1/2"]},
    {"m": 5, "coeffs": []},
])
def test_json_rejects(bad):
    with pytest.raises(SchemaError):
        LambdaTrunc.from_json(bad)
