"""Truncated big Witt vectors 1 + a_1 T + ... + a_N T^N over Z/m, Adams operations, and Bin.

Convention: ``x = prod_i (1 - x_i T)^(-1)``, so the coefficients are the
complete homogeneous symmetric functions ``a_k = h_k`` and the ghost
components are the power sums ``g_k = p_k``.  The binomial element attached
to ``c`` is ``(1 - T)^(-c)`` with coefficients ``C(c + n - 1, n)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from . import kernels
from .errors import BudgetExceeded, DimensionMismatch, ParameterMismatch, PrecisionInsufficient, SchemaError
from .exact import MultiRatPoly, parse_int
from .ivpoly import IvPoly, compose, eval_int
from .witt import PadicTrunc, default_budget, eval_hom, legendre, witt_add, witt_mul

MAX_TABLE_LENGTH = 16


@dataclass(frozen=True)
class LambdaTrunc:
    """``1 + a_1 T + ... + a_N T^N`` with coefficients in Z/m."""

    m: int
    N: int
    coeffs: tuple

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("modulus must be at least 2")
        coeffs = tuple(int(c) % self.m for c in self.coeffs)
        if len(coeffs) != self.N:
            raise DimensionMismatch(f"expected {self.N} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, m: int, N: int) -> "LambdaTrunc":
        """The series 1, additive identity of the Lambda-ring."""
        return cls(m, N, (0,) * N)

    @classmethod
    def one(cls, m: int, N: int) -> "LambdaTrunc":
        """``(1 - T)^(-1)``, multiplicative identity of the Lambda-ring."""
        return cls(m, N, (1,) * N)

    def __add__(self, other):
        return lambda_add(self, other)

    def __mul__(self, other):
        return lambda_mul(self, other)

    def to_json(self) -> dict:
        return {"m": self.m, "N": self.N, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "LambdaTrunc":
        if not isinstance(obj, Mapping):
            raise SchemaError("LambdaTrunc: expected an object", "")
        m, N, coeffs = obj.get("m"), obj.get("N"), obj.get("coeffs")
        if not isinstance(m, int) or m < 2:
            raise SchemaError("LambdaTrunc: 'm' must be an integer >= 2", "m")
        if not isinstance(N, int) or N < 0:
            raise SchemaError("LambdaTrunc: 'N' must be a non-negative integer", "N")
        if not isinstance(coeffs, list) or len(coeffs) != N:
            raise SchemaError(f"LambdaTrunc: 'coeffs' must list {N} entries", "coeffs")
        return cls(m, N, [parse_int(c, f"coeffs[{i}]") for i, c in enumerate(coeffs)])


def _div(v, k):
    if isinstance(v, MultiRatPoly):
        return v * Fraction(1, k)
    return Fraction(v) / k


def ghost(x) -> list:
    """Ghost components ``g_1..g_N`` by Newton's identities ``g_k = k a_k - sum_{i<k} g_i a_{k-i}``.

    ``x`` is a LambdaTrunc or any sequence of ring elements (ints, Fractions,
    MultiRatPoly).
    """
    a = list(x.coeffs) if isinstance(x, LambdaTrunc) else list(x)
    g = []
    for k in range(1, len(a) + 1):
        v = k * a[k - 1]
        for i in range(1, k):
            v = v - g[i - 1] * a[k - i - 1]
        g.append(v)
    return g


def from_ghost(g: Sequence) -> list:
    """Inverse of :func:`ghost` over a Q-algebra."""
    a = []
    for k in range(1, len(g) + 1):
        v = g[k - 1]
        for i in range(1, k):
            v = v + g[i - 1] * a[k - i - 1]
        a.append(_div(v, k))
    return a


@dataclass(frozen=True)
class UniversalTables:
    """Integral polynomials in ``a_1..a_N, b_1..b_N`` (variables ``0..N-1`` and ``N..2N-1``)."""

    N: int
    sum: tuple
    product: tuple
    adams: dict

    def compiled(self, poly: MultiRatPoly):
        return _compile(poly)


@lru_cache(maxsize=None)
def _compile(poly: MultiRatPoly):
    flat = [e for exp, _ in poly.terms for e in exp]
    coefs = [c.numerator for _, c in poly.terms]
    return flat, poly.arity, coefs


@lru_cache(maxsize=None)
def universal_polys(N: int) -> UniversalTables:
    """Lambda-sum, Lambda-product and Adams tables of length ``N``, checked integral."""
    if N < 0 or N > MAX_TABLE_LENGTH:
        raise BudgetExceeded(f"table length {N} outside 0..{MAX_TABLE_LENGTH}")
    n2 = 2 * N
    a = [MultiRatPoly.var(i, n2) for i in range(N)] if N else []
    b = [MultiRatPoly.var(N + i, n2) for i in range(N)] if N else []
    sums = []
    for k in range(1, N + 1):
        v = a[k - 1] + b[k - 1]
        for i in range(1, k):
            v = v + a[i - 1] * b[k - i - 1]
        sums.append(v)
    ga, gb = ghost(a), ghost(b)
    product = from_ghost([x * y for x, y in zip(ga, gb)])
    adams = {1: tuple(a)}
    for n in range(2, N + 1):
        adams[n] = tuple(from_ghost([ga[n * k - 1] for k in range(1, N // n + 1)]))
    for name, polys in (("sum", sums), ("product", product), *((f"adams {n}", p) for n, p in adams.items())):
        for k, poly in enumerate(polys, 1):
            if not poly.has_integer_coefficients():
                raise ArithmeticError(f"{name} coefficient {k} is not integral")
    return UniversalTables(N, tuple(sums), tuple(product), adams)


def _specialize(poly: MultiRatPoly, point, m: int) -> int:
    flat, nvars, coefs = _compile(poly)
    return kernels.poly_eval_mod(flat, nvars, coefs, point, m)


def _check_pair(x: LambdaTrunc, y: LambdaTrunc):
    if (x.m, x.N) != (y.m, y.N):
        raise ParameterMismatch(f"(m, N) = {(x.m, x.N)} vs {(y.m, y.N)}")


def lambda_add(x: LambdaTrunc, y: LambdaTrunc) -> LambdaTrunc:
    """Lambda-ring sum: the power-series product."""
    _check_pair(x, y)
    a, b = (1,) + x.coeffs, (1,) + y.coeffs
    return LambdaTrunc(x.m, x.N, [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(1, x.N + 1)])


def lambda_mul(x: LambdaTrunc, y: LambdaTrunc) -> LambdaTrunc:
    """Lambda-ring product: ghost-wise multiplication, via the universal table."""
    _check_pair(x, y)
    tables = universal_polys(x.N)
    point = list(x.coeffs) + list(y.coeffs)
    return LambdaTrunc(x.m, x.N, [_specialize(p, point, x.m) for p in tables.product])


def truncate(x: LambdaTrunc, length: int) -> LambdaTrunc:
    return LambdaTrunc(x.m, length, x.coeffs[:length])


def adams(n: int, x: LambdaTrunc) -> LambdaTrunc:
    """Adams operation psi_n, characterized by ``g_k(psi_n x) = g_{nk}(x)``; result has length ``N // n``."""
    if n < 1:
        raise ValueError("Adams index must be positive")
    if n == 1:
        return x
    tables = universal_polys(x.N)
    point = list(x.coeffs) + [0] * x.N
    return LambdaTrunc(x.m, x.N // n, [_specialize(p, point, x.m) for p in tables.adams.get(n, ())])


@lru_cache(maxsize=None)
def _shifted_binomial(n: int) -> IvPoly:
    """``C(X + n - 1, n)`` as an element of Int(Z)."""
    return compose(IvPoly.binomial(n), IvPoly((n - 1, 1)))


def _prime_power(m: int):
    for p in range(2, m + 1):
        if m % p == 0:
            k, r = 0, m
            while r % p == 0:
                r //= p
                k += 1
            return (p, k) if r == 1 else None
    return None


def binomial_embed(c, m: int, N: int) -> LambdaTrunc:
    """``(1 - T)^(-c)`` truncated at ``T^N``, coefficients ``C(c + n - 1, n) mod m``."""
    if isinstance(c, PadicTrunc):
        pk = _prime_power(m)
        if pk is None or pk[0] != c.p:
            raise PrecisionInsufficient(f"modulus {m} is not a power of {c.p}")
        need = pk[1] + legendre(N, c.p)
        if c.precision < need:
            raise PrecisionInsufficient(f"precision {c.precision} < {need} needed for N = {N}")
        c = c.residue
    return LambdaTrunc(m, N, [eval_int(_shifted_binomial(n), c) for n in range(1, N + 1)])


def is_adams_fixed(x: LambdaTrunc) -> bool:
    return all(adams(n, x) == truncate(x, x.N // n) for n in range(2, x.N + 1))


@dataclass(frozen=True)
class BinFixedResult:
    m: int
    N: int
    fixed: frozenset
    embedded: frozenset
    sweep: int

    @property
    def contained(self) -> bool:
        return self.embedded <= self.fixed

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "N": self.N,
            "sweep": self.sweep,
            "fixed_count": len(self.fixed),
            "embedded_count": len(self.embedded),
            "embedded_contained": self.contained,
            "fixed": [LambdaTrunc(self.m, self.N, c).to_json()["coeffs"] for c in sorted(self.fixed)],
            "embedded": [LambdaTrunc(self.m, self.N, c).to_json()["coeffs"] for c in sorted(self.embedded)],
        }


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def bin_fixed_points(m: int, N: int, sweep: int | None = None, budget: int | None = None) -> BinFixedResult:
    """All series fixed by every truncated Adams operation, and the binomial elements among them.

    Adams-fixedness at finite N is only a necessary condition for lying in
    Bin, so the two cardinalities are reported side by side.
    """
    budget = default_budget() if budget is None else budget
    if m ** N > budget:
        raise BudgetExceeded(f"{m}^{N} series exceed budget {budget}")
    if sweep is None:
        sweep = m * _factorial(N)
    universal_polys(N)
    fixed = frozenset(
        c for c in itertools.product(range(m), repeat=N) if is_adams_fixed(LambdaTrunc(m, N, c))
    )
    embedded = frozenset(binomial_embed(c, m, N).coeffs for c in range(sweep))
    return BinFixedResult(m, N, fixed, embedded, sweep)


def bin_compare_witt(p: int, N: int, sweep: int | None = None, budget: int | None = None) -> dict:
    """Match ``c -> (1 - T)^(-c) mod p`` with ``c -> eval_c`` and compare their ring operations."""
    budget = default_budget() if budget is None else budget
    precision = 1 + legendre(N, p)
    if sweep is None:
        sweep = p ** precision
    if sweep * sweep > budget:
        raise BudgetExceeded(f"{sweep}^2 pairs exceed budget {budget}")
    fixed = bin_fixed_points(p, N, sweep=sweep, budget=budget)
    series = {c: binomial_embed(c, p, N) for c in range(sweep)}
    homs = {c: eval_hom(p, 1, N, c, precision) for c in range(sweep)}
    corr = {}
    well_defined = True
    for c in range(sweep):
        key = series[c].coeffs
        tup = homs[c].restriction()
        if corr.setdefault(key, tup) != tup:
            well_defined = False
    injective = len(set(corr.values())) == len(corr)
    add_ok = mul_ok = True
    pairs = 0
    for a in range(sweep):
        for b in range(sweep):
            pairs += 1
            s = lambda_add(series[a], series[b])
            t = lambda_mul(series[a], series[b])
            h_add = witt_add(homs[a], homs[b]).restriction()
            h_mul = witt_mul(homs[a], homs[b]).restriction()
            add_ok &= s == binomial_embed(a + b, p, N) and corr.get(s.coeffs) == h_add
            mul_ok &= t == binomial_embed(a * b, p, N) and corr.get(t.coeffs) == h_mul
    zero_ok = series[0] == LambdaTrunc.zero(p, N) and homs[0].alpha.residue == 0
    one_ok = series[1 % sweep] == LambdaTrunc.one(p, N) if sweep > 1 else False
    verdict = all((well_defined, injective, add_ok, mul_ok, zero_ok, one_ok, fixed.contained))
    return {
        "p": p,
        "N": N,
        "sweep": sweep,
        "precision": precision,
        "classes": len(corr),
        "fixed_count": len(fixed.fixed),
        "embedded_count": len(fixed.embedded),
        "embedded_contained": fixed.contained,
        "bijection": well_defined and injective,
        "additive": add_ok,
        "multiplicative": mul_ok,
        "identities": zero_ok and one_ok,
        "pairs_checked": pairs,
        "verdict": "pass" if verdict else "fail",
    }
