"""Co-operations on Int(Z) and its tensor powers.

The n-fold tensor power of Int(Z) is held concretely as Int(Z^n) in the
product-binomial basis ``prod_i C(X_i, d_i)``.  Every co-operation is computed
by evaluating on a finite grid and taking multivariate forward differences;
closed forms such as Vandermonde's identity are checked, never assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from . import kernels
from .errors import DegreeExceeded, DimensionMismatch, NotIntegerValued, SchemaError, ThetaObstruction
from .exact import MultiRatPoly, RatPoly, parse_int
from .ivpoly import DEFAULT_COMPOSE_CAP, IvPoly, eval_int, mul, to_rational_poly

DEFAULT_VAR_CAP = 16
DEFAULT_ARITY_CAP = 6


@dataclass(frozen=True)
class TensorIvPoly:
    """Element of Int(Z)^{(x)n} = Int(Z^n): sum of ``c * prod_i C(X_i, d_i)``."""

    arity: int
    coeffs: tuple = ()

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("arity must be positive")
        raw = self.coeffs.items() if isinstance(self.coeffs, Mapping) else self.coeffs
        acc: dict = {}
        for deg, c in raw:
            deg = tuple(int(x) for x in deg)
            if len(deg) != self.arity:
                raise DimensionMismatch(f"degree tuple {deg} does not match arity {self.arity}")
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ThetaObstruction(f"non-integral coefficient {c} at {deg}")
                c = c.numerator
            acc[deg] = acc.get(deg, 0) + int(c)
        object.__setattr__(self, "coeffs", tuple(sorted((d, c) for d, c in acc.items() if c)))

    @classmethod
    def from_ivpoly(cls, f: IvPoly) -> "TensorIvPoly":
        return cls(1, {(n,): c for n, c in f.support().items()})

    @classmethod
    def const(cls, arity: int, c: int) -> "TensorIvPoly":
        return cls(arity, {(0,) * arity: c})

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def degrees(self) -> tuple:
        out = [0] * self.arity
        for deg, _ in self.coeffs:
            for i, d in enumerate(deg):
                out[i] = max(out[i], d)
        return tuple(out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_ivpoly(self) -> IvPoly:
        if self.arity != 1:
            raise DimensionMismatch("only arity-1 tensors convert to IvPoly")
        return IvPoly.from_dict({d[0]: c for d, c in self.coeffs})

    def __call__(self, *point) -> int:
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        if len(point) != self.arity:
            raise DimensionMismatch(f"expected {self.arity} coordinates")
        degs = self.degrees()
        rows = [kernels.binomial_row(a, d) for a, d in zip(point, degs)]
        total = 0
        for deg, c in self.coeffs:
            term = c
            for row, d in zip(rows, deg):
                term *= row[d]
                if not term:
                    break
            total += term
        return total

    def to_multi_rat_poly(self) -> MultiRatPoly:
        out = MultiRatPoly.zero(self.arity)
        for deg, c in self.coeffs:
            term = MultiRatPoly.const(self.arity, c)
            for i, d in enumerate(deg):
                if d:
                    term = term * MultiRatPoly.from_ratpoly(_binomial_ratpoly(d), self.arity, i)
            out = out + term
        return out

    def __add__(self, other):
        if not isinstance(other, TensorIvPoly):
            return NotImplemented
        if other.arity != self.arity:
            raise DimensionMismatch(f"arity {self.arity} vs {other.arity}")
        return TensorIvPoly(self.arity, self.coeffs + other.coeffs)

    def __neg__(self):
        return TensorIvPoly(self.arity, tuple((d, -c) for d, c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "TensorIvPoly":
        return TensorIvPoly(self.arity, tuple((d, c * k) for d, c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, TensorIvPoly):
            return NotImplemented
        if other.arity != self.arity:
            raise DimensionMismatch(f"arity {self.arity} vs {other.arity}")
        if self.is_zero() or other.is_zero():
            return TensorIvPoly(self.arity)
        degs = tuple(a + b for a, b in zip(self.degrees(), other.degrees()))
        return expand_grid(lambda pt: self(pt) * other(pt), degs)

    __rmul__ = __mul__

    def tensor(self, other: "TensorIvPoly") -> "TensorIvPoly":
        """Outer product: variables of ``other`` are appended after ours."""
        out = {}
        for d1, c1 in self.coeffs:
            for d2, c2 in other.coeffs:
                out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
        return TensorIvPoly(self.arity + other.arity, out)

    def permute(self, perm: Sequence[int]) -> "TensorIvPoly":
        """Reorder factors: factor ``i`` of the result is factor ``perm[i]`` of self."""
        if sorted(perm) != list(range(self.arity)):
            raise ValueError(f"{perm} is not a permutation of {self.arity} factors")
        return TensorIvPoly(self.arity, tuple((tuple(d[p] for p in perm), c) for d, c in self.coeffs))

    def apply_factor(self, k: int, op: Callable[[IvPoly], "TensorIvPoly | IvPoly | int"]) -> "TensorIvPoly":
        """Apply a ring map ``Int(Z) -> Int(Z)^{(x)m}`` to factor ``k`` (``m = 0`` for scalars)."""
        cache = {}
        out: dict = {}
        for deg, c in self.coeffs:
            d = deg[k]
            if d not in cache:
                img = op(IvPoly.binomial(d))
                if isinstance(img, int):
                    img = {(): img}
                elif isinstance(img, IvPoly):
                    img = {(n,): v for n, v in img.support().items()}
                else:
                    img = img.as_dict()
                cache[d] = img
            for e, v in cache[d].items():
                key = deg[:k] + e + deg[k + 1:]
                out[key] = out.get(key, 0) + c * v
        widths = {len(e) for img in cache.values() for e in img}
        width = widths.pop() if widths else 1
        if widths:
            raise DimensionMismatch("operator returned mixed arities")
        arity = self.arity - 1 + width
        if arity == 0:
            return TensorIvPoly(1, {(0,): out.get((), 0)})
        return TensorIvPoly(arity, out)

    def contract(self, i: int, j: int) -> "TensorIvPoly":
        """Multiply factor ``j`` into factor ``i`` (identify ``X_j`` with ``X_i``)."""
        if i == j:
            raise ValueError("need two distinct factors")
        out: dict = {}
        for deg, c in self.coeffs:
            prod = _basis_product(deg[i], deg[j])
            rest = list(deg)
            for n, v in prod.items():
                rest[i] = n
                key = tuple(x for t, x in enumerate(rest) if t != j)
                out[key] = out.get(key, 0) + c * v
        return TensorIvPoly(self.arity - 1, out) if self.arity > 1 else self

    def to_json(self) -> dict:
        return {"arity": self.arity, "coeffs": [{"deg": list(d), "c": str(c)} for d, c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "TensorIvPoly":
        if not isinstance(obj, Mapping):
            raise SchemaError("TensorIvPoly: expected an object", "")
        arity = obj.get("arity")
        if not isinstance(arity, int) or isinstance(arity, bool) or arity < 1:
            raise SchemaError("TensorIvPoly: 'arity' must be a positive integer", "arity")
        items = obj.get("coeffs")
        if not isinstance(items, list):
            raise SchemaError("TensorIvPoly: 'coeffs' must be a list", "coeffs")
        out = {}
        for k, t in enumerate(items):
            if not isinstance(t, Mapping) or not isinstance(t.get("deg"), list):
                raise SchemaError(f"coeffs[{k}]: expected {{'deg': [...], 'c': ...}}", f"coeffs[{k}]")
            deg = t["deg"]
            if len(deg) != arity or not all(isinstance(x, int) and x >= 0 for x in deg):
                raise SchemaError(f"coeffs[{k}].deg: need {arity} non-negative integers", f"coeffs[{k}].deg")
            out[tuple(deg)] = out.get(tuple(deg), 0) + parse_int(t.get("c"), f"coeffs[{k}].c")
        return cls(arity, out)

    def __repr__(self):
        if not self.coeffs:
            return f"TensorIvPoly[{self.arity}](0)"
        parts = []
        for d, c in self.coeffs:
            parts.append(f"{c}*" + "(x)".join(f"C(X{i},{n})" for i, n in enumerate(d)))
        return f"TensorIvPoly[{self.arity}](" + " + ".join(parts) + ")"


@lru_cache(maxsize=None)
def _binomial_ratpoly(n: int) -> RatPoly:
    return to_rational_poly(IvPoly.binomial(n))


@lru_cache(maxsize=4096)
def _basis_product(a: int, b: int) -> dict:
    return mul(IvPoly.binomial(a), IvPoly.binomial(b)).support()


def _grid_shape(degs):
    return tuple(d + 1 for d in degs)


def expand_grid(func: Callable[[tuple], object], degs: Sequence[int]) -> TensorIvPoly:
    """Product-binomial expansion of the polynomial whose values on ``prod {0..deg_i}`` are ``func``.

    ``func`` must be exact (int or Fraction).  A non-integral coefficient raises
    ThetaObstruction.
    """
    shape = _grid_shape(degs)
    pts = list(itertools.product(*(range(s) for s in shape)))
    flat = [func(p) for p in pts]
    diffs = kernels.grid_forward_differences(flat, shape)
    out = {}
    for p, c in zip(pts, diffs):
        if c:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ThetaObstruction(f"coefficient {c} at degree {p}")
                c = c.numerator
            out[p] = c
    return TensorIvPoly(len(shape), out)


def coadd(f: IvPoly) -> TensorIvPoly:
    """Co-addition: the expansion of ``f(X + Y)``."""
    d = f.degree
    if d <= 0:
        return TensorIvPoly.const(2, f.coeffs[0] if f.coeffs else 0)
    if 2 * d > DEFAULT_COMPOSE_CAP:
        raise DegreeExceeded(f"degree {d} exceeds co-addition cap")
    vals = f.values(2 * d + 1)
    return expand_grid(lambda p: vals[p[0] + p[1]], (d, d))


def comul(f: IvPoly) -> TensorIvPoly:
    """Co-multiplication: the expansion of ``f(XY)``."""
    d = f.degree
    if d <= 0:
        return TensorIvPoly.const(2, f.coeffs[0] if f.coeffs else 0)
    if d > DEFAULT_COMPOSE_CAP:
        raise DegreeExceeded(f"degree {d} exceeds co-multiplication cap")
    vals = f.values(d * d + 1)
    return expand_grid(lambda p: vals[p[0] * p[1]], (d, d))


def cozero(f: IvPoly) -> int:
    return f(0)


def counit(f: IvPoly) -> int:
    return f(1)


def coinv(f: IvPoly) -> IvPoly:
    """Co-additive inverse: the expansion of ``f(-X)``."""
    if f.degree <= 0:
        return f
    return IvPoly(kernels.forward_differences([f(-k) for k in range(f.degree + 1)]))


def colinear(a: int) -> Callable[[IvPoly], int]:
    """The co-linear structure: ``a`` goes to the evaluation functional at ``a``."""

    def evaluate(f: IvPoly) -> int:
        return eval_int(f, a)

    evaluate.point = a
    return evaluate


def substitute_poly(
    f: IvPoly, P: MultiRatPoly, var_cap: int = DEFAULT_VAR_CAP, arity_cap: int = DEFAULT_ARITY_CAP
) -> TensorIvPoly:
    """Expansion of ``f(P(X_1, ..., X_n))`` for an integer polynomial ``P``."""
    if not P.has_integer_coefficients():
        raise ValueError("substitute_poly needs an integer-coefficient polynomial")
    if P.arity > arity_cap:
        raise DegreeExceeded(f"arity {P.arity} exceeds cap {arity_cap}")
    df = max(f.degree, 0)
    degs = tuple(df * e for e in P.degrees())
    if any(d > var_cap for d in degs):
        raise DegreeExceeded(f"per-variable degrees {degs} exceed cap {var_cap}")
    terms = [(exp, c.numerator) for exp, c in P.terms]
    memo = {}

    def value(pt):
        x = 0
        for exp, c in terms:
            t = c
            for a, e in zip(pt, exp):
                if e:
                    t *= a ** e
            x += t
        if x not in memo:
            memo[x] = f(x)
        return memo[x]

    return expand_grid(value, degs)


def _colex_points(shape):
    for p in itertools.product(*(range(s) for s in reversed(shape))):
        yield tuple(reversed(p))


def int_zn_member(f: MultiRatPoly, var_cap: int = DEFAULT_VAR_CAP) -> TensorIvPoly:
    """Product-binomial expansion of ``f`` if it maps Z^n into Z.

    Raises NotIntegerValued with the first grid point (first coordinate varying
    fastest) where ``f`` takes a non-integral value.
    """
    degs = f.degrees()
    if any(d > var_cap for d in degs):
        raise DegreeExceeded(f"per-variable degrees {degs} exceed cap {var_cap}")
    try:
        return expand_grid(f.eval_int_point, degs)
    except ThetaObstruction:
        for p in _colex_points(_grid_shape(degs)):
            v = f.eval_int_point(p)
            if v.denominator != 1:
                raise NotIntegerValued(p, v) from None
        raise


def hom_apply(T: TensorIvPoly, phis: Sequence[Callable[[IvPoly], object]]):
    """``sum_i c_i prod_j phi_j(C(X, d_ij))``: the value of ``(phi_1 (x) ... (x) phi_n)(T)``."""
    if len(phis) != T.arity:
        raise DimensionMismatch(f"{len(phis)} functionals for arity {T.arity}")
    caches = [dict() for _ in phis]
    total = None
    for deg, c in T.coeffs:
        term = None
        for j, d in enumerate(deg):
            if d not in caches[j]:
                caches[j][d] = phis[j](IvPoly.binomial(d))
            v = caches[j][d]
            term = v if term is None else term * v
        term = term * c
        total = term if total is None else total + term
    if total is None:
        return phis[0](IvPoly())
    return total


def hom_add(phi, psi):
    """Sum of two homomorphisms ``Int(Z) -> A`` computed through co-addition."""
    return lambda f: hom_apply(coadd(f), (phi, psi))


def hom_mul(phi, psi):
    """Product of two homomorphisms computed through co-multiplication."""
    return lambda f: hom_apply(comul(f), (phi, psi))


def hom_polynomial(P: MultiRatPoly, phis):
    """``P(phi_1, ..., phi_n)`` for an integer polynomial ``P`` of arity ``len(phis)``."""
    return lambda f: hom_apply(substitute_poly(f, P), tuple(phis))


def theta_check(n: int, d: int, var_cap: int = DEFAULT_VAR_CAP) -> dict:
    """Check that every integer-valued function on ``{0..d}^n`` extends to an integer
    product-binomial expansion, and cross-check each expansion against an
    independent Lagrange interpolant on the doubled grid ``{0..2d}^n``."""
    if n < 2 or d < 1:
        raise ValueError("theta_check needs n >= 2 and d >= 1")
    if n * d > var_cap * 2 or d > var_cap:
        raise DegreeExceeded(f"n*d = {n * d} exceeds cap")
    shape = (d + 1,) * n
    big = (2 * d + 1,) * n
    grid = list(itertools.product(range(d + 1), repeat=n))
    big_pts = list(itertools.product(range(2 * d + 1), repeat=n))
    lagrange = [[_lagrange(j, x, d) for x in range(2 * d + 1)] for j in range(d + 1)]
    report = {
        "verdict": "pass",
        "arity": n,
        "degree": d,
        "dimension": len(grid),
        "checked": 0,
        "oracle_points": len(big_pts),
        "counterexample": None,
    }
    for q in grid:
        indicator = [Fraction(int(p == q)) for p in grid]
        diffs = kernels.grid_forward_differences(indicator, shape)
        bad = next((c for c in diffs if c.denominator != 1), None)
        if bad is not None:
            report.update(verdict="fail", counterexample={"basis_point": list(q), "coefficient": str(bad)})
            return report
        coeffs = [int(c) for c in diffs]
        padded = _pad_grid(coeffs, shape, big)
        values = kernels.grid_newton_values(padded, big)
        for x, v in zip(big_pts, values):
            oracle = Fraction(1)
            for qi, xi in zip(q, x):
                oracle *= lagrange[qi][xi]
            if oracle.denominator != 1 or oracle != v:
                report.update(
                    verdict="fail",
                    counterexample={"basis_point": list(q), "point": list(x), "oracle": str(oracle), "value": str(v)},
                )
                return report
        report["checked"] += 1
    return report


def _lagrange(j, x, d):
    num = Fraction(1)
    for m in range(d + 1):
        if m != j:
            num *= Fraction(x - m, j - m)
    return num


def _pad_grid(flat, shape, big):
    out = [0] * _prod(big)
    strides_small = _strides(shape)
    strides_big = _strides(big)
    for idx, v in enumerate(flat):
        if v:
            pos = 0
            rem = idx
            for s_small, s_big in zip(strides_small, strides_big):
                k, rem = divmod(rem, s_small)
                pos += k * s_big
            out[pos] = v
    return out


def _strides(shape):
    out = []
    acc = 1
    for s in reversed(shape):
        out.append(acc)
        acc *= s
    return list(reversed(out))


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def _check(report, name, ok, detail=None):
    entry = report["checks"].setdefault(name, {"passed": 0, "failed": 0, "failures": []})
    if ok:
        entry["passed"] += 1
    else:
        entry["failed"] += 1
        if len(entry["failures"]) < 5:
            entry["failures"].append(detail)


def verify_biring_axioms(d: int, samples: Sequence[int] = (-3, -1, 0, 1, 2, 5), rng_seed: int = 0) -> dict:
    """Check the co-ring, co-distributivity and co-linear laws on ``C(X, n)``, ``n <= d``.

    Returns a report ``{"verdict", "bound", "checks": {name: {"passed", "failed", "failures"}}}``.
    """
    if d > DEFAULT_VAR_CAP:
        raise DegreeExceeded(f"degree bound {d} exceeds cap {DEFAULT_VAR_CAP}")
    report = {"verdict": "pass", "bound": d, "checks": {}}
    X, Y, Z = (MultiRatPoly.var(i, 3) for i in range(3))
    for n in range(d + 1):
        f = IvPoly.binomial(n)
        fT = TensorIvPoly.from_ivpoly(f)
        a, m = coadd(f), comul(f)
        tag = f"C(X,{n})"
        for name, T, op in (("coadd", a, coadd), ("comul", m, comul)):
            left = T.apply_factor(0, op)
            right = T.apply_factor(1, op)
            _check(report, f"{name} co-associativity", left == right, tag)
            _check(report, f"{name} co-commutativity", T.permute((1, 0)) == T, tag)
        _check(report, "coadd counit (cozero, left)", a.apply_factor(0, cozero) == fT, tag)
        _check(report, "coadd counit (cozero, right)", a.apply_factor(1, cozero) == fT, tag)
        _check(report, "comul counit (counit, left)", m.apply_factor(0, counit) == fT, tag)
        _check(report, "comul counit (counit, right)", m.apply_factor(1, counit) == fT, tag)
        absorbed = TensorIvPoly.const(1, cozero(f))
        _check(report, "comul co-zero absorption", m.apply_factor(0, cozero) == absorbed, tag)
        folded = a.apply_factor(0, coinv).contract(0, 1)
        _check(report, "co-inverse", folded == TensorIvPoly.const(1, cozero(f)), tag)
        folded = a.apply_factor(1, coinv).contract(0, 1)
        _check(report, "co-inverse (right)", folded == TensorIvPoly.const(1, cozero(f)), tag)
        # f(X(Y+Z)) three ways: direct substitution, (id (x) coadd) after comul,
        # and f(XY + XZ) via coadd then comul on each summand with the X's identified.
        direct = substitute_poly(f, X * (Y + Z))
        route_a = m.apply_factor(1, coadd)
        route_b = a.apply_factor(0, comul).apply_factor(2, comul).contract(0, 2)
        _check(report, "co-distributivity (comul then coadd)", direct == route_a, tag)
        _check(report, "co-distributivity (coadd then comul)", direct == route_b, tag)
        _check(report, "coadd soundness", a.to_multi_rat_poly() == to_rational_poly(f).substitute(
            MultiRatPoly.var(0, 2) + MultiRatPoly.var(1, 2)), tag)
        _check(report, "comul soundness", m.to_multi_rat_poly() == to_rational_poly(f).substitute(
            MultiRatPoly.var(0, 2) * MultiRatPoly.var(1, 2)), tag)
        _check(report, "coinv soundness", to_rational_poly(coinv(f)) == to_rational_poly(f).compose(
            RatPoly((0, -1))), tag)
    for s in samples:
        for t in samples:
            phi, psi = colinear(s), colinear(t)
            add_ok = all(hom_add(phi, psi)(IvPoly.binomial(n)) == colinear(s + t)(IvPoly.binomial(n))
                         for n in range(d + 1))
            mul_ok = all(hom_mul(phi, psi)(IvPoly.binomial(n)) == colinear(s * t)(IvPoly.binomial(n))
                         for n in range(d + 1))
            _check(report, "colinear additive", add_ok, (s, t))
            _check(report, "colinear multiplicative", mul_ok, (s, t))
            Xp = IvPoly.X()
            _check(report, "compatibility (phi+psi)(X)", hom_add(phi, psi)(Xp) == phi(Xp) + psi(Xp), (s, t))
            _check(report, "compatibility (phi*psi)(X)", hom_mul(phi, psi)(Xp) == phi(Xp) * psi(Xp), (s, t))
    _check(report, "colinear unit", all(colinear(1)(IvPoly.binomial(n)) == counit(IvPoly.binomial(n))
                                        for n in range(d + 1)))
    _check(report, "colinear zero", all(colinear(0)(IvPoly.binomial(n)) == cozero(IvPoly.binomial(n))
                                        for n in range(d + 1)))
    for entry in report["checks"].values():
        if entry["failed"]:
            report["verdict"] = "fail"
    return report
