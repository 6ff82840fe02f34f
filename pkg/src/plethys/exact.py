"""Exact arithmetic substrate: rational polynomials, residues and rational lattices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, SchemaError


def frac_str(q) -> str:
    return str(Fraction(q))


def parse_frac(s, where="value") -> Fraction:
    if isinstance(s, bool):
        raise SchemaError(f"{where}: expected a fraction string", where)
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise SchemaError(f"{where}: expected a fraction string, got {type(s).__name__}", where)
    try:
        if "." in s or "e" in s.lower():
            raise ValueError
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"{where}: malformed fraction {s!r}", where) from None


def parse_int(s, where="value") -> int:
    q = parse_frac(s, where)
    if q.denominator != 1:
        raise SchemaError(f"{where}: expected an integer, got {s!r}", where)
    return q.numerator


def _strip(seq):
    seq = list(seq)
    while seq and seq[-1] == 0:
        seq.pop()
    return tuple(seq)


@dataclass(frozen=True)
class RatPoly:
    """Dense univariate polynomial over Q; ``coeffs[i]`` multiplies ``X**i``."""

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(Fraction(c) for c in self.coeffs))

    @classmethod
    def X(cls) -> "RatPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "RatPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @cached_property
    def _integer_form(self):
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return [int(c * den) for c in self.coeffs], den

    def eval_int_point(self, a: int) -> Fraction:
        nums, den = self._integer_form
        acc = 0
        for c in reversed(nums):
            acc = acc * a + c
        return Fraction(acc, den)

    def __call__(self, a):
        if isinstance(a, int):
            return self.eval_int_point(a)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def __add__(self, other):
        other = _as_ratpoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return RatPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_ratpoly(other))

    def __rsub__(self, other):
        return _as_ratpoly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatPoly(c * other for c in self.coeffs)
        other = _as_ratpoly(other)
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = RatPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def compose(self, inner: "RatPoly") -> "RatPoly":
        acc = RatPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + RatPoly.const(c)
        return acc

    def substitute(self, inner: "MultiRatPoly") -> "MultiRatPoly":
        """``self(inner)`` for a multivariate ``inner``."""
        acc = MultiRatPoly.zero(inner.arity)
        for c in reversed(self.coeffs):
            acc = acc * inner + MultiRatPoly.const(inner.arity, c)
        return acc

    def to_json(self) -> dict:
        return {"coeffs": [frac_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "RatPoly":
        if not isinstance(obj, Mapping) or not isinstance(obj.get("coeffs"), list):
            raise SchemaError("RatPoly: expected {'coeffs': [...]}", "coeffs")
        return cls(parse_frac(c, f"coeffs[{i}]") for i, c in enumerate(obj["coeffs"]))

    def __repr__(self):
        if not self.coeffs:
            return "RatPoly(0)"
        terms = [f"{c}*X^{i}" for i, c in enumerate(self.coeffs) if c]
        return "RatPoly(" + " + ".join(terms) + ")"


def _as_ratpoly(x) -> RatPoly:
    if isinstance(x, RatPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return RatPoly.const(x)
    return NotImplemented


def rat_poly_eval(f: RatPoly, a) -> Fraction:
    return f(Fraction(a) if not isinstance(a, int) else a)


def grlex_key(exp):
    return (sum(exp), exp)


@dataclass(frozen=True)
class MultiRatPoly:
    """Sparse polynomial over Q in ``arity`` variables.

    ``terms`` is a tuple of ``(exponent_tuple, Fraction)`` pairs in graded
    lexicographic order with no zero coefficients.
    """

    arity: int
    terms: tuple = ()

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("arity must be positive")
        raw = dict(self.terms) if not isinstance(self.terms, Mapping) else self.terms
        clean = {}
        for exp, c in raw.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.arity or any(e < 0 for e in exp):
                raise DimensionMismatch(f"exponent {exp} does not match arity {self.arity}")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
        items = sorted(((e, c) for e, c in clean.items() if c), key=lambda t: grlex_key(t[0]))
        object.__setattr__(self, "terms", tuple(items))

    @classmethod
    def zero(cls, arity: int) -> "MultiRatPoly":
        return cls(arity, ())

    @classmethod
    def const(cls, arity: int, c) -> "MultiRatPoly":
        return cls(arity, {(0,) * arity: c})

    @classmethod
    def var(cls, i: int, arity: int) -> "MultiRatPoly":
        exp = [0] * arity
        exp[i] = 1
        return cls(arity, {tuple(exp): 1})

    @classmethod
    def from_ratpoly(cls, f: RatPoly, arity: int = 1, index: int = 0) -> "MultiRatPoly":
        return f.substitute(cls.var(index, arity))

    @cached_property
    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> tuple:
        """Per-variable degrees (0 for the zero polynomial)."""
        out = [0] * self.arity
        for exp, _ in self.terms:
            for i, e in enumerate(exp):
                if e > out[i]:
                    out[i] = e
        return tuple(out)

    def constant_term(self) -> Fraction:
        return self.as_dict.get((0,) * self.arity, Fraction(0))

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for _, c in self.terms)

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        if len(point) != self.arity:
            raise DimensionMismatch(f"expected {self.arity} coordinates, got {len(point)}")
        total = Fraction(0)
        for exp, c in self.terms:
            term = c
            for x, e in zip(point, exp):
                if e:
                    term *= x ** e
            total += term
        return total

    def eval_int_point(self, point) -> Fraction:
        den = 1
        for _, c in self.terms:
            den = den * c.denominator // math.gcd(den, c.denominator)
        total = 0
        for exp, c in self.terms:
            term = c.numerator * (den // c.denominator)
            for x, e in zip(point, exp):
                if e:
                    term *= x ** e
            total += term
        return Fraction(total, den)

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiRatPoly.const(self.arity, other)
        if not isinstance(other, MultiRatPoly):
            return NotImplemented
        if other.arity != self.arity:
            raise DimensionMismatch(f"arity {self.arity} vs {other.arity}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return MultiRatPoly(self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiRatPoly(self.arity, {e: -c for e, c in self.terms})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiRatPoly(self.arity, {e: c * other for e, c in self.terms})
        other = self._check(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiRatPoly(self.arity, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = MultiRatPoly.const(self.arity, 1)
        for _ in range(n):
            out = out * self
        return out

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "terms": [{"exp": list(e), "c": frac_str(c)} for e, c in self.terms],
        }

    @classmethod
    def from_json(cls, obj) -> "MultiRatPoly":
        if not isinstance(obj, Mapping):
            raise SchemaError("MultiRatPoly: expected an object", "")
        arity = obj.get("arity")
        if not isinstance(arity, int) or isinstance(arity, bool) or arity < 1:
            raise SchemaError("MultiRatPoly: 'arity' must be a positive integer", "arity")
        terms = obj.get("terms")
        if not isinstance(terms, list):
            raise SchemaError("MultiRatPoly: 'terms' must be a list", "terms")
        out: dict = {}
        for i, t in enumerate(terms):
            if not isinstance(t, Mapping) or not isinstance(t.get("exp"), list):
                raise SchemaError(f"terms[{i}]: expected {{'exp': [...], 'c': ...}}", f"terms[{i}]")
            exp = t["exp"]
            if len(exp) != arity or not all(isinstance(e, int) and e >= 0 for e in exp):
                raise SchemaError(f"terms[{i}].exp: need {arity} non-negative integers", f"terms[{i}].exp")
            out[tuple(exp)] = out.get(tuple(exp), 0) + parse_frac(t.get("c"), f"terms[{i}].c")
        return cls(arity, out)


@dataclass(frozen=True)
class ModInt:
    modulus: int
    value: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _lift(self, other):
        if isinstance(other, ModInt):
            if other.modulus != self.modulus:
                raise DimensionMismatch(f"moduli {self.modulus} and {other.modulus} differ")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._lift(other)
        return NotImplemented if v is NotImplemented else ModInt(self.modulus, self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._lift(other)
        return NotImplemented if v is NotImplemented else ModInt(self.modulus, self.value - v)

    def __rsub__(self, other):
        v = self._lift(other)
        return NotImplemented if v is NotImplemented else ModInt(self.modulus, v - self.value)

    def __mul__(self, other):
        v = self._lift(other)
        return NotImplemented if v is NotImplemented else ModInt(self.modulus, self.value * v)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(self.modulus, -self.value)

    def __pow__(self, n: int):
        return ModInt(self.modulus, pow(self.value, n, self.modulus))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


def _vec(v) -> tuple:
    return tuple(Fraction(x) for x in v)


def _hnf_columns(dim: int, gens: Iterable[Sequence[int]]) -> list:
    """Column Hermite form of the integer lattice spanned by ``gens``.

    Pivot rows increase, pivots are positive, and every entry of an earlier
    basis vector lying in a later pivot row is reduced into ``[0, pivot)``.
    """
    work = [list(g) for g in gens if any(g)]
    basis = []
    for row in range(dim):
        active = [v for v in work if v[row] != 0]
        rest = [v for v in work if v[row] == 0]
        while len(active) > 1:
            active.sort(key=lambda v: abs(v[row]))
            piv = active[0]
            nxt = [piv]
            for v in active[1:]:
                q = v[row] // piv[row]
                w = [a - q * b for a, b in zip(v, piv)]
                if w[row] != 0:
                    nxt.append(w)
                elif any(w):
                    rest.append(w)
            active = nxt
        if active:
            piv = active[0]
            if piv[row] < 0:
                piv = [-a for a in piv]
            basis.append((row, piv))
        work = rest
    for j in range(len(basis)):
        _, v = basis[j]
        for k in range(j + 1, len(basis)):
            prow, pv = basis[k]
            q = v[prow] // pv[prow]
            if q:
                v = [a - q * b for a, b in zip(v, pv)]
        basis[j] = (basis[j][0], v)
    return basis


@dataclass(frozen=True)
class Lattice:
    """A finitely generated Z-submodule of Q^dim in canonical column Hermite form.

    ``basis`` holds the basis vectors (the columns of the r x r' basis matrix).
    """

    dim: int
    basis: tuple = ()
    pivots: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.basis and len(self.pivots) != len(self.basis):
            canon = Lattice.from_generators(self.dim, self.basis)
            object.__setattr__(self, "basis", canon.basis)
            object.__setattr__(self, "pivots", canon.pivots)

    @classmethod
    def from_generators(cls, dim: int, gens: Iterable[Sequence]) -> "Lattice":
        vecs = [_vec(g) for g in gens]
        for v in vecs:
            if len(v) != dim:
                raise DimensionMismatch(f"vector of length {len(v)} in dimension {dim}")
        den = 1
        for v in vecs:
            for x in v:
                den = den * x.denominator // math.gcd(den, x.denominator)
        ints = [[int(x * den) for x in v] for v in vecs]
        hnf = _hnf_columns(dim, ints)
        basis = tuple(tuple(Fraction(a, den) for a in v) for _, v in hnf)
        return cls(dim, basis, tuple(r for r, _ in hnf))

    @classmethod
    def standard(cls, dim: int) -> "Lattice":
        return cls.from_generators(dim, [[int(i == j) for j in range(dim)] for i in range(dim)])

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, v) -> tuple | None:
        """Rational coordinates of ``v`` in the basis, or None when ``v`` is outside the Q-span."""
        v = _vec(v)
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in dimension {self.dim}")
        res = list(v)
        coords = []
        for row, b in zip(self.pivots, self.basis):
            c = res[row] / b[row]
            coords.append(c)
            if c:
                res = [x - c * y for x, y in zip(res, b)]
        if any(res):
            return None
        return tuple(coords)

    def contains(self, v) -> bool:
        coords = self.coordinates(v)
        return coords is not None and all(c.denominator == 1 for c in coords)

    def join(self, other) -> "Lattice":
        if isinstance(other, Lattice):
            if other.dim != self.dim:
                raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")
            extra = other.basis
        else:
            extra = list(other)
        return Lattice.from_generators(self.dim, list(self.basis) + list(extra))

    def issublattice(self, other: "Lattice") -> bool:
        return all(other.contains(b) for b in self.basis)

    def denominator(self) -> int:
        den = 1
        for b in self.basis:
            for x in b:
                den = den * x.denominator // math.gcd(den, x.denominator)
        return den

    def to_json(self) -> dict:
        return {"dim": self.dim, "basis": [[frac_str(x) for x in b] for b in self.basis]}

    @classmethod
    def from_json(cls, obj) -> "Lattice":
        if not isinstance(obj, Mapping):
            raise SchemaError("Lattice: expected an object", "")
        dim = obj.get("dim")
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise SchemaError("Lattice: 'dim' must be a positive integer", "dim")
        basis = obj.get("basis")
        if not isinstance(basis, list):
            raise SchemaError("Lattice: 'basis' must be a list of vectors", "basis")
        vecs = []
        for i, b in enumerate(basis):
            if not isinstance(b, list) or len(b) != dim:
                raise SchemaError(f"basis[{i}]: expected {dim} entries", f"basis[{i}]")
            vecs.append([parse_frac(x, f"basis[{i}]") for x in b])
        return cls.from_generators(dim, vecs)


def lattice_contains(L: Lattice, v) -> bool:
    return L.contains(v)


def lattice_join(L1: Lattice, L2: Lattice) -> Lattice:
    return L1.join(L2)
