"""The ring Int(Z) of integer-valued polynomials, held in the binomial basis.

An :class:`IvPoly` with coefficient vector ``(c_0, ..., c_d)`` represents
``sum_n c_n * C(X, n)``.  Integer coefficients are exactly the integer-valued
polynomials, so membership in Int(Z) is a coefficient-integrality check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import kernels
from .errors import DegreeExceeded, NotIntegerValued, SchemaError
from .exact import RatPoly, parse_int

DEFAULT_COMPOSE_CAP = 256


def _strip(seq):
    seq = [int(c) for c in seq]
    while seq and seq[-1] == 0:
        seq.pop()
    return tuple(seq)


@dataclass(frozen=True)
class IvPoly:
    """Element of Int(Z); ``coeffs[n]`` is the coefficient of ``C(X, n)``."""

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int]) -> "IvPoly":
        if not coeffs:
            return cls()
        if any(n < 0 for n in coeffs):
            raise ValueError("degrees must be non-negative")
        dense = [0] * (max(coeffs) + 1)
        for n, c in coeffs.items():
            dense[n] += c
        return cls(dense)

    @classmethod
    def binomial(cls, n: int, c: int = 1) -> "IvPoly":
        """``c * C(X, n)``."""
        return cls((0,) * n + (c,))

    @classmethod
    def X(cls) -> "IvPoly":
        return cls.binomial(1)

    @classmethod
    def const(cls, c: int) -> "IvPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def support(self) -> dict:
        return {n: c for n, c in enumerate(self.coeffs) if c}

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, a: int) -> int:
        return kernels.eval_binomial(self.coeffs, a)

    def values(self, count: int) -> list:
        """``[f(0), ..., f(count - 1)]``."""
        return kernels.newton_values(list(self.coeffs), count)

    def __add__(self, other):
        other = _as_ivpoly(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IvPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return IvPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _as_ivpoly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IvPoly(c * other for c in self.coeffs)
        other = _as_ivpoly(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = IvPoly.const(1)
        for _ in range(n):
            out = mul(out, self)
        return out

    def compose(self, inner: "IvPoly", cap: int = DEFAULT_COMPOSE_CAP) -> "IvPoly":
        return compose(self, inner, cap=cap)

    def to_rational_poly(self) -> RatPoly:
        return to_rational_poly(self)

    def to_json(self) -> dict:
        return {"basis": "binomial", "coeffs": {str(n): str(c) for n, c in self.support().items()}}

    @classmethod
    def from_json(cls, obj) -> "IvPoly":
        if not isinstance(obj, Mapping):
            raise SchemaError("IvPoly: expected an object", "")
        if obj.get("basis") != "binomial":
            raise SchemaError("IvPoly: 'basis' must be \"binomial\"", "basis")
        coeffs = obj.get("coeffs")
        if not isinstance(coeffs, Mapping):
            raise SchemaError("IvPoly: 'coeffs' must map degrees to integer strings", "coeffs")
        out = {}
        for k, v in coeffs.items():
            try:
                n = int(k)
            except (TypeError, ValueError):
                raise SchemaError(f"coeffs: bad degree key {k!r}", f"coeffs.{k}") from None
            if n < 0:
                raise SchemaError(f"coeffs: negative degree {k!r}", f"coeffs.{k}")
            out[n] = parse_int(v, f"coeffs.{k}")
        return cls.from_dict(out)

    def __repr__(self):
        if not self.coeffs:
            return "IvPoly(0)"
        return "IvPoly(" + " + ".join(f"{c}*C(X,{n})" for n, c in self.support().items()) + ")"


def _as_ivpoly(x):
    if isinstance(x, IvPoly):
        return x
    if isinstance(x, int):
        return IvPoly.const(x)
    return NotImplemented


def from_rational_poly(f: RatPoly) -> IvPoly:
    """Binomial-basis expansion of ``f``; raises NotIntegerValued when ``f(Z)`` is not inside Z."""
    if f.is_zero():
        return IvPoly()
    nums, den = f._integer_form
    vals = []
    for a in range(f.degree + 1):
        acc = 0
        for c in reversed(nums):
            acc = acc * a + c
        vals.append(acc)
    diffs = kernels.forward_differences(vals)
    if den == 1 or all(d % den == 0 for d in diffs):
        return IvPoly(d // den for d in diffs)
    for a, v in enumerate(vals):
        if v % den:
            raise NotIntegerValued(a, Fraction(v, den))
    raise AssertionError("integral values with non-integral differences")


def to_rational_poly(f: IvPoly) -> RatPoly:
    nums, den = kernels.binomial_to_monomial(list(f.coeffs))
    return RatPoly(Fraction(n, den) for n in nums)


def mul(f: IvPoly, g: IvPoly) -> IvPoly:
    """Product in Int(Z), via values on ``0..deg f + deg g`` and forward differences."""
    if f.is_zero() or g.is_zero():
        return IvPoly()
    n = f.degree + g.degree + 1
    fv = f.values(n)
    gv = g.values(n)
    return IvPoly(kernels.forward_differences([a * b for a, b in zip(fv, gv)]))


def compose(f: IvPoly, g: IvPoly, cap: int = DEFAULT_COMPOSE_CAP) -> IvPoly:
    """``f(g(X))`` in the binomial basis."""
    if f.degree <= 0:
        return f
    if g.degree <= 0:
        return IvPoly.const(f(g.coeffs[0] if g.coeffs else 0))
    deg = f.degree * g.degree
    if deg > cap:
        raise DegreeExceeded(f"composed degree {deg} exceeds cap {cap}")
    inner = g.values(deg + 1)
    fc = f.coeffs
    return IvPoly(kernels.forward_differences([kernels.eval_binomial(fc, v) for v in inner]))


def eval_int(f: IvPoly, a: int) -> int:
    return kernels.eval_binomial(f.coeffs, a)


def degree_truncate(f: IvPoly, d: int) -> IvPoly:
    return IvPoly(f.coeffs[: d + 1])
