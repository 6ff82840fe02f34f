"""Composition on Int(Z), Int(Z)-ring actions, and binomial closures of orders.

Orders are finitely generated torsion-free rings presented as a lattice inside a
finite-dimensional commutative Q-algebra (a :class:`FinOrder`).  Binomial
closure questions are answered up to an explicit degree bound: positive
verdicts read "yes-up-to-N", negative verdicts carry an exact witness.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .biring import coadd, comul, substitute_poly
from .errors import ActionEscape, ClosureEscape, ClosureUnbounded, NotWpc, RankEscape, SchemaError
from .exact import Lattice, MultiRatPoly, frac_str, parse_frac
from .ivpoly import IvPoly, compose

DEFAULT_BOUND = 10


def _primes_of(n: int) -> set:
    out = set()
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


@dataclass(frozen=True)
class FinOrder:
    """A commutative ring ``L[1/S]`` inside a Q-algebra of dimension ``rank``.

    ``mult_table[i][j]`` is the coordinate vector of ``e_i * e_j``; ``one`` is
    the identity; ``lattice`` is the Z-module ``L``; ``inverted`` lists the
    primes ``S`` made invertible (empty for an honest order).
    """

    rank: int
    mult_table: tuple
    one: tuple
    lattice: Lattice
    generators: tuple = ()
    inverted: tuple = ()
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        r = self.rank
        table = tuple(tuple(tuple(Fraction(x) for x in self.mult_table[i][j]) for j in range(r)) for i in range(r))
        object.__setattr__(self, "mult_table", table)
        object.__setattr__(self, "one", tuple(Fraction(x) for x in self.one))
        object.__setattr__(self, "generators", tuple(tuple(Fraction(x) for x in g) for g in self.generators))
        object.__setattr__(self, "inverted", tuple(sorted(set(self.inverted))))
        if self.lattice.dim != r:
            raise ValueError("lattice dimension differs from algebra rank")
        if self.check:
            self._validate()

    def _validate(self):
        r = self.rank
        basis = [tuple(Fraction(int(i == j)) for j in range(r)) for i in range(r)]
        for u in basis:
            if self.mul(self.one, u) != u:
                raise ValueError("designated identity is not a unit")
            for v in basis:
                if self.mul(u, v) != self.mul(v, u):
                    raise ValueError("multiplication table is not commutative")
                for w in basis:
                    if self.mul(self.mul(u, v), w) != self.mul(u, self.mul(v, w)):
                        raise ValueError("multiplication table is not associative")
        if not self.contains(self.one):
            raise ValueError("lattice does not contain 1")
        for u, v in itertools.combinations_with_replacement(self.lattice.basis, 2):
            if not self.contains(self.mul(u, v)):
                raise ValueError("lattice is not closed under multiplication")
        for g in self.generators:
            if not self.contains(g):
                raise ValueError(f"generator {g} is not in the order")

    # -- element arithmetic in A (x) Q ------------------------------------

    def mul(self, u, v) -> tuple:
        out = [Fraction(0)] * self.rank
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        ab = a * b
                        for k, c in enumerate(self.mult_table[i][j]):
                            if c:
                                out[k] += ab * c
        return tuple(out)

    def add(self, u, v) -> tuple:
        return tuple(a + b for a, b in zip(u, v))

    def scale(self, u, c) -> tuple:
        return tuple(a * c for a in u)

    def const(self, c) -> tuple:
        return self.scale(self.one, Fraction(c))

    def binomials(self, a, n: int) -> list:
        """``[C(a, 0), ..., C(a, n)]`` computed in the Q-algebra."""
        row = [self.one]
        for k in range(1, n + 1):
            shifted = self.add(a, self.const(-(k - 1)))
            row.append(self.scale(self.mul(row[-1], shifted), Fraction(1, k)))
        return row

    def evaluate(self, f: IvPoly, a) -> tuple:
        """``f(a)`` in the Q-algebra."""
        out = tuple(Fraction(0) for _ in range(self.rank))
        if f.is_zero():
            return out
        for c, b in zip(f.coeffs, self.binomials(a, f.degree)):
            if c:
                out = self.add(out, self.scale(b, c))
        return out

    # -- membership --------------------------------------------------------

    def contains(self, v) -> bool:
        coords = self.lattice.coordinates(v)
        if coords is None:
            return False
        allowed = set(self.inverted)
        for c in coords:
            den = c.denominator
            if den != 1 and not _primes_of(den) <= allowed:
                return False
        return True

    def issubring(self, other: "FinOrder") -> bool:
        """Whether this ring is contained in ``other`` (same ambient algebra assumed)."""
        if not all(other.contains(b) for b in self.lattice.basis):
            return False
        return all(other.contains(self.const(Fraction(1, p))) for p in self.inverted)

    def same_ring(self, other: "FinOrder") -> bool:
        return self.issubring(other) and other.issubring(self)

    def denominators(self) -> list:
        """Distinct denominators (lcm over coordinates) of the lattice basis vectors."""
        return sorted({_vec_den(b) for b in self.lattice.basis})

    def with_lattice(self, lattice: Lattice, check: bool = True, inverted=None, generators=None) -> "FinOrder":
        return FinOrder(
            self.rank,
            self.mult_table,
            self.one,
            lattice,
            self.generators if generators is None else generators,
            self.inverted if inverted is None else inverted,
            check=check,
        )

    # -- presets -----------------------------------------------------------

    @classmethod
    def integers(cls) -> "FinOrder":
        return cls(1, (((1,),),), (1,), Lattice.standard(1), ((1,),))

    @classmethod
    def dyadic(cls) -> "FinOrder":
        """Z[1/2] inside Q, generated by 1/2."""
        return cls(1, (((1,),),), (1,), Lattice.standard(1), ((Fraction(1, 2),),), (2,))

    @classmethod
    def gaussian(cls) -> "FinOrder":
        """Z[i] inside Q(i), basis (1, i), generated by i."""
        table = (((1, 0), (0, 1)), ((0, 1), (-1, 0)))
        return cls(2, table, (1, 0), Lattice.standard(2), ((0, 1),))

    @classmethod
    def split(cls) -> "FinOrder":
        """Z x Z inside Q x Q with componentwise product, generated by the idempotent (1, 0)."""
        table = (((1, 0), (0, 0)), ((0, 0), (0, 1)))
        return cls(2, table, (1, 1), Lattice.standard(2), ((1, 0),))

    PRESETS = ("Z", "Z[i]", "Z[1/2]", "ZxZ")

    @classmethod
    def preset(cls, name: str) -> "FinOrder":
        table = {"Z": cls.integers, "Z[i]": cls.gaussian, "Z[1/2]": cls.dyadic, "ZxZ": cls.split}
        if name not in table:
            raise SchemaError(f"unknown order preset {name!r}; choose from {', '.join(cls.PRESETS)}", "order")
        return table[name]()

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "mult_table": [[[frac_str(x) for x in v] for v in row] for row in self.mult_table],
            "one": [frac_str(x) for x in self.one],
            "lattice": self.lattice.to_json(),
            "generators": [[frac_str(x) for x in g] for g in self.generators],
            "inverted": list(self.inverted),
        }

    @classmethod
    def from_json(cls, obj) -> "FinOrder":
        if not isinstance(obj, Mapping):
            raise SchemaError("FinOrder: expected an object", "")
        r = obj.get("rank")
        if not isinstance(r, int) or isinstance(r, bool) or r < 1:
            raise SchemaError("FinOrder: 'rank' must be a positive integer", "rank")
        table = obj.get("mult_table")
        if not (isinstance(table, list) and len(table) == r and all(
                isinstance(row, list) and len(row) == r and all(isinstance(v, list) and len(v) == r for v in row)
                for row in table)):
            raise SchemaError(f"FinOrder: 'mult_table' must be {r}x{r}x{r}", "mult_table")
        table = [[[parse_frac(x, f"mult_table[{i}][{j}]") for x in v] for j, v in enumerate(row)]
                 for i, row in enumerate(table)]
        one = obj.get("one", [1] + [0] * (r - 1))
        if not isinstance(one, list) or len(one) != r:
            raise SchemaError("FinOrder: 'one' must have rank entries", "one")
        one = [parse_frac(x, "one") for x in one]
        lattice = Lattice.from_json(obj.get("lattice")) if "lattice" in obj else Lattice.standard(r)
        gens = obj.get("generators", [])
        if not isinstance(gens, list) or not all(isinstance(g, list) and len(g) == r for g in gens):
            raise SchemaError("FinOrder: 'generators' must be a list of rank-length vectors", "generators")
        gens = [[parse_frac(x, f"generators[{i}]") for x in g] for i, g in enumerate(gens)]
        inverted = obj.get("inverted", [])
        if not isinstance(inverted, list) or not all(isinstance(p, int) and p >= 2 for p in inverted):
            raise SchemaError("FinOrder: 'inverted' must list primes", "inverted")
        try:
            return cls(r, table, one, lattice, gens, inverted)
        except ValueError as exc:
            raise SchemaError(f"FinOrder: {exc}", "") from None


def _vec_den(v) -> int:
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    return den


# -- plethory axioms -----------------------------------------------------------


def _record(report, name, ok, detail=None):
    entry = report["checks"].setdefault(name, {"passed": 0, "failed": 0, "failures": []})
    if ok:
        entry["passed"] += 1
    else:
        entry["failed"] += 1
        if len(entry["failures"]) < 5:
            entry["failures"].append(detail)


def _random_ivpoly(rng, max_deg, coeff_range=5):
    return IvPoly(rng.randint(-coeff_range, coeff_range) for _ in range(rng.randint(0, max_deg) + 1))


def verify_plethory_axioms(d: int, samples: int = 200, max_random_degree: int = 3, seed: int = 0) -> dict:
    """Associativity and unit laws on basis triples, plus the composition-product relations on random triples."""
    report = {"verdict": "pass", "bound": d, "checks": {}}
    X = IvPoly.X()
    cache = {}

    def comp(f, g):
        key = (f, g)
        if key not in cache:
            cache[key] = compose(f, g)
        return cache[key]

    for i in range(1, d + 1):
        f = IvPoly.binomial(i)
        _record(report, "left unit X o f = f", comp(X, f) == f, i)
        _record(report, "right unit f o X = f", comp(f, X) == f, i)
        for j in range(1, d // i + 1):
            g = IvPoly.binomial(j)
            for k in range(1, d // (i * j) + 1):
                h = IvPoly.binomial(k)
                lhs = comp(comp(f, g), h)
                rhs = comp(f, comp(g, h))
                _record(report, "associativity", lhs == rhs, (i, j, k))
    rng = random.Random(seed)
    X2, Y2 = MultiRatPoly.var(0, 2), MultiRatPoly.var(1, 2)
    for _ in range(samples):
        f, g, h, k = (_random_ivpoly(rng, max_random_degree) for _ in range(4))
        c = rng.randint(-6, 6)
        tag = (f.coeffs, g.coeffs, h.coeffs)
        _record(report, "associativity (random)", comp(comp(f, g), h) == comp(f, comp(g, h)), tag)
        _record(report, "(f+g) o h = f o h + g o h", comp(f + g, h) == comp(f, h) + comp(g, h), tag)
        _record(report, "(fg) o h = (f o h)(g o h)", comp(f * g, h) == comp(f, h) * comp(g, h), tag)
        plus = sum((comp(IvPoly.binomial(a), h) * comp(IvPoly.binomial(b), k) * v
                    for (a, b), v in coadd(f).coeffs), IvPoly())
        _record(report, "f o (h+k) via co-addition", comp(f, h + k) == plus, tag)
        times = sum((comp(IvPoly.binomial(a), h) * comp(IvPoly.binomial(b), k) * v
                     for (a, b), v in comul(f).coeffs), IvPoly())
        _record(report, "f o (hk) via co-multiplication", comp(f, h * k) == times, tag)
        _record(report, "c o h = c", comp(IvPoly.const(c), h) == IvPoly.const(c), tag)
        _record(report, "f o c = f(c)", comp(f, IvPoly.const(c)) == IvPoly.const(f(c)), tag)
        _record(report, "f o (X+Y) matches substitution",
                substitute_poly(f, X2 + Y2) == coadd(f), tag)
    for entry in report["checks"].values():
        if entry["failed"]:
            report["verdict"] = "fail"
    return report


# -- WPC decisions and closures --------------------------------------------------


@dataclass(frozen=True)
class WpcVerdict:
    verdict: str
    bound: int
    witness: tuple | None = None  # (generator, n, value)

    @property
    def is_yes(self) -> bool:
        return self.verdict.startswith("yes")

    def to_json(self) -> dict:
        w = None
        if self.witness is not None:
            g, n, v = self.witness
            w = {"generator": [frac_str(x) for x in g], "n": n, "value": [frac_str(x) for x in v]}
        return {"verdict": self.verdict, "bound": self.bound, "witness": w}


def is_wpc(A: FinOrder, N: int = DEFAULT_BOUND) -> WpcVerdict:
    """Check ``C(g, n)`` in A for every listed generator and ``2 <= n <= N``."""
    if N < 2:
        raise ValueError("degree bound must be at least 2")
    for g in A.generators:
        row = A.binomials(g, N)
        for n in range(2, N + 1):
            if not A.contains(row[n]):
                return WpcVerdict("no", N, (g, n, row[n]))
    return WpcVerdict(f"yes-up-to-{N}", N)


class LowerResult(NamedTuple):
    order: FinOrder
    status: str
    added: tuple = ()

    def denominators(self) -> list:
        return sorted({_vec_den(v) for v in self.added})


def w_lower(A: FinOrder, N: int = DEFAULT_BOUND, max_iters: int = 8) -> LowerResult:
    """Iterated binomial closure of A up to degree N.

    Each pass adjoins ``C(b, n)`` for every lattice basis vector ``b`` and
    ``2 <= n <= N``, then one round of pairwise products of the new basis.
    Status is ``"stabilized"`` once a pass adds nothing.
    """
    if N < 2:
        raise ValueError("degree bound must be at least 2")
    current = A.with_lattice(A.lattice, check=False)
    added = []
    for _ in range(max_iters):
        new = []
        gens = list(current.lattice.basis) + list(A.generators)
        gens += [A.const(Fraction(1, p)) for p in A.inverted]
        for b in gens:
            row = current.binomials(b, N)
            new.extend(v for v in row[2:] if not current.contains(v))
        if new:
            current = current.with_lattice(current.lattice.join(new), check=False)
        prods = [current.mul(u, v) for u, v in itertools.combinations_with_replacement(current.lattice.basis, 2)]
        extra = [v for v in prods if not current.contains(v)]
        if extra:
            current = current.with_lattice(current.lattice.join(extra), check=False)
        if current.lattice.rank > A.rank:
            raise RankEscape("closure left the ambient algebra")
        if not new and not extra:
            return LowerResult(current.with_lattice(current.lattice, check=True), "stabilized", tuple(added))
        for v in new + extra:
            if v not in added:
                added.append(v)
    return LowerResult(current, "not-stabilized", tuple(added))


def _generated_subring(A: FinOrder, elements: Sequence, max_iters: int):
    """Lattice and inverted primes of the subring of A (x) Q generated by Z and ``elements``."""
    L = Lattice.from_generators(A.rank, [A.one, *elements])
    inverted = set()
    for _ in range(max_iters):
        inverted |= {p for p in A.inverted if L.contains(A.const(Fraction(1, p)))}
        ring = A.with_lattice(L, check=False, inverted=tuple(inverted))
        prods = [A.mul(u, v) for u, v in itertools.combinations_with_replacement(L.basis, 2)]
        extra = [v for v in prods if not ring.contains(v)]
        if not extra:
            return L, tuple(sorted(inverted))
        L = L.join(extra)
    raise ClosureUnbounded("subring generation did not stabilize; raise max_iters or invert primes")


def w_upper(A: FinOrder, candidates: Iterable, N: int = DEFAULT_BOUND, max_iters: int = 16) -> FinOrder:
    """Subring of A generated by the candidates whose binomials ``C(c, n)``, ``n <= N``, stay in A."""
    accepted = []
    extra = []
    for c in candidates:
        c = tuple(Fraction(x) for x in c)
        if not A.contains(c):
            raise ClosureEscape(f"candidate {c} is not in the order")
        row = A.binomials(c, N)
        if all(A.contains(v) for v in row[2:]):
            accepted.append(c)
            extra.extend(row[2:])
    L, inverted = _generated_subring(A, accepted + extra, max_iters)
    result = A.with_lattice(L, check=False, inverted=inverted, generators=tuple(accepted))
    if not result.issubring(A):
        raise ClosureEscape("generated subring is not contained in the order")
    result = A.with_lattice(L, check=True, inverted=inverted, generators=tuple(accepted))
    if not is_wpc(result, N).is_yes:
        raise ClosureEscape("generated subring is not closed under binomials of its generators")
    return result


# -- Int(Z)-ring actions ------------------------------------------------------------


@dataclass(frozen=True)
class PRingAction:
    """The action ``(f, a) -> f(a)`` of Int(Z) on a torsion-free WPC order."""

    carrier: FinOrder
    bound: int = DEFAULT_BOUND

    def act(self, f: IvPoly, a) -> tuple:
        a = tuple(Fraction(x) for x in a)
        if not self.carrier.contains(a):
            raise ActionEscape(f"{a} is not in the carrier")
        value = self.carrier.evaluate(f, a)
        if not self.carrier.contains(value):
            raise ActionEscape(f"f(a) = {value} left the carrier (degree bound {self.bound} too small?)")
        return value

    __call__ = act


def p_ring_action(A: FinOrder, N: int = DEFAULT_BOUND) -> PRingAction:
    verdict = is_wpc(A, N)
    if not verdict.is_yes:
        raise NotWpc(verdict)
    return PRingAction(A, N)
