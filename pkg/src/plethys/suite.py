"""Acceptance battery: each criterion runs with its own oracle and wall-clock limit.

``acceptance`` uses the full bounds; ``quick`` shrinks sizes and degrees so the
whole table finishes in a few seconds.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .biring import coadd, comul, theta_check, verify_biring_axioms
from .errors import NotIntegerValued, SchemaError
from .exact import Lattice, RatPoly
from .ivpoly import IvPoly, from_rational_poly, to_rational_poly
from .lambda_ring import bin_compare_witt, universal_polys
from .plethory import FinOrder, is_wpc, verify_plethory_axioms, w_lower, w_upper
from .witt import add_by_expansion, eval_hom, hom_census, mul_by_expansion, torsion_argument_check, witt_add, witt_mul

SUITES = ("acceptance", "quick")


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    limit: float
    run: Callable[[bool], dict]


def _binom(a, n: int) -> Fraction:
    """``C(a, n)`` by the falling-factorial product; works for any rational ``a``."""
    out = Fraction(1)
    for i in range(n):
        out = out * (a - i) / (i + 1)
    return out


def _values_integral(f: RatPoly, upto: int):
    """First ``a`` in ``0..upto`` with ``f(a)`` not an integer, else None."""
    for a in range(upto + 1):
        if f(a).denominator != 1:
            return a
    return None


def basis_round_trip(quick: bool) -> dict:
    rng = random.Random(1)
    count, max_deg = (100, 12) if quick else (500, 30)
    good = 0
    for _ in range(count):
        d = rng.randint(0, max_deg)
        f = IvPoly([rng.randint(-20, 20) for _ in range(d)] + [rng.choice((-3, -2, -1, 1, 2, 3))])
        r = to_rational_poly(f)
        good += from_rational_poly(r) == f and to_rational_poly(from_rational_poly(r)) == r
    rejected = 0
    tried = 0
    while tried < count:
        d = rng.randint(1, max_deg)
        r = RatPoly([Fraction(rng.randint(-9, 9), rng.randint(1, 12)) for _ in range(d)] + [Fraction(1, rng.randint(1, 12))])
        expected = _values_integral(r, r.degree)
        if expected is None:
            continue
        tried += 1
        try:
            from_rational_poly(r)
        except NotIntegerValued as exc:
            rejected += exc.witness == expected and exc.value == r(exc.witness)
    return {"passed": good == count and rejected == count, "round_trips": good, "rejections": rejected, "count": count}


def cooperation_soundness(quick: bool) -> dict:
    rng = random.Random(2)
    max_n, pairs = (6, 30) if quick else (12, 100)
    points = [(rng.randint(-50, 50), rng.randint(-50, 50)) for _ in range(pairs)]
    bad = []
    for n in range(max_n + 1):
        s, m = coadd(IvPoly.binomial(n)), comul(IvPoly.binomial(n))
        integral = all(isinstance(c, int) for _, c in s.coeffs + m.coeffs)
        for a, b in points:
            if not integral or s((a, b)) != _binom(a + b, n) or m((a, b)) != _binom(a * b, n):
                bad.append([n, a, b])
    return {"passed": not bad, "failures": bad[:5], "checked": (max_n + 1) * pairs}


def vandermonde(quick: bool) -> dict:
    max_n = 10 if quick else 20
    bad = [n for n in range(max_n + 1)
           if coadd(IvPoly.binomial(n)).as_dict() != {(i, n - i): 1 for i in range(n + 1)}]
    return {"passed": not bad, "failures": bad, "max_degree": max_n}


def biring_axioms(quick: bool) -> dict:
    report = verify_biring_axioms(4 if quick else 8)
    failed = sorted(k for k, v in report["checks"].items() if v["failed"])
    return {"passed": report["verdict"] == "pass", "failed_checks": failed, "degree": report["bound"]}


def plethory_axioms(quick: bool) -> dict:
    d, samples = (8, 40) if quick else (24, 200)
    report = verify_plethory_axioms(d, samples=samples)
    failed = sorted(k for k, v in report["checks"].items() if v["failed"])
    return {"passed": report["verdict"] == "pass", "failed_checks": failed, "degree": d, "samples": samples}


def theta_surjectivity(quick: bool) -> dict:
    report = theta_check(2, 4 if quick else 8)
    return {"passed": report["verdict"] == "pass", "checked": report["checked"], "oracle_points": report["oracle_points"]}


def wpc_verdicts(quick: bool) -> dict:
    Z, Zi, Zh = FinOrder.integers(), FinOrder.gaussian(), FinOrder.dyadic()
    out = {}
    out["Z"] = is_wpc(Z, 12).is_yes
    v = is_wpc(Zi, 12)
    out["Z[i]"] = v.verdict == "no" and v.witness[1] == 2 and v.witness[2] == (Fraction(-1, 2), Fraction(-1, 2))
    out["Z[1/2]"] = is_wpc(Zh, 12).verdict == "yes-up-to-12"
    up = w_upper(Zi, [(1, 0), (0, 1)], 10)
    out["w_upper"] = up.lattice == Lattice.from_generators(2, [(1, 0)]) and not up.inverted
    low = w_lower(Zi, 3, 4)
    dens = low.denominators()
    out["w_lower"] = (low.status == "not-stabilized" and 2 in dens and 6 in dens
                      and low.order.contains((Fraction(1, 2), Fraction(1, 6))))
    return {"passed": all(out.values()), "checks": out, "w_lower_denominators": dens[:8]}


def witt_ring(quick: bool) -> dict:
    census = hom_census(2, 1, 4)
    out = {"census": census["count"] == 8 and census["stable"]}
    rng = random.Random(8)
    agree = 0
    cases = 50 if quick else 200
    for _ in range(cases):
        p = rng.choice((2, 3, 5))
        k, d = rng.randint(1, 3), rng.randint(1, 6)
        phi = eval_hom(p, k, d, rng.randint(0, 10 ** 6))
        psi = eval_hom(p, k, d, rng.randint(0, 10 ** 6))
        f = IvPoly([rng.randint(-9, 9) for _ in range(d + 1)])
        agree += (witt_add(phi, psi)(f) == add_by_expansion(phi, psi, f)
                  and witt_mul(phi, psi)(f) == mul_by_expansion(phi, psi, f))
    out["expansions"] = agree == cases
    e3, e5 = eval_hom(2, 3, 2, 3), eval_hom(2, 3, 2, 5)
    c2 = IvPoly.binomial(2)
    out["eval3+eval5"] = witt_add(e3, e5)(c2) == add_by_expansion(e3, e5, c2) and int(add_by_expansion(e3, e5, c2)) == 28 % 8
    return {"passed": all(out.values()), "checks": out, "cases": cases}


def torsion(quick: bool) -> dict:
    out = {}
    for p in (2, 3, 5):
        r = torsion_argument_check(p)
        F = RatPoly([0, -1] + [0] * (p - 2) + [1]) * Fraction(1, p)
        lhs = [F(p * x) for x in range(-3, 4)]
        rhs = [p ** (p - 1) * x ** p - x for x in range(-3, 4)]
        out[str(p)] = r["verdict"] == "pass" and lhs == rhs
    return {"passed": all(out.values()), "primes": out}


def bin_truncation(quick: bool) -> dict:
    report = bin_compare_witt(2, 4, sweep=8)
    integral = True
    for N in range(1, (5 if quick else 8) + 1):
        t = universal_polys(N)
        polys = list(t.sum) + list(t.product) + [q for v in t.adams.values() for q in v]
        integral &= all(q.has_integer_coefficients() for q in polys)
    keys = ("embedded_contained", "additive", "multiplicative", "bijection")
    return {
        "passed": report["verdict"] == "pass" and integral and all(report[k] for k in keys),
        "fixed_count": report["fixed_count"],
        "embedded_count": report["embedded_count"],
        "tables_integral": integral,
    }


CRITERIA = (
    Criterion(1, "basis round-trip", 5.0, basis_round_trip),
    Criterion(2, "co-operation soundness", 10.0, cooperation_soundness),
    Criterion(3, "Vandermonde identity", 1.0, vandermonde),
    Criterion(4, "biring axioms", 30.0, biring_axioms),
    Criterion(5, "plethory axioms", 30.0, plethory_axioms),
    Criterion(6, "theta_2 surjectivity", 20.0, theta_surjectivity),
    Criterion(7, "WPC verdicts", 5.0, wpc_verdicts),
    Criterion(8, "Witt ring at truncation", 10.0, witt_ring),
    Criterion(9, "torsion argument", 1.0, torsion),
    Criterion(10, "Bin at truncation", 60.0, bin_truncation),
)


def run_criterion(c: Criterion, quick: bool = False) -> dict:
    start = time.perf_counter()
    try:
        detail = c.run(quick)
        error = None
    except Exception as exc:  # noqa: BLE001 - a crash is a failed criterion
        detail, error = {"passed": False}, f"{type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - start
    row = {
        "criterion": c.number,
        "name": c.name,
        "limit_seconds": c.limit,
        "seconds": round(seconds, 3),
        "within_limit": seconds < c.limit,
        "passed": bool(detail.pop("passed")) and seconds < c.limit,
        "detail": detail,
    }
    if error:
        row["error"] = error
    return row


def run_suite(name: str) -> dict:
    if name not in SUITES:
        raise SchemaError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}", "suite")
    rows = [run_criterion(c, quick=name == "quick") for c in CRITERIA]
    return {"suite": name, "criteria": rows, "passed": all(r["passed"] for r in rows)}


def format_row(row: dict) -> str:
    status = "PASS" if row["passed"] else "FAIL"
    return f"[{status}] {row['criterion']:>2}. {row['name']} ({row['seconds']:.2f}s / {row['limit_seconds']:g}s)"
