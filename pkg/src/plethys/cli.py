"""Command-line front end.

Every command writes exactly one JSON document (sorted keys, trailing newline)
to standard output or ``--output``; diagnostics go to standard error.  Exit
status: 0 success, 1 malformed input, 2 domain error, 3 budget or cap error.
Parameters may also be supplied as a JSON object via ``--input FILE`` (``-``
for standard input); explicit flags take precedence.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .biring import coadd, comul, int_zn_member, theta_check, verify_biring_axioms
from .errors import NotIntegerValued, NotWpc, PlethysError, SchemaError
from .exact import MultiRatPoly, RatPoly, frac_str, parse_frac
from .ivpoly import DEFAULT_COMPOSE_CAP, IvPoly, compose, from_rational_poly
from .lambda_ring import bin_compare_witt, bin_fixed_points
from .plethory import DEFAULT_BOUND, FinOrder, is_wpc, verify_plethory_axioms, w_lower, w_upper
from .suite import SUITES, format_row, run_suite
from .witt import default_budget, eval_hom, hom_census, torsion_argument_check

SCHEMA_VERSION = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise SchemaError(message, "argv")


def _json_arg(text, field):
    if isinstance(text, (dict, list)):
        return text
    try:
        return json.loads(text)
    except (TypeError, json.JSONDecodeError) as exc:
        raise SchemaError(f"--{field}: invalid JSON ({exc})", field) from None


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise SchemaError(f"missing required parameter --{name.replace('_', '-')}", name)
    return value


def _poly_univariate(args) -> RatPoly | IvPoly:
    obj = _json_arg(_need(args, "poly"), "poly")
    if isinstance(obj, dict) and "basis" in obj:
        return IvPoly.from_json(obj)
    return RatPoly.from_json(obj)


def _ivpoly(args, name="poly") -> IvPoly:
    obj = _json_arg(_need(args, name), name)
    if isinstance(obj, dict) and "basis" in obj:
        return IvPoly.from_json(obj)
    return from_rational_poly(RatPoly.from_json(obj))


def _order(args) -> FinOrder:
    given = _need(args, "order")
    if isinstance(given, str) and given in FinOrder.PRESETS:
        return FinOrder.preset(given)
    obj = _json_arg(given, "order")
    if isinstance(obj, str):
        return FinOrder.preset(obj)
    return FinOrder.from_json(obj)


def _budget(args) -> int:
    return default_budget() if args.budget is None else args.budget


# -- commands ------------------------------------------------------------------------


def cmd_expand(args):
    f = _poly_univariate(args)
    if isinstance(f, IvPoly):
        return {"input": f.to_json(), "expansion": f.to_json(), "monomial": f.to_rational_poly().to_json()}
    return {"input": f.to_json(), "expansion": from_rational_poly(f).to_json()}


def cmd_coadd(args):
    f = _ivpoly(args)
    return {"input": f.to_json(), "expansion": coadd(f).to_json()}


def cmd_comul(args):
    f = _ivpoly(args)
    return {"input": f.to_json(), "expansion": comul(f).to_json()}


def cmd_compose(args):
    f, g = _ivpoly(args), _ivpoly(args, "inner")
    cap = DEFAULT_COMPOSE_CAP if args.degree is None else args.degree
    return {"outer": f.to_json(), "inner": g.to_json(), "composite": compose(f, g, cap=cap).to_json()}


def cmd_member(args):
    obj = _json_arg(_need(args, "poly"), "poly")
    if isinstance(obj, dict) and "terms" in obj:
        P = MultiRatPoly.from_json(obj)
    else:
        P = RatPoly.from_json(obj).substitute(MultiRatPoly.var(0, 1))
    if args.arity is not None and args.arity != P.arity:
        raise SchemaError(f"--arity {args.arity} does not match polynomial arity {P.arity}", "arity")
    T = int_zn_member(P)
    return {"member": True, "arity": P.arity, "expansion": T.to_json()}


def cmd_wpc_check(args):
    A = _order(args)
    bound = DEFAULT_BOUND if args.bound is None else args.bound
    return {"order": A.to_json(), **is_wpc(A, bound).to_json()}


def cmd_w_lower(args):
    A = _order(args)
    bound = DEFAULT_BOUND if args.bound is None else args.bound
    res = w_lower(A, bound, max_iters=8 if args.max_iters is None else args.max_iters)
    out = {
        "status": res.status,
        "bound": bound,
        "lattice": res.order.lattice.to_json(),
        "inverted": list(res.order.inverted),
        "denominators": res.denominators(),
        "added": [[frac_str(x) for x in v] for v in res.added],
    }
    # an unfinished closure is a lattice, not yet a ring
    if res.status == "stabilized":
        out["order"] = res.order.to_json()
    return out


def cmd_w_upper(args):
    A = _order(args)
    bound = DEFAULT_BOUND if args.bound is None else args.bound
    cands = _json_arg(_need(args, "candidates"), "candidates")
    if not isinstance(cands, list) or not all(isinstance(c, list) and len(c) == A.rank for c in cands):
        raise SchemaError(f"--candidates must be a list of length-{A.rank} vectors", "candidates")
    cands = [[parse_frac(x, f"candidates[{i}]") for x in c] for i, c in enumerate(cands)]
    res = w_upper(A, cands, bound, max_iters=16 if args.max_iters is None else args.max_iters)
    return {"bound": bound, "order": res.to_json(), "same_as_input": res.same_ring(A)}


def cmd_theta_check(args):
    return theta_check(_need(args, "arity"), _need(args, "degree"))


def cmd_axioms(args):
    d = _need(args, "degree")
    if args.kind == "plethory":
        return verify_plethory_axioms(d)
    return verify_biring_axioms(d)


def cmd_witt_eval(args):
    p, k, d = _need(args, "prime"), _need(args, "exponent"), _need(args, "degree")
    phi = eval_hom(p, k, d, int(parse_frac(_need(args, "alpha"), "alpha")), args.precision)
    out = {"hom": phi.to_json(), "restriction": [str(x) for x in phi.restriction()]}
    if args.poly is not None:
        out["value"] = str(int(phi(_ivpoly(args))))
    return out


def cmd_witt_census(args):
    return hom_census(_need(args, "prime"), _need(args, "exponent"), _need(args, "degree"), _budget(args))


def cmd_torsion_check(args):
    return torsion_argument_check(_need(args, "prime"))


def cmd_bin_fixed(args):
    m = args.modulus if args.modulus is not None else _need(args, "prime")
    return bin_fixed_points(m, _need(args, "degree"), sweep=args.sweep, budget=_budget(args)).to_json()


def cmd_bin_compare(args):
    return bin_compare_witt(_need(args, "prime"), _need(args, "degree"), sweep=args.sweep, budget=_budget(args))


COMMANDS = {
    "expand": (cmd_expand, "rational polynomial -> binomial-basis expansion"),
    "coadd": (cmd_coadd, "co-addition f(X+Y) in the product-binomial basis"),
    "comul": (cmd_comul, "co-multiplication f(XY) in the product-binomial basis"),
    "compose": (cmd_compose, "f o g in the binomial basis"),
    "member": (cmd_member, "membership in Int(Z^n) with product-binomial expansion"),
    "wpc-check": (cmd_wpc_check, "binomial-closure verdict for an order"),
    "w-lower": (cmd_w_lower, "iterated binomial closure"),
    "w-upper": (cmd_w_upper, "largest binomially closed subring from candidates"),
    "theta-check": (cmd_theta_check, "surjectivity of the tensor-power map at bounded degree"),
    "axioms": (cmd_axioms, "biring (default) or plethory axiom suite"),
    "witt-eval": (cmd_witt_eval, "evaluation homomorphism Int(Z) -> Z/p^k"),
    "witt-census": (cmd_witt_census, "enumerate evaluation homomorphisms"),
    "torsion-check": (cmd_torsion_check, "exact checks with F = (X^p - X)/p"),
    "bin-fixed": (cmd_bin_fixed, "Adams-fixed truncated series and binomial elements"),
    "bin-compare": (cmd_bin_compare, "binomial elements versus evaluation homomorphisms"),
}

_PARAMS = ("poly", "inner", "arity", "degree", "prime", "exponent", "precision", "bound", "budget",
           "order", "candidates", "modulus", "alpha", "max_iters", "kind", "sweep")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="plethys", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"plethys {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
    p = sub.add_parser("suite", help="run the acceptance battery")
    p.add_argument("name", nargs="?", default=None, help=f"one of {', '.join(SUITES)}")
    p.add_argument("--output", metavar="FILE")
    return parser


def _add_common(p):
    p.add_argument("--poly", help="polynomial JSON (binomial basis, {'coeffs': [...]} or {'arity','terms'})")
    p.add_argument("--inner", help="inner polynomial JSON for compose")
    p.add_argument("--arity", type=int)
    p.add_argument("--degree", type=int, help="degree bound, or compose cap")
    p.add_argument("--prime", type=int)
    p.add_argument("--exponent", type=int, help="k in Z/p^k")
    p.add_argument("--precision", type=int, help="p-adic precision M")
    p.add_argument("--bound", type=int, help="binomial degree bound N")
    p.add_argument("--budget", type=int, help="enumeration budget (default: PLETHYS_BUDGET or 2^20)")
    p.add_argument("--order", help="preset (Z, Z[i], Z[1/2], ZxZ) or order JSON")
    p.add_argument("--candidates", help="JSON list of candidate vectors")
    p.add_argument("--modulus", type=int)
    p.add_argument("--alpha", help="integer residue")
    p.add_argument("--max-iters", dest="max_iters", type=int)
    p.add_argument("--kind", choices=("biring", "plethory"), default="biring")
    p.add_argument("--sweep", type=int, help="binomial elements c in [0, sweep)")
    p.add_argument("--input", metavar="FILE", help="JSON object of parameters ('-' for stdin)")
    p.add_argument("--output", metavar="FILE")


def _merge_input(args):
    if getattr(args, "input", None) is None:
        return
    try:
        text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
    except OSError as exc:
        raise SchemaError(f"--input: {exc}", "input") from None
    params = _json_arg(text, "input")
    if not isinstance(params, dict):
        raise SchemaError("--input must hold a JSON object", "input")
    for key, value in params.items():
        attr = key.replace("-", "_")
        if attr not in _PARAMS:
            raise SchemaError(f"--input: unknown parameter {key!r}", key)
        if getattr(args, attr, None) is None:
            if isinstance(value, (dict, list)):
                value = json.dumps(value)
            setattr(args, attr, value)


def _error_doc(exc) -> dict:
    err = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, SchemaError):
        err["field"] = exc.field
    if isinstance(exc, NotIntegerValued):
        w = exc.witness
        err["witness"] = list(w) if isinstance(w, tuple) else w
        err["value"] = frac_str(Fraction(exc.value)) if exc.value is not None else None
    if isinstance(exc, NotWpc):
        err["verdict"] = exc.verdict.to_json()
    return err


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _emit(doc, output):
    text = dumps(doc)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    command = None
    output = None
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        output = getattr(args, "output", None)
        if command is None:
            raise SchemaError("no command given", "command")
        if command == "suite":
            if not args.name:
                raise SchemaError(f"suite name required; choose from {', '.join(SUITES)}", "suite")
            report = run_suite(args.name)
            for row in report["criteria"]:
                print(format_row(row), file=sys.stderr)
            _emit({"schema_version": SCHEMA_VERSION, "command": command, "result": report}, output)
            return 0 if report["passed"] else 4
        _merge_input(args)
        result = COMMANDS[command][0](args)
        _emit({"schema_version": SCHEMA_VERSION, "command": command, "result": result}, output)
        return 0
    except (PlethysError, ValueError) as exc:
        code = exc.exit_code if isinstance(exc, PlethysError) else 1
        print(f"plethys: {type(exc).__name__}: {exc}", file=sys.stderr)
        _emit({"schema_version": SCHEMA_VERSION, "command": command, "error": _error_doc(exc)}, output)
        return code


if __name__ == "__main__":
    sys.exit(main())
