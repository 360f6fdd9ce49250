"""Command-line entry point: ``ellipticlie <command> ...``.

Exit status is 0 when the computed statement holds, 1 when it fails and 2 on
usage errors.  ``--json`` prints a deterministic report (keys sorted, all
numbers as rational strings); timings are included only with ``--timing``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import bridge, checks, depth, derivations, periods, relations, weightfilt as wf
from .freelie import ALPHABETS, lyndon_basis, parse_expr, witt_dim
from .scalars import as_rational, dim_cusp_forms, format_rational


class UsageError(ValueError):
    pass


def _mu(text: str) -> tuple:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a multidegree like '2,1', got {text!r}")
    if a < 0 or b < 0:
        raise argparse.ArgumentTypeError("multidegree entries must be >= 0")
    return a, b


def _coeffs(text: str) -> dict:
    """'1:1,4:-1' (index:coeff) or '1,0,0,-1' (consecutive, starting at a = 1)."""
    parts = [p for p in text.split(",") if p.strip()]
    if all(":" in p for p in parts):
        return {int(k): as_rational(v) for k, _, v in (p.partition(":") for p in parts)}
    return {a: as_rational(v) for a, v in enumerate(parts, start=1)}


# ------------------------------------------------------------------ handlers

def cmd_lie(args) -> tuple[bool, dict]:
    alphabet = ALPHABETS[args.alphabet]
    if args.action == "basis":
        basis = lyndon_basis(alphabet, args.mu)
        return True, {
            "alphabet": alphabet.name,
            "mu": list(args.mu),
            "dim": len(basis),
            "witt_dim": witt_dim(args.mu),
            "basis": [x.to_json(lyndon=True) for x in basis],
        }
    x = parse_expr(args.expr, alphabet)
    return True, {
        "expr": args.expr,
        "element": x.to_json(),
        "lyndon": x.to_json(lyndon=True),
        "multidegrees": [list(m) for m in x.multidegrees()],
    }


def cmd_epsilon(args) -> tuple[bool, dict]:
    if args.n < 0 or args.n % 2:
        raise UsageError("--n must be an even integer >= 0 (the index 2n)")
    if args.check:
        d = derivations.epsilon_check(args.n)
    elif args.lower:
        d = derivations.lowered(args.n, args.lower)
    else:
        d = derivations.epsilon_std(args.n)
    der0 = derivations.is_der0(d)
    return der0, {
        "index": args.n,
        "variant": "check" if args.check else ("lowered" if args.lower else "standard"),
        "lower": args.lower,
        "derivation": d.to_json(lyndon=args.lyndon),
        "annihilates_theta": der0,
    }


def cmd_depth(args) -> tuple[bool, dict]:
    if args.action == "basis":
        if args.alphabet == "AT":
            sub = depth.depth_basis_AT(args.d, args.mu, args.max_degree, args.method)
        else:
            sub = depth.depth_basis_X(args.d, args.mu, args.max_degree)
        return True, {"max_degree": args.max_degree, **sub.to_json()}
    if args.action == "member":
        x = parse_expr(args.expr, ALPHABETS[args.alphabet])
        member = depth.depth_membership(x, args.d)
        return True, {"expr": args.expr, "d": args.d, "member": member}
    r = depth.convolution_check(args.m, args.max_degree)
    return r["ok"], r


def cmd_bridge(args) -> tuple[bool, dict]:
    K = args.truncation
    if args.action == "embed":
        expr = args.expr_opt or args.expr
        if not expr:
            raise UsageError("bridge embed needs an expression")
        x = parse_expr(expr, ALPHABETS["X"])
        img = bridge.embed(x, K)
        return True, {"expr": expr, "K": K, "image": img.to_json()}
    if args.action == "r0":
        total = bridge.r0(K) + bridge.r1(K) + bridge.rinf(K)
        return total.is_zero(), {"K": K, "r0": bridge.r0(K).to_json(), "sum_zero": total.is_zero()}
    if args.action == "strictness":
        r = bridge.strictness_check(args.d, args.mu, K)
        return r["status"] != "fail", r
    coeffs = bridge.auto_coeffs(args.weight) if args.coeffs == "auto" else _coeffs(args.coeffs)
    r = bridge.ihara_takao(args.weight, coeffs, args.d, K)
    return r["holds"], r


def cmd_cocycles(args) -> tuple[bool, dict]:
    if args.weight < 2 or args.weight % 2:
        raise UsageError("--weight must be even and >= 2")
    deg = args.weight - 2
    Z = periods.cuspidal_cocycles(deg)
    plus, minus = periods.frobenius_split(Z)
    if args.plus:
        basis, part = plus, "plus"
    elif args.minus:
        basis, part = minus, "minus"
    else:
        basis, part = Z, "all"
    s = dim_cusp_forms(args.weight) if args.weight >= 4 else 0
    ok = len(Z) == 2 * s + 1 and len(plus) == s + 1 and len(minus) == s
    return ok, {
        "weight": args.weight,
        "degree": deg,
        "part": part,
        "dim": len(basis),
        "dim_Z": len(Z),
        "dim_S": s,
        "basis": [v.to_json() for v in basis],
    }


def _strip(r: dict) -> dict:
    return {k: v for k, v in r.items() if not k.startswith("_")}


def cmd_relations(args) -> tuple[bool, dict]:
    if args.action == "quadratic":
        r = relations.pollack_quadratic_kernel(args.weight)
        return r["reduced_dim"] == dim_cusp_forms(args.weight) and r["matches_cocycles"], _strip(r)
    if args.action == "depth":
        r = relations.pollack_depth_kernel(args.weight, args.d)
        return r["matches_cocycles"] and all(r["depth3_certified"]), _strip(r)
    if args.action == "delta-cubic":
        perturb = None
        if args.perturb:
            form, i, delta = args.perturb.split(":")
            if form not in ("raw", "head", "tail"):
                raise UsageError("perturbation form must be raw, head or tail")
            perturb = (form, int(i), as_rational(delta))
        r = relations.delta_cubic_verify(perturb)
        return r["pass"], r
    try:
        r = relations.arithmetic_head(args.m, args.n)
    except relations.PresentationMismatch as exc:
        return False, {"m": args.m, "n": args.n, "error": str(exc)}
    return r["pass"], r


def _load_json(path: str):
    with open(path) as f:
        return json.load(f)


def cmd_wtfilt(args) -> tuple[bool, dict]:
    N = wf.LinearMap(tuple(tuple(as_rational(x) for x in row) for row in _load_json(args.matrix)))
    if not args.relative:
        F = wf.recenter(wf.weight_filtration(N), args.center)
        return True, {"matrix": N.to_json(), "center": args.center, "filtration": F.to_json(),
                      "graded_dims": {str(k): v for k, v in F.graded_dims().items()}}
    if not args.w:
        raise UsageError("--relative needs --w FILE")
    W = wf.Filtration.from_json(_load_json(args.w), N.dim)
    res = wf.relative_candidate(W, N, args.max_dim)
    if isinstance(res, wf.NotFound):
        return False, {"matrix": N.to_json(), "W": W.to_json(), **res.to_json()}
    return True, {"matrix": N.to_json(), "W": W.to_json(), "found": True, "M": res.to_json()}


def cmd_verify_all(args):
    only = set(args.only) if args.only else None
    results = checks.run_all(args.max_weight, args.truncation, fail_fast=not args.keep_going, only=only)
    ok = all(r.ok for r in results)
    payload = {
        "max_weight": args.max_weight,
        "K": args.truncation,
        "checks": [r.to_json(args.timing) for r in results],
    }
    if not args.json:
        print(f"{'#':>3}  {'check':<22} {'status':<7} {'seconds':>8} {'budget':>7}")
        for r in results:
            print(f"{r.number:>3}  {r.name:<22} {r.status:<7} {r.seconds:>8.2f} {r.budget:>7.0f}")
        failed = next((r for r in results if not r.ok), None)
        if failed is not None:
            print(f"\nfirst failure: criterion {failed.number} ({failed.name})")
            print(json.dumps(failed.detail, indent=2, sort_keys=True))
        print(f"\nstatus: {'pass' if ok else 'fail'}")
    return ok, payload


HANDLERS = {
    "lie": cmd_lie,
    "epsilon": cmd_epsilon,
    "depth": cmd_depth,
    "bridge": cmd_bridge,
    "cocycles": cmd_cocycles,
    "relations": cmd_relations,
    "wtfilt": cmd_wtfilt,
    "verify-all": cmd_verify_all,
}


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings")
    common.add_argument("--max-degree", type=int, default=depth.MAX_DEGREE, help="degree bound for basis computations")
    common.add_argument("--truncation", "--K", "-K", type=int, default=bridge.DEFAULT_K, help="truncation degree K")

    p = argparse.ArgumentParser(prog="ellipticlie", description="Exact computations in L(A,T), L(X0,X1) and Der^0.")
    sub = p.add_subparsers(dest="command", required=True)

    lie = sub.add_parser("lie", help="free Lie algebra bases and coordinates")
    lsub = lie.add_subparsers(dest="action", required=True)
    q = lsub.add_parser("basis", parents=[common])
    q.add_argument("--mu", type=_mu, required=True)
    q.add_argument("--alphabet", "--algebra", choices=["AT", "X"], default="AT")
    q = lsub.add_parser("coords", parents=[common])
    q.add_argument("expr")
    q.add_argument("--alphabet", "--algebra", choices=["AT", "X"], default=None)

    q = sub.add_parser("epsilon", parents=[common], help="the derivations eps_2n")
    q.add_argument("--n", type=int, required=True, help="the even index 2n")
    q.add_argument("--check", action="store_true", help="lowest-weight partner eps_check")
    q.add_argument("--lower", type=int, default=0, help="apply ad_{eps_0} this many times")
    q.add_argument("--lyndon", action="store_true", help="print images in Lyndon coordinates")

    dp = sub.add_parser("depth", help="depth filtrations")
    dsub = dp.add_subparsers(dest="action", required=True)
    q = dsub.add_parser("basis", parents=[common])
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--mu", type=_mu, required=True)
    q.add_argument("--alphabet", "--algebra", choices=["AT", "X"], default="AT")
    q.add_argument("--method", choices=["lyndon", "recursive"], default="lyndon")
    q = dsub.add_parser("member", parents=[common])
    q.add_argument("expr")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--alphabet", "--algebra", choices=["AT", "X"], default="AT")
    q = dsub.add_parser("convolution", parents=[common])
    q.add_argument("--m", type=int, required=True)

    bp = sub.add_parser("bridge", help="genus-0 bridge and Ihara-Takao")
    bsub = bp.add_subparsers(dest="action", required=True)
    q = bsub.add_parser("embed", parents=[common])
    q.add_argument("expr", nargs="?", help="element of L(X0,X1), e.g. '[X0,X1]'")
    q.add_argument("--expr", dest="expr_opt")
    bsub.add_parser("r0", parents=[common])
    q = bsub.add_parser("strictness", parents=[common])
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--mu", type=_mu, required=True)
    q = bsub.add_parser("ihara-takao", parents=[common])
    q.add_argument("--weight", type=int, default=12)
    q.add_argument("--coeffs", default="auto", help="'auto', '1:1,4:-1' or '1,0,0,-1' (a = 1, 2, ...)")
    q.add_argument("--d", type=int, default=3)

    q = sub.add_parser("cocycles", parents=[common], help="cuspidal cocycles of a weight")
    q.add_argument("--weight", type=int, required=True)
    g = q.add_mutually_exclusive_group()
    g.add_argument("--plus", action="store_true")
    g.add_argument("--minus", action="store_true")

    rp = sub.add_parser("relations", help="Pollack relations and the cubic identity")
    rsub = rp.add_subparsers(dest="action", required=True)
    q = rsub.add_parser("quadratic", parents=[common])
    q.add_argument("--weight", type=int, required=True)
    q = rsub.add_parser("depth", parents=[common])
    q.add_argument("--weight", type=int, required=True)
    q.add_argument("--d", type=int, default=3)
    q = rsub.add_parser("delta-cubic", parents=[common])
    q.add_argument("--perturb", help="FORM:INDEX:DELTA with FORM in raw, head, tail")
    q = rsub.add_parser("arithmetic-head", parents=[common])
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--n", type=int, required=True)

    q = sub.add_parser("wtfilt", parents=[common], help="weight filtrations of a nilpotent matrix")
    q.add_argument("--matrix", required=True, help="JSON file: array of rows of rational strings")
    q.add_argument("--center", type=int, default=0)
    q.add_argument("--relative", action="store_true")
    q.add_argument("--w", help="JSON file with the filtration W")
    q.add_argument("--max-dim", type=int, default=wf.MAX_RELATIVE_DIM)

    q = sub.add_parser("verify-all", parents=[common], help="run the acceptance checks")
    q.add_argument("--max-weight", type=int, default=22)
    q.add_argument("--keep-going", action="store_true", help="do not stop at the first failure")
    q.add_argument("--only", type=int, nargs="+", help="criterion numbers to run")
    return p


def _print_human(report: dict) -> None:
    print(f"command: {report['command']}")
    for k, v in sorted(report["payload"].items()):
        text = v if isinstance(v, str) else json.dumps(v, sort_keys=True)
        if len(text) > 200:
            text = text[:197] + "..."
        print(f"  {k}: {text}")
    if "seconds" in report:
        print(f"  seconds: {report['seconds']}")
    print(f"status: {report['status']}")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "lie" and args.action == "coords" and args.alphabet is None:
        args.alphabet = "X" if "X" in args.expr else "AT"
    t = time.perf_counter()
    try:
        ok, payload = HANDLERS[args.command](args)
    except (UsageError, ValueError, KeyError, OSError) as exc:
        print(f"ellipticlie: error: {exc}", file=sys.stderr)
        return 2
    report = {
        "command": " ".join(["ellipticlie"] + list(argv if argv is not None else sys.argv[1:])),
        "status": "pass" if ok else "fail",
        "payload": payload,
    }
    if args.timing:
        report["seconds"] = round(time.perf_counter() - t, 3)
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True, default=_default))
    elif args.command != "verify-all":
        _print_human(json.loads(json.dumps(report, default=_default)))
    return 0 if ok else 1


def _default(x):
    try:
        return format_rational(x)
    except (TypeError, ValueError):
        return str(x)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
