"""Command line front end.

Exit status: 0 on success, 2 on bad arguments, 1 when two engines that must
agree do not.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from .adams import psi_apply, theta_apply
from .groups import element_order_oracle, jo_group, jo_local_group, to_membership
from .jorder import (
    ElementSpec,
    FormulaDisagreement,
    compare_closed_form,
    full_jorder,
    generator_valuation_closed,
    jorder_valuation_formula1,
    jorder_valuation_formula2,
)
from .valuation import find_kp, is_prime, primes_upto


class UsageError(Exception):
    pass


def _parse_poly(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"--poly must be comma separated integers, got {text!r}")


def _spec(args) -> ElementSpec:
    if args.poly is None:
        raise UsageError("--poly is required")
    try:
        return ElementSpec(args.m, tuple(_parse_poly(args.poly)))
    except ValueError as e:
        raise UsageError(str(e))


def _prime(args, required=True) -> int | None:
    if args.prime is None:
        if required:
            raise UsageError("--prime is required")
        return None
    if not is_prime(args.prime):
        raise UsageError(f"--prime {args.prime} is not prime")
    return args.prime


def _check_m(m: int):
    if m < 2 or m % 2:
        raise UsageError(f"--m must be even and >= 2, got {m}")


def cmd_jorder(args):
    report = full_jorder(_spec(args), verify=args.verify)
    data = report.to_dict()
    lines = [f"J-order of {report.m_vec} in KO~(CP^{report.m}): {report.order}"]
    for p, v in sorted(report.per_prime.items()):
        line = f"  p={p}: nu={v}"
        if args.verify:
            line += (f" (formula II {report.cross_checks['formula2'][p]},"
                     f" oracle {report.cross_checks['oracle'][p]})")
        lines.append(line)
    return data, "\n".join(lines)


def cmd_group(args):
    _check_m(args.m)
    p = _prime(args, required=False)
    G = jo_group(args.m) if p is None else jo_local_group(p, args.m)
    data = {
        "m": args.m,
        "prime": p,
        "group": G.to_list(),
        "summands": [str(q) for q in G.primary_decomposition()],
    }
    return data, G.render(" + ")


def _operator(args, op):
    spec = _spec(args)
    k = args.k if args.k is not None else 3
    if k < 1 or k % 2 == 0:
        raise UsageError("--k must be a positive odd integer")
    image = op(k, spec.poly())
    data = {"m": spec.m, "k": k, "poly": list(spec.m_vec),
            "image": image.to_list(), "text": str(image)}
    return data, str(image)


def cmd_psi(args):
    return _operator(args, psi_apply)


def cmd_theta(args):
    return _operator(args, theta_apply)


def cmd_order_oracle(args):
    spec, p = _spec(args), _prime(args)
    v = element_order_oracle(p, spec)
    data = {"m": spec.m, "poly": list(spec.m_vec), "prime": p,
            "valuations": {str(p): v}, "order": str(p**v)}
    return data, f"p={p}: nu={v}, order {p**v}"


def cmd_member(args):
    spec, p = _spec(args), _prime(args)
    member = to_membership(p, spec)
    data = {"m": spec.m, "poly": list(spec.m_vec), "prime": p, "member": member}
    return data, "true" if member else "false"


def cmd_gen_order(args):
    _check_m(args.m)
    p, t = _prime(args), args.m // 2
    if args.n is None or not 1 <= args.n <= t:
        raise UsageError(f"--n must lie in 1..{t}")
    if p not in (2, 3) and not args.experimental_p:
        raise UsageError("gen-order needs --prime 2 or 3 (or --experimental-p)")
    if p in (2, 3):
        v = generator_valuation_closed(p, args.n, t)
        data = {"m": args.m, "n": args.n, "prime": p, "valuations": {str(p): v}}
        return data, f"nu_{p}(b(y^{args.n})) = {v}"
    cmp = compare_closed_form(p, args.n, t)
    data = {"m": args.m, "n": args.n, "prime": p, "closed": cmp["closed"],
            "recursion": cmp["recursion"], "agree": cmp["agree"]}
    text = (f"closed form {cmp['closed']}, recursion {cmp['recursion']}: "
            + ("agree" if cmp["agree"] else "DISAGREE (unproven range)"))
    return data, text


def selfcheck(max_m: int = 8, samples: int = 10, seed: int = 0) -> list[str]:
    """Run the three engines on small cases; return failure descriptions."""
    rng = random.Random(seed)
    failures = []
    for m in range(2, max_m + 1, 2):
        t = m // 2
        specs = [ElementSpec.monomial(m, n) for n in range(1, t + 1)]
        specs += [ElementSpec(m, tuple(rng.randint(-100, 100) for _ in range(t)))
                  for _ in range(samples)]
        for p in primes_upto(m + 1):
            ctx = find_kp(p)
            for spec in specs:
                a = jorder_valuation_formula1(ctx, spec)
                b = jorder_valuation_formula2(ctx, spec)
                c = element_order_oracle(p, spec)
                if not a == b == c:
                    failures.append(f"m={m} p={p} {spec.m_vec}: {a} {b} {c}")
    return failures


def cmd_selfcheck(args):
    failures = selfcheck(args.max_m)
    if failures:
        raise FormulaDisagreement("; ".join(failures))
    return {"max_m": args.max_m, "ok": True}, f"selfcheck passed up to m={args.max_m}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jgroup", description="J-orders and J-groups of complex projective spaces"
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help, m=True, poly=False, prime=False, k=False):
        sp = sub.add_parser(name, help=help)
        if m:
            sp.add_argument("--m", type=int, required=True, help="even dimension m")
        if poly:
            sp.add_argument("--poly", help="coefficients m_1,...,m_t of y^1..y^t")
        if prime:
            sp.add_argument("--prime", type=int)
        if k:
            sp.add_argument("--k", type=int, help="odd operator index (default 3)")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.set_defaults(func=fn, subparser=sp)
        return sp

    verb("jorder", cmd_jorder, "J-order of an element", poly=True).add_argument(
        "--verify", action="store_true", help="also run formula II and the SNF oracle")
    verb("group", cmd_group, "structure of JO~(CP^m) or its p-part", prime=True)
    verb("psi", cmd_psi, "Adams operation psi^k", poly=True, k=True)
    verb("theta", cmd_theta, "Bott class theta_k", poly=True, k=True)
    verb("order-oracle", cmd_order_oracle, "p-order from Smith normal form",
         poly=True, prime=True)
    verb("member", cmd_member, "membership in TO(CP^m)_(p)", poly=True, prime=True)
    g = verb("gen-order", cmd_gen_order, "closed form for the order of y^n", prime=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--experimental-p", action="store_true",
                   help="allow p >= 5 and compare against the recursion")
    s = verb("selfcheck", cmd_selfcheck, "cross-check all engines", m=False)
    s.add_argument("--max-m", type=int, default=8)
    return parser


def _glue_values(argv: list[str]) -> list[str]:
    # lets "--poly -40,2" through; argparse would take -40,2 for an option
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--poly" and i + 1 < len(argv):
            out.append(f"--poly={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_values(argv))
    try:
        data, text = args.func(args)
    except UsageError as e:
        args.subparser.print_usage(sys.stderr)
        print(f"jgroup: error: {e}", file=sys.stderr)
        return 2
    except FormulaDisagreement as e:
        print(f"jgroup: engines disagree: {e}", file=sys.stderr)
        return 1
    print(json.dumps(data) if args.format == "json" else text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
