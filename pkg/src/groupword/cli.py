"""Command-line interface.

Exit codes: 0 when a verdict was computed (negative verdicts included),
1 on usage errors, 2 when a budget or unsupported-configuration error
prevented the computation.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .errors import BudgetExceeded, Unsupported
from .groups import coset_for, ensure_enumerated
from .report import dumps, envelope, factored_factorial_power
from .specdsl import parse_group_spec, parse_outer_spec
from .words import parse_word

DEFAULT_SEED = 20240501
DEFAULT_MAX_TUPLES = 10**10
DEFAULT_MAX_ORDER = 2 * 10**6


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> _Parser:
    p = _Parser(prog="groupword",
                description="Word maps, permutation support statistics and "
                            "nonsolvable length for finite groups")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--json", action="store_true",
                   help="JSON output (the default; kept for compatibility)")
    p.add_argument("--text", action="store_true", help="human-readable summary")
    p.add_argument("--max-tuples", type=int, default=DEFAULT_MAX_TUPLES)
    p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="order, exponent and fingerprint")
    g.add_argument("--group", required=True)

    f = sub.add_parser("fibers", help="word-map fiber distribution")
    f.add_argument("--word", required=True)
    f.add_argument("--group", required=True)
    f.add_argument("--exact", action="store_true")
    f.add_argument("--samples", type=int)

    i = sub.add_parser("identity", help="does the group satisfy w = 1?")
    i.add_argument("--word", required=True)
    i.add_argument("--group", required=True)
    i.add_argument("--rho", help="optional probabilistic threshold num/den")

    c = sub.add_parser("coset", help="coset value set and constancy")
    c.add_argument("--word", required=True)
    c.add_argument("--simple", required=True)
    c.add_argument("--outer", required=True,
                   help="semicolon-separated classes, e.g. '1,1;0,0' or '0;1'")

    wm = sub.add_parser("wmb", help="search outer-class tuples for a coset identity")
    wm.add_argument("--word", required=True)
    wm.add_argument("--simple", required=True)

    b = sub.add_parser("bad-scan", help="witnessed bad divisors of an exponent")
    b.add_argument("--exponent", type=int, required=True)
    b.add_argument("--catalog", required=True, help="comma-separated simple specs")

    ps = sub.add_parser("perm-stats", help="support statistics and bounds")
    ps.add_argument("--group", required=True)
    ps.add_argument("--thresholds", default="0,1,2,3,4")
    ps.add_argument("--eps", default="1/2")

    lam = sub.add_parser("lambda", help="nonsolvable length")
    lam.add_argument("--group", required=True)
    lam.add_argument("--engine", choices=["auto", "enum", "bsgs"], default="auto")

    for name in ("radical", "socle", "perm-part"):
        s = sub.add_parser(name)
        s.add_argument("--group", required=True)

    v = sub.add_parser("verify-paper", help="run the acceptance checks")
    v.add_argument("--filter", default="")
    v.add_argument("--slow", action="store_true",
                   help="include the PSL2(81) coset exponent")
    return p


def _config(args) -> dict:
    return {"seed": args.seed, "max_tuples": args.max_tuples,
            "max_order": args.max_order, "threads": args.threads}


def cmd_group(args) -> dict:
    G = parse_group_spec(args.group)
    result = {"order": G.order, "engine": type(G).__name__,
              "kind": G.ops.kind}
    if G.is_perm_group():
        result["degree"] = G.ops.degree
    if G.order <= args.max_order:
        E = ensure_enumerated(G, cap=args.max_order)
        result["exponent"] = E.exponent()
        from collections import Counter

        result["element_order_counts"] = dict(
            sorted(Counter(E.ops.order(x) for x in E.elements).items()))
    return result


def cmd_fibers(args) -> dict:
    from .wordmap import fiber_distribution, fiber_estimate

    w = parse_word(args.word)
    G = parse_group_spec(args.group)
    if args.samples and not args.exact:
        return {"mode": "estimate",
                **fiber_estimate(w, G, samples=args.samples, seed=args.seed)}
    dist = fiber_distribution(w, G, max_tuples=args.max_tuples,
                              threads=args.threads)
    E = dist.group
    fibers = sorted(dist.counts.items(), key=lambda kv: (-kv[1], kv[0]))
    top = [{"element": E.ops.fmt(E.elements[i]), "count": n,
            "proportion": Fraction(n, dist.total)} for i, n in fibers[:24]]
    g, p = dist.argmax()
    return {"mode": "exact", "total_tuples": dist.total,
            "distinct_values": len(dist.counts),
            "argmax": {"element": E.ops.fmt(g), "proportion": p},
            "top_fibers": top}


def cmd_identity(args) -> dict:
    from .wordmap import satisfies_identity, satisfies_prob_identity

    w = parse_word(args.word)
    G = parse_group_spec(args.group)
    if args.rho:
        num, _, den = args.rho.partition("/")
        rho = Fraction(int(num), int(den or "1"))
        rep = satisfies_prob_identity(w, G, rho, max_tuples=args.max_tuples,
                                      threads=args.threads)
        return {"verdict": rep["verdict"], "rho": rho, "p_max": rep["p_max"],
                "argmax": rep["argmax"]}
    ok, witness = satisfies_identity(w, G, max_tuples=args.max_tuples)
    return {"verdict": ok, "witness": witness}


def cmd_coset(args) -> dict:
    from .wordmap import coset_value_set, is_coset_identity

    w = parse_word(args.word)
    outers = [parse_outer_spec(args.simple, o)
              for o in args.outer.split(";") if o.strip()]
    cosets = [coset_for(args.simple, o) for o in outers]
    if len(cosets) == 1 and len(w.variables()) > 1:
        cosets = cosets * len(w.variables())
    scan = coset_value_set(w, cosets, threads=args.threads)
    constant = scan.singleton
    return {"verdict": constant, "values_seen": len(scan.values),
            "complete_scan": scan.complete,
            "values": [cosets[0].aut_ops.fmt(v) for v in scan.values][:2]}


def cmd_wmb(args) -> dict:
    from .wordmap import wmb_refute

    w = parse_word(args.word)
    rep = wmb_refute(w, args.simple, threads=args.threads)
    rep["verdict"] = "coset identity found" if rep["witness"] else \
        "no coset identity over this group"
    return rep


def cmd_bad_scan(args) -> dict:
    from .wordmap import bad_exponent_scan

    catalog = [s.strip() for s in args.catalog.split(",") if s.strip()]
    rep = bad_exponent_scan(args.exponent, catalog, threads=args.threads)
    rep["verdict"] = rep["witnessed_bad_nonempty"]
    return rep


def cmd_perm_stats(args) -> dict:
    from math import factorial

    from .permstat import (
        f_bound_parts,
        floor_sqrt_times_rational,
        moments,
        order_at_most_f_bound,
    )

    G = parse_group_spec(args.group)
    thresholds = [int(t) for t in args.thresholds.split(",")]
    num, _, den = args.eps.partition("/")
    eps = Fraction(int(num), int(den or "1"))
    st = moments(G, sb_thresholds=thresholds, budget=args.max_order)
    c_bound = 2 * (st.c - 1) if st.c > 1 else None
    rho0 = Fraction(st.sb_counts[thresholds[0]], st.order)
    base, power = f_bound_parts(rho0, thresholds[0])
    first = factorial(int(Fraction(st.t) / rho0 + thresholds[0]))
    second = factorial(floor_sqrt_times_rational(
        st.r - st.t**2, rho0.denominator, rho0.numerator) + st.t + thresholds[0])
    verdicts = {
        "order_le_c_factorial": st.order <= factorial(st.c),
        "supp_le_2c_minus_2": True if c_bound is None else st.supp_p <= c_bound,
        "order_le_f_bound": order_at_most_f_bound(st.order, rho0, thresholds[0]),
        "order_le_first_moment": st.order <= first,
        "order_le_second_moment": st.order <= second,
    }
    return {
        "degree": st.degree, "order": st.order, "t": st.t, "r": st.r,
        "c": st.c, "supp_P": st.supp_p,
        "orbit_sizes": list(st.orbit_sizes),
        "mean_fix": st.mean_fix, "mean_fix_sq": st.mean_fix_sq,
        "sb_counts": {str(k): v for k, v in st.sb_counts.items()},
        "bounds": {
            "thm_order": factorial(st.c),
            "thm_supp": c_bound,
            "f_rho_C": factored_factorial_power(base, power),
            "moment_order_bounds": {"first": first, "second": second},
            "eps": eps,
        },
        "verdicts": verdicts,
    }


def cmd_lambda(args) -> dict:
    from .structure import nonsolvable_length

    G = parse_group_spec(args.group)
    rep = nonsolvable_length(G, engine=args.engine)
    return {"lambda": rep.lam, "engine": rep.engine,
            "levels": [{"k": l.k, "G": l.g_order, "R": l.r_order,
                        "H": l.h_order, "T": l.t_order, "path": l.path}
                       for l in rep.levels]}


def cmd_subgroups(args, which: str) -> dict:
    from .structure import permutation_part, socle, solvable_radical

    G = parse_group_spec(args.group)
    E = ensure_enumerated(G, cap=args.max_order)
    if which == "radical":
        sub = solvable_radical(E)
        return {"order": sub.order,
                "generators": [E.ops.fmt(g) for g in sub.gens]}
    if which == "socle":
        sub = socle(E)
        return {"order": sub.order,
                "generators": [E.ops.fmt(g) for g in sub.gens]}
    part = permutation_part(E)
    return {
        "order": part.P.order,
        "n_factors": part.n_factors,
        "isotype_orders": part.isotype_orders,
        "mpo": part.mpo,
        "generators": [part.P.ops.fmt(g) for g in part.P.gens],
        "factor_orders": [f.order for f in part.decomposition.factors],
    }


def cmd_verify(args) -> tuple[dict, int]:
    from .verify import run_checks

    rep = run_checks(filter_text=args.filter, threads=args.threads,
                     slow=args.slow)
    for row in rep["checks"]:
        status = "PASS" if row["ok"] else "FAIL"
        print(f"{status}  {row['id']}  ({row['seconds']}s)", file=sys.stderr)
    return rep, (0 if rep["failed"] == 0 else 3)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = {k: v for k, v in vars(args).items()
              if k not in ("command", "threads", "seed", "json", "text",
                           "max_tuples", "max_order")}
    try:
        code = 0
        if args.command == "group":
            result = cmd_group(args)
        elif args.command == "fibers":
            result = cmd_fibers(args)
        elif args.command == "identity":
            result = cmd_identity(args)
        elif args.command == "coset":
            result = cmd_coset(args)
        elif args.command == "wmb":
            result = cmd_wmb(args)
        elif args.command == "bad-scan":
            result = cmd_bad_scan(args)
        elif args.command == "perm-stats":
            result = cmd_perm_stats(args)
        elif args.command == "lambda":
            result = cmd_lambda(args)
        elif args.command in ("radical", "socle", "perm-part"):
            result = cmd_subgroups(args, args.command)
        elif args.command == "verify-paper":
            result, code = cmd_verify(args)
        else:  # pragma: no cover
            parser.error(f"unknown command {args.command}")
    except (BudgetExceeded, Unsupported) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    out = envelope(args.command, _config(args), inputs, result)
    if args.text:
        _print_text(out)
    else:
        sys.stdout.write(dumps(out))
    return code


def _print_text(out: dict) -> None:
    def walk(node, indent=0):
        pad = "  " * indent
        if isinstance(node, dict):
            for k, v in node.items():
                if isinstance(v, (dict, list)):
                    print(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    print(f"{pad}{k}: {v}")
        elif isinstance(node, list):
            for v in node:
                walk(v, indent)
        else:
            print(f"{pad}{node}")

    print(f"groupword {out['command']}")
    walk(out["result"])


if __name__ == "__main__":
    raise SystemExit(main())
