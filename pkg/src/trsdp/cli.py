"""Command-line front end: ``trsdp {check,dps,switch,simulate,chain-convert}``.

Exit codes: 0 success/affirmative, 1 negative classification or refused
hypothesis, 2 parse or usage error, 3 fuel-inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .dp import ChainModel, DpProblem, TERMINATION, compute_dps, switch_processor, validate_chain
from .errors import FuelExhausted, MalformedChainError, ParseError, PreconditionViolated, TrsError
from .rewriting import FULL_LEFTMOST, STRATEGIES, Fuel, find_rewrite_path, is_normal_form, normalize
from .simulation import chain_to_innermost, innermost_simulate
from .textio import format_dp_problem, format_position, format_trace, parse_term, parse_trace, read_problem
from .trs import collapsing_rules, constructors, find_inner_overlaps, non_right_linear_rules

EXIT_OK, EXIT_NO, EXIT_PARSE, EXIT_FUEL = 0, 1, 2, 3


def _names(syms) -> List[str]:
    return sorted(f"{s.name}/{s.arity}" for s in syms)


def _trace_json(tr) -> dict:
    return {
        "initial": str(tr.initial),
        "steps": [{"position": format_position(s.position), "rule": s.rule_index,
                   "set": s.rule_set, "term": str(s.target)} for s in tr.steps],
    }


def _emit(args, text: str, data: dict):
    if args.json:
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        print(text)


def cmd_check(args, pf) -> int:
    R = pf.rules
    nrl = non_right_linear_rules(R)
    coll = collapsing_rules(R)
    overlaps = find_inner_overlaps(R)
    lines = []
    # rules are numbered from 1 in reports
    lines.append("right-linear: " + ("yes" if not nrl else f"no (rule {nrl[0] + 1}: {R[nrl[0]]})"))
    lines.append("non-collapsing: " + ("yes" if not coll else f"no (rule {coll[0] + 1}: {R[coll[0]]})"))
    lines.append("overlay: " + ("yes" if not overlaps else "no"))
    for w in overlaps:
        lines.append(f"  {w}")
    lines.append("defined symbols: " + ", ".join(_names(R.defined)))
    lines.append("constructors: " + ", ".join(_names(constructors(R))))
    rlo = not nrl and not overlaps
    lines.append("right-linear overlay: " + ("yes" if rlo else "no"))
    data = {
        "right_linear": not nrl,
        "non_right_linear_rules": [i + 1 for i in nrl],
        "non_collapsing": not coll,
        "collapsing_rules": [i + 1 for i in coll],
        "overlay": not overlaps,
        "overlaps": [str(w) for w in overlaps],
        "defined_symbols": _names(R.defined),
        "constructors": _names(constructors(R)),
        "right_linear_overlay": rlo,
    }
    _emit(args, "\n".join(lines), data)
    return EXIT_OK if rlo else EXIT_NO


def cmd_dps(args, pf) -> int:
    P = compute_dps(pf.rules)
    text = "(PAIRS\n" + "".join(f"  {r}\n" for r in P) + ")"
    _emit(args, text, {"pairs": [str(r) for r in P]})
    return EXIT_OK


def cmd_switch(args, pf) -> int:
    if pf.pairs is None:
        dp = DpProblem(compute_dps(pf.rules), pf.rules, pf.flag or TERMINATION)
    else:
        dp = pf.dp_problem()
    out, report = switch_processor(dp)
    text = format_dp_problem(out) + str(report)
    data = {
        "fired": report.fired,
        "flag": out.flag,
        "reason": report.reason,
        "conditions": [{"name": n, "holds": ok, "detail": d} for n, ok, d in report.conditions],
        "problem": format_dp_problem(out),
    }
    _emit(args, text, data)
    return EXIT_OK if report.fired else EXIT_NO


def cmd_simulate(args, pf) -> int:
    R = pf.rules
    fuel = Fuel(args.fuel, args.max_size)
    s = parse_term(args.term, pf.var_decls, R.signature)
    if args.target is not None:
        t = parse_term(args.target, pf.var_decls, R.signature)
        if not is_normal_form(t, R):
            print(f"error: target {t} is not a normal form", file=sys.stderr)
            return EXIT_NO
        witness = find_rewrite_path(s, t, R, fuel)
        if witness is None:
            print(f"inconclusive: no rewrite sequence from {s} to {t} within fuel", file=sys.stderr)
            return EXIT_FUEL
    else:
        res = normalize(s, R, args.strategy, fuel)
        if not res.complete:
            print(f"inconclusive: {s} not normalized within fuel", file=sys.stderr)
            return EXIT_FUEL
        witness = res.trace
    inner = innermost_simulate(s, witness.final, R, fuel, witness=witness)
    text = "witness:\n" + format_trace(witness) + "innermost:\n" + format_trace(inner).rstrip("\n")
    _emit(args, text, {"witness": _trace_json(witness), "innermost": _trace_json(inner)})
    return EXIT_OK


def cmd_chain_convert(args, pf) -> int:
    if pf.pairs is None:
        print("error: chain-convert needs a PAIRS section", file=sys.stderr)
        return EXIT_PARSE
    R, P = pf.rules, pf.pairs
    fuel = Fuel(args.fuel, args.max_size)
    with open(args.chain, encoding="utf-8") as fh:
        tr = parse_trace(fh.read(), pf.var_decls, R.union(P).signature)
    chain = ChainModel.from_trace(tr)
    before = validate_chain(chain, P, R, ("shape", "innermost", "minimal"), fuel)
    res = chain_to_innermost(chain, P, R, fuel=fuel, check_output_minimality=True)
    text = ("input chain: " + str(before) + "\n"
            + "converted chain:\n" + format_trace(res.innermost_chain.to_trace())
            + "converted chain: " + str(res.report))
    data = {
        "input_report": str(before),
        "converted": _trace_json(res.innermost_chain.to_trace()),
        "converted_report": str(res.report),
        "length": res.innermost_chain.length,
        "final_substitution": {k: str(v) for k, v in res.final_substitution.items()},
    }
    _emit(args, text, data)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="trsdp", description="Right-linear overlay analysis of term rewrite systems.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="problem file with VAR/RULES[/PAIRS/FLAG] sections")
    common.add_argument("--fuel", type=int, default=10_000, help="step bound for bounded searches")
    common.add_argument("--max-size", type=int, default=200, help="term size bound for bounded searches")
    common.add_argument("--json", action="store_true", help="machine-readable report")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="classify right-linearity, collapse and overlay")
    sub.add_parser("dps", parents=[common], help="print the dependency pairs")
    sub.add_parser("switch", parents=[common], help="apply the t-to-i flag switch")
    sim = sub.add_parser("simulate", parents=[common], help="replay a rewrite sequence innermost")
    sim.add_argument("--term", required=True)
    sim.add_argument("--target")
    sim.add_argument("--strategy", choices=STRATEGIES, default=FULL_LEFTMOST)
    cc = sub.add_parser("chain-convert", parents=[common], help="convert a chain into an innermost one")
    cc.add_argument("--chain", required=True, help="chain in the trace format")
    return ap


_COMMANDS = {
    "check": cmd_check,
    "dps": cmd_dps,
    "switch": cmd_switch,
    "simulate": cmd_simulate,
    "chain-convert": cmd_chain_convert,
}


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    if args.fuel < 1 or args.max_size < 1:
        print("error: --fuel and --max-size must be positive", file=sys.stderr)
        return EXIT_PARSE
    try:
        pf = read_problem(args.file)
        return _COMMANDS[args.command](args, pf)
    except (ParseError, MalformedChainError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except FuelExhausted as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return EXIT_FUEL
    except PreconditionViolated as e:
        print(f"precondition violated: {e}", file=sys.stderr)
        return EXIT_NO
    except TrsError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NO


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
