"""Command-line front end: ``hyperbell <state|corr|bell|hardy|lp|table> ...``.

Exit status is 0 on success, 1 on a domain error (bad hypergraph, missing
closed form, engine mismatch, ...) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .bell import (
    FAMILIES,
    SEPARABILITY_BOUND,
    build_expression,
    classical_bound_formula,
    quantum_value,
    visibility,
)
from .closed_form import closed_form
from .dyadic import Dyadic
from .hypergraph import Hypergraph, complete_k_uniform, parse_hypergraph, single_edge
from .lhv import brute_classical_max, brute_classical_min, hardy_check, hardy_targets, stabilizer_zero_events
from .polytope import DEFAULT_BISECT_TOL, noise_threshold
from .statevec import build_state, expectation, outcome_probability
from .tables import TABLES, sig6


class DomainError(Exception):
    pass


def _fmt(value, decimal: bool) -> str:
    if decimal:
        return sig6(float(value))
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Dyadic):
        return str(value)
    return str(Fraction(value))


def _load_hg(path: str) -> Hypergraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc}") from exc
    return parse_hypergraph(text)


def _emit(args, record: dict, human: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(record, indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(record), lineterminator="\n")
        writer.writeheader()
        writer.writerow(record)
        print(buf.getvalue(), end="")
    else:
        print("\n".join(human))


# subcommands ------------------------------------------------------------------


def cmd_state(args) -> int:
    h = _load_hg(args.hg)
    state = build_state(h)
    if args.out:
        Path(args.out).write_bytes(state.to_bytes())
    record = {"n": h.n, "edges": [list(e) for e in h.edges]}
    human = [f"n = {h.n}", f"edges = {record['edges']}"]
    if args.print:
        record["signs"] = state.signs.tolist()
        terms = []
        for x, s in enumerate(state.signs):
            label = "".join(str(x >> i & 1) for i in range(h.n))
            terms.append(f"{'+' if s > 0 else '-'}|{label}>")
        human.append(f"(1/sqrt(2^{h.n})) * (" + " ".join(terms) + ")")
    _emit(args, record, human)
    return 0


def cmd_corr(args) -> int:
    if args.hg:
        h = _load_hg(args.hg)
        uniform = None
    else:
        if args.uniform is None or args.n is None:
            raise DomainError("corr needs --hg FILE or both --uniform K and --n N")
        uniform = args.uniform
        h = complete_k_uniform(args.n, uniform)
    pauli = args.pauli.upper()
    if len(pauli) != h.n or set(pauli) - set("IXZ"):
        raise DomainError(f"--pauli must be {h.n} symbols over I, X, Z")
    mode = args.mode or ("check" if uniform is not None else "simulate")

    record: dict = {"pauli": pauli}
    human = []
    closed = sim = None
    if mode in ("closed", "check"):
        if uniform is None:
            raise DomainError("closed forms exist only for complete --uniform states")
        closed = closed_form(uniform, h.n, pauli.count("X"), pauli.count("I"))
        record["closed_form"] = str(closed)
        human.append(f"closed-form: {_fmt(closed, args.decimal)}")
    if mode in ("simulate", "check"):
        sim = expectation(build_state(h), pauli)
        record["simulator"] = str(sim)
        human.append(f"simulator:   {_fmt(sim, args.decimal)}")
    if mode == "check":
        ok = closed == sim
        record["match"] = ok
        human.append("MATCH" if ok else "MISMATCH")
        _emit(args, record, human)
        if not ok:
            print("error: closed form and simulator disagree", file=sys.stderr)
            return 1
        return 0
    _emit(args, record, human)
    return 0


def cmd_bell(args) -> int:
    family = args.family.replace("-", "_")
    if args.hg:
        h = _load_hg(args.hg)
        if h.n != args.n:
            raise DomainError(f"--n {args.n} does not match hypergraph with n={h.n}")
    elif args.uniform is not None:
        h = complete_k_uniform(args.n, args.uniform)
    else:
        raise DomainError("bell needs --hg FILE or --uniform K")
    expr = build_expression(family, args.n, args.trace)
    value = quantum_value(expr, build_state(h))
    record: dict = {"family": family, "n": args.n, "traced": args.trace, "terms": len(expr.terms),
                    "quantum_value": str(value)}
    human = [f"{family} on n={args.n} (traced {args.trace}): {len(expr.terms)} terms",
             f"quantum value:   {_fmt(value, args.decimal)}"]
    if family == "separability":
        record["separability_bound"] = SEPARABILITY_BOUND
        violated = float(value) > SEPARABILITY_BOUND
        human.append(f"separable bound: sqrt(2) ~ {sig6(SEPARABILITY_BOUND)}")
    else:
        if args.classical == "brute":
            bound = brute_classical_min(expr) if expr.direction == "geq0" else brute_classical_max(expr)
            source = "brute-force"
        else:
            bound = classical_bound_formula(family, args.n, args.trace)
            source = "formula"
        record["classical_bound"] = str(bound)
        record["bound_source"] = source
        violated = value < bound if expr.direction == "geq0" else value > bound
        relation = ">=" if expr.direction == "geq0" else "<="
        human.append(f"classical bound: {relation} {_fmt(bound, args.decimal)} ({source})")
        if family.startswith("mermin"):
            vis = visibility(value, args.n - args.trace)
            record["visibility"] = str(vis)
            human.append(f"visibility:      {_fmt(vis, args.decimal)}")
    record["violated"] = violated
    human.append("VIOLATED" if violated else "not violated")
    _emit(args, record, human)
    return 0


def cmd_hardy(args) -> int:
    n = args.n
    if n < 3:
        raise DomainError("the Hardy argument needs n >= 3")
    h = single_edge(n)
    state = build_state(h)
    zero = stabilizer_zero_events(h)
    zero_ok = all(outcome_probability(state, s, r) == 0 for s, r in zero)
    targets = hardy_targets(n)
    verdicts = [hardy_check(n, zero, t) for t in targets]
    probs = {outcome_probability(state, s, r) for s, r in targets}
    value = quantum_value(build_expression("hardyN", n), state)
    holds = zero_ok and all(verdicts)
    record = {
        "n": n,
        "zero_events": len(zero),
        "zero_events_vanish": zero_ok,
        "targets": len(targets),
        "lhv_forbids_all_targets": all(verdicts),
        "target_probabilities": sorted(str(p) for p in probs),
        "bell_value": str(value),
        "hardy_argument": holds,
    }
    human = [
        f"single-hyperedge state, n={n}",
        f"{len(zero)} stabilizer zero-events, all with probability 0: {zero_ok}",
        f"{len(targets)} target events forbidden by every LHV model: {all(verdicts)}",
        "quantum target probabilities: " + ", ".join(_fmt(p, args.decimal) for p in sorted(probs)),
        f"Bell value: {_fmt(value, args.decimal)} (LHV >= 0)",
        "HARDY ARGUMENT HOLDS" if holds else "HARDY ARGUMENT FAILS",
    ]
    _emit(args, record, human)
    return 0 if holds else 1


def cmd_lp(args) -> int:
    model = "full_local" if args.model == "local" else args.model
    result = noise_threshold(single_edge(3), model, args.tol)
    record = result.to_dict()
    human = [f"model: {model}", f"epsilon* = {result.epsilon:.4f}"]
    if result.member_at_zero:
        human.append("behavior is already inside the polytope at epsilon = 0")
    _emit(args, record, human)
    return 0


def cmd_table(args) -> int:
    rows = TABLES[args.name]()
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in rows], indent=2))
        return 0
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "parity", "quantum_value", "quantum_value_decimal", "classical_bound",
                         "separability_bound", "ratio"])
        for r in rows:
            writer.writerow([r.k, r.parity, str(r.value), sig6(float(r.value)),
                             "" if r.classical_bound is None else r.classical_bound,
                             "" if r.separability_bound is None else sig6(r.separability_bound),
                             sig6(r.ratio)])
        print(buf.getvalue(), end="")
        return 0
    print(f"{'k':>2}  {'parity':<6}  {'quantum value':>14}  {'bound':>8}  {'ratio':>8}")
    for r in rows:
        bound = str(r.classical_bound) if r.classical_bound is not None else "sqrt2"
        qv = sig6(float(r.value)) if args.decimal else str(r.value)
        print(f"{r.k:>2}  {r.parity:<6}  {qv:>14}  {bound:>8}  {sig6(r.ratio):>8}")
    return 0


# parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json", "csv"), default="human")
    common.add_argument("--decimal", action="store_true", help="print decimals (6 significant digits)")

    parser = argparse.ArgumentParser(prog="hyperbell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", parents=[common], help="build a hypergraph state")
    p.add_argument("--hg", required=True, help="hypergraph JSON file")
    p.add_argument("--print", action="store_true", help="print the signed amplitudes")
    p.add_argument("--out", help="write the binary sign dump here")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("corr", parents=[common], help="X/Z/I correlator")
    p.add_argument("--hg")
    p.add_argument("--uniform", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--pauli", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--closed-form", dest="mode", action="store_const", const="closed")
    mode.add_argument("--simulate", dest="mode", action="store_const", const="simulate")
    mode.add_argument("--check", dest="mode", action="store_const", const="check")
    p.set_defaults(func=cmd_corr)

    p = sub.add_parser("bell", parents=[common], help="evaluate a Bell family")
    p.add_argument("--family", required=True, choices=[f.replace("_", "-") for f in FAMILIES] + list(FAMILIES))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--hg")
    p.add_argument("--uniform", type=int)
    p.add_argument("--classical", choices=("formula", "brute"), default="formula")
    p.add_argument("--trace", type=int, default=0, help="number of trailing qubits traced out")
    p.set_defaults(func=cmd_bell)

    p = sub.add_parser("hardy", parents=[common], help="Hardy argument by LHV exhaustion")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_hardy)

    p = sub.add_parser("lp", help="linear-programming noise thresholds")
    lp_sub = p.add_subparsers(dest="lp_command", required=True)
    q = lp_sub.add_parser("noise", parents=[common])
    q.add_argument("--model", choices=("hybrid", "local"), required=True)
    q.add_argument("--tol", type=float, default=DEFAULT_BISECT_TOL)
    q.set_defaults(func=cmd_lp)

    p = sub.add_parser("table", parents=[common], help="reproduce a violation table")
    p.add_argument("--name", choices=sorted(TABLES), required=True)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ValueError, LookupError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
