"""Command-line interface.

Exit codes: 0 affirmative, 1 negative verdict, 2 usage or input error,
3 undecided (a search budget or time limit ran out).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .catalog import MISMATCH, duplicate_verdicts, format_report, run_catalog
from .digraph import FormatError, load_matrix, write_matrix
from .families import FamilySpec, expected_params, family_names, known_partitions, make_graph
from .params import ParameterSet, feasibility_check, spectrum
from .pijoin import (build_pi_join, eq1_raw, is_good_partition, measure_quotient,
                     quotient_violation, read_partition, solve_eq1)
from .search import SearchTimeout, find_good_partitions
from .verify import DEFAULT_NODE_BUDGET, SearchBudgetExceeded, classify, equivalence

OK, NEGATIVE, USAGE, UNDECIDED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _params(values) -> ParameterSet:
    try:
        return ParameterSet.parse(values)
    except ValueError as exc:
        raise UsageError(f"PARAMS: {exc}") from None


def _graph(path):
    try:
        return load_matrix(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    except FormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _partition(path, n):
    try:
        pi = read_partition(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    except FormatError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if pi.n != n:
        raise UsageError(f"{path}: partition covers {pi.n} vertices, graph has {n}")
    return pi


def _classified(g, what):
    res = classify(g)
    if res.params is None:
        raise UsageError(f"{what} is not strongly regular: {res}")
    return res.params


def _matrix_text(Q) -> str:
    return "\n".join(" ".join(str(int(x)) for x in row) for row in Q)


def cmd_feasible(args):
    rep = feasibility_check(_params(args.params))
    print(f"params: {rep.params}")
    for name, ok in rep.conditions.items():
        print(f"{name}: {'ok' if ok else 'FAIL'}")
    if rep.d is not None:
        print(f"d: {rep.d}")
    if rep.s is not None:
        print(f"s: {rep.s}")
    print(f"verdict: {'feasible' if rep.feasible else 'infeasible'}")
    return OK if rep.feasible else NEGATIVE


def cmd_spectrum(args):
    p = _params(args.params)
    try:
        sp = spectrum(p)
    except ValueError as exc:
        print(f"no integral spectrum: {exc}")
        return NEGATIVE
    print(sp)
    return OK


def cmd_verify(args):
    res = classify(_graph(args.matrix))
    print(res)
    return OK if res.is_strongly_regular else NEGATIVE


def cmd_equiv(args):
    g1, g2 = _graph(args.first), _graph(args.second)
    for g, name in ((g1, args.first), (g2, args.second)):
        if not classify(g).is_strongly_regular:
            raise UsageError(f"{name} is not a DSRG or SRG")
    try:
        verdict = equivalence(g1, g2, args.budget)
    except SearchBudgetExceeded as exc:
        print(f"Undecided: {exc}")
        return UNDECIDED
    print(verdict.relation.value)
    if verdict.mapping is not None and args.mapping:
        print(" ".join(str(v + 1) for v in verdict.mapping))
    return OK if verdict.equivalent else NEGATIVE


def cmd_eq1(args):
    p = _params(args.params)
    if args.raw:
        sols = [f"({a},{b})" for a, b in eq1_raw(p)] if p.mu is not None else []
    else:
        sols = [str(s) for s in solve_eq1(p)]
    print(" ".join(sols) if sols else "none")
    return OK if sols else NEGATIVE


def cmd_quotient(args):
    g = _graph(args.matrix)
    pi = _partition(args.partition, g.n)
    Q = measure_quotient(g, pi)
    if Q is None:
        v, i = quotient_violation(g, pi)
        print(f"not column-equitable: vertex {v + 1} has a deviating in-count from cell {i + 1}")
        return NEGATIVE
    print(_matrix_text(Q))
    return OK


def cmd_check_partition(args):
    g = _graph(args.matrix)
    pi = _partition(args.partition, g.n)
    p = _classified(g, args.matrix)
    ok = is_good_partition(g, pi, p)
    print(f"{'good' if ok else 'not good'} ({pi.a},{pi.b}) partition of {p}")
    return OK if ok else NEGATIVE


def cmd_pijoin(args):
    g = _graph(args.matrix)
    pi = _partition(args.partition, g.n)
    p = _classified(g, args.matrix)
    if args.j < 1:
        raise UsageError("-j: power must be positive")
    if not is_good_partition(g, pi, p):
        print(f"not a good partition of {p}", file=sys.stderr)
        return NEGATIVE
    h = build_pi_join(g, pi, args.j)
    print(f"# {classify(h)}")
    sys.stdout.write(write_matrix(h))
    return OK


def cmd_search(args):
    g = _graph(args.matrix)
    p = _classified(g, args.matrix)
    sol = next((s for s in solve_eq1(p) if (s.a, s.b) == (args.a, args.b)), None)
    if sol is None:
        raise UsageError(f"({args.a},{args.b}) is not an admissible shape for {p}")
    try:
        found = find_good_partitions(g, sol, limit=args.limit, jobs=args.jobs, timeout=args.timeout)
    except SearchTimeout as exc:
        print(f"# undecided: {exc}")
        return UNDECIDED
    for pi in found:
        print("# quotient " + "; ".join(" ".join(map(str, r)) for r in measure_quotient(g, pi)))
        print(pi.to_text())
    if not found:
        print(f"# no good ({sol.a},{sol.b}) partition exists")
    return OK if found else NEGATIVE


def cmd_family(args):
    try:
        spec = FamilySpec(args.id, tuple(args.params))
        g = make_graph(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.partitions is None:
        print(f"# {spec} {expected_params(spec)}")
        sys.stdout.write(write_matrix(g))
        return OK
    a, b = args.partitions
    parts = known_partitions(spec, (a, b))
    for pi in parts:
        print(pi.to_text())
    if not parts:
        print(f"# no documented ({a},{b}) partition for {spec}")
    return OK if parts else NEGATIVE


def cmd_catalog(args):
    results = run_catalog(args.scope, limit=args.limit, jobs=args.jobs, timeout=args.timeout,
                          keep_graphs=not args.no_equivalence)
    dups = None if args.no_equivalence else duplicate_verdicts(results)
    command = f"catalog {args.scope}"
    sys.stdout.write(format_report(results, command, timing=args.timing, duplicates=dups))
    bad = [r for r in results if r.status == MISMATCH]
    return NEGATIVE if bad else OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dsrgkit", description="Directed strongly regular graph toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    def params_cmd(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("params", nargs="+", type=int, metavar="P",
                        help="n k t lam mu, or n k lam mu for an SRG")
        sp.set_defaults(func=func)
        return sp

    params_cmd("feasible", cmd_feasible, "arithmetic feasibility conditions")
    params_cmd("spectrum", cmd_spectrum, "eigenvalues and multiplicities")
    sp = params_cmd("eq1", cmd_eq1, "admissible cell shapes (a,b)")
    sp.add_argument("--raw", action="store_true", help="all divisor solutions, unfiltered")

    sp = sub.add_parser("verify", help="classify a matrix file")
    sp.add_argument("matrix")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("equiv", help="isomorphism up to reversal and complement")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    sp.add_argument("--mapping", action="store_true", help="print the vertex map (1-based)")
    sp.set_defaults(func=cmd_equiv)

    for name, func, help_ in (("quotient", cmd_quotient, "measured quotient matrix"),
                              ("check-partition", cmd_check_partition, "is the partition good")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("matrix")
        sp.add_argument("partition")
        sp.set_defaults(func=func)

    sp = sub.add_parser("pijoin", help="build the pi-join and print its matrix")
    sp.add_argument("matrix")
    sp.add_argument("partition")
    sp.add_argument("-j", type=int, default=1)
    sp.set_defaults(func=cmd_pijoin)

    sp = sub.add_parser("search", help="find good partitions of a given shape")
    sp.add_argument("matrix")
    sp.add_argument("a", type=int)
    sp.add_argument("b", type=int)
    sp.add_argument("--limit", type=int)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--timeout", type=float)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("family", help="generate a family member or its documented partitions")
    sp.add_argument("id", choices=family_names())
    sp.add_argument("params", nargs="*", type=int)
    sp.add_argument("--partitions", nargs=2, type=int, metavar=("A", "B"))
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("catalog", help="rebuild the table of pi-join parameter sets")
    sp.add_argument("scope", nargs="?", choices=("constructible", "all"), default="constructible")
    sp.add_argument("--limit", type=int, default=1, help="search cap per row")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--timeout", type=float, help="search time limit per row, seconds")
    sp.add_argument("--format", choices=("text",), default="text")
    sp.add_argument("--timing", action="store_true", help="include wall-clock seconds per row")
    sp.add_argument("--no-equivalence", action="store_true",
                    help="skip equivalence checks between rows sharing a target")
    sp.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    for flag in ("jobs", "limit"):
        val = getattr(args, flag, None)
        if val is not None and val < 1:
            ap.error(f"--{flag} must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{ap.prog}: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
