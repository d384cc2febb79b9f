"""Command-line interface: ``occursat solve|transform|tau|gen|check``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from typing import Sequence

from . import dimacs
from .branching import tau
from .formula import ContractError, InvariantError
from .oracle import OracleRefusal, Profile, brute_force_sat, random_3occur, random_cnf
from .reconstruction import ReconstructionError, check_model
from .solver import SolverOptions, solve
from .transformer import degree_stats, reduce_degree_inplace

EXIT_SAT, EXIT_UNSAT, EXIT_UNKNOWN, EXIT_ERROR = 10, 20, 30, 1
BUDGET_ENV = "OCCURSAT_BUDGET"

log = logging.getLogger("occursat")


def _read(path: str) -> dimacs.DimacsDocument:
    if path == "-":
        return dimacs.read_document(sys.stdin.read())
    with open(path, "rb") as fh:
        return dimacs.read_document(fh.read())


def _default_budget() -> int | None:
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"{BUDGET_ENV} must be an integer, got {raw!r}")


def _v_lines(model: dict[int, bool], num_vars: int) -> list[str]:
    lits = [v if model.get(v, False) else -v for v in range(1, num_vars + 1)]
    lines, row = [], []
    for lit in lits + [0]:
        row.append(str(lit))
        if len(row) == 10:
            lines.append("v " + " ".join(row))
            row = []
    if row:
        lines.append("v " + " ".join(row))
    return lines


def cmd_solve(args) -> int:
    doc = _read(args.path)
    f = doc.formula()
    trace_fh = open(args.trace, "w") if args.trace else None

    def emit_trace(rec: dict) -> None:
        trace_fh.write(json.dumps(rec, sort_keys=True) + "\n")

    try:
        opts = SolverOptions(
            max_subset=args.max_subset,
            node_budget=args.budget if args.budget is not None else _default_budget(),
            time_limit=args.time_limit,
            model=args.model,
            check_invariants=args.check_invariants,
            trace=emit_trace if trace_fh else None,
        )
        verdict = solve(f, opts)
    finally:
        if trace_fh:
            trace_fh.close()
    st = verdict.stats
    print(f"c nodes {st.nodes} branches {st.branches} simulations {st.simulations}")
    print(f"c max accepted branching factor {st.max_factor:.6f}")
    if st.fallbacks:
        print(f"c robustness fallback fired {st.fallbacks} times")
    for v in st.violations:
        print(f"c invariant violation: {v}")
    if verdict.is_sat:
        print("s SATISFIABLE")
        if args.model:
            print("\n".join(_v_lines(verdict.model, doc.num_vars_declared)))
        return EXIT_SAT
    if verdict.is_unsat:
        print("s UNSATISFIABLE")
        return EXIT_UNSAT
    print("s UNKNOWN")
    return EXIT_UNKNOWN


def cmd_transform(args) -> int:
    if args.max_degree != 3:
        print("only --max-degree 3 is supported", file=sys.stderr)
        return EXIT_ERROR
    doc = _read(args.path)
    f = doc.formula()
    before = degree_stats(f)
    n = f.num_vars
    mapping, _ = reduce_degree_inplace(f)
    out = f.num_vars
    bound = (before.max_degree - 2) * n if before.max_degree >= 3 else n
    comments = [
        f"degree reduced: max degree {before.max_degree} -> {f.max_degree()}",
        f"variables {n} -> {out}, bound (d-2)n = {bound}",
    ]
    for u in sorted(mapping):
        comments.append(f"chain {u} " + " ".join(map(str, mapping[u])))
    sys.stdout.write(dimacs.emit(f, comments))
    return 0


def cmd_tau(args) -> int:
    try:
        vector = [int(tok) for tok in args.vector]
        print(f"{tau(vector):.6f}")
    except (ValueError, ContractError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return 0


def _generate(kind: str, n: int, seed: int, m: int | None, k: int):
    if kind == "cnf":
        return random_cnf(n, m if m is not None else round(4.26 * n), k, seed)
    profile = {
        "3occur": Profile(),
        "regular": Profile(regular21=True),
        "monotone": Profile(regular21=True, monotone=True, lengths={2: 1.0, 3: 2.0}),
    }[kind]
    return random_3occur(n, profile, seed)


GEN_KINDS = ("3occur", "regular", "monotone", "cnf")


def cmd_gen(args) -> int:
    f = _generate(args.kind, args.n, args.seed, args.m, args.k)
    sys.stdout.write(dimacs.emit(f, [f"generated kind={args.kind} n={args.n} seed={args.seed}"]))
    return 0


def _parse_solution(text: str) -> dict[int, bool]:
    model = {}
    for line in text.splitlines():
        if line.startswith("v "):
            for tok in line.split()[1:]:
                lit = int(tok)
                if lit:
                    model[abs(lit)] = lit > 0
    return model


def cmd_check(args) -> int:
    if args.cnf:
        doc = _read(args.cnf)
        with open(args.solution) as fh:
            model = _parse_solution(fh.read())
        ok = check_model(doc.clauses, model)
        print("model satisfies all clauses" if ok else "model falsifies a clause")
        return 0 if ok else EXIT_ERROR
    rng = random.Random(args.seed)
    bad = 0
    for i in range(args.count):
        seed = rng.randrange(2**31)
        kind = GEN_KINDS[i % len(GEN_KINDS)] if args.kind == "mixed" else args.kind
        f = _generate(kind, args.n, seed, None if kind != "cnf" else rng.randint(args.n, 3 * args.n), 3)
        try:
            want = brute_force_sat(f, cap=max(24, args.n)).is_sat
        except OracleRefusal as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR
        try:
            got = solve(f)
            status = got.status
            ok = got.is_sat == want and (not got.is_sat or check_model(f.clause_list(), got.model))
        except (ReconstructionError, InvariantError) as exc:
            status, ok = f"raised {type(exc).__name__}", False
        if not ok:
            bad += 1
            print(f"disagreement: kind={kind} n={args.n} seed={seed} solver={status} oracle={'SAT' if want else 'UNSAT'}")
    print(f"{bad} disagreements")
    return 0 if bad == 0 else EXIT_ERROR


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="occursat", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="decide a DIMACS CNF file")
    s.add_argument("path")
    s.add_argument("--model", action="store_true", help="print a satisfying assignment")
    s.add_argument("--trace", metavar="FILE", help="write one JSON record per rule and branch")
    s.add_argument("--max-subset", type=int, default=10, help="largest set tried by safe resolution")
    s.add_argument("--budget", type=int, default=None,
                   help=f"search node budget (default from ${BUDGET_ENV}, else unlimited)")
    s.add_argument("--time-limit", type=float, default=None, help="seconds before giving up")
    s.add_argument("--check-invariants", action="store_true")
    s.set_defaults(func=cmd_solve)

    t = sub.add_parser("transform", help="rewrite to at most three occurrences per variable")
    t.add_argument("path")
    t.add_argument("--max-degree", type=int, default=3)
    t.set_defaults(func=cmd_transform)

    r = sub.add_parser("tau", help="branching factor of a branching vector")
    r.add_argument("vector", nargs="+", help="positive integers")
    r.set_defaults(func=cmd_tau)

    g = sub.add_parser("gen", help="emit a seeded random instance")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--kind", choices=GEN_KINDS, default="3occur")
    g.add_argument("--m", type=int, default=None, help="clause count for --kind cnf")
    g.add_argument("--k", type=int, default=3, help="clause length for --kind cnf")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="cross-check solver and oracle, or verify a model")
    c.add_argument("--count", type=int, default=100)
    c.add_argument("--n", type=int, default=16)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--kind", choices=GEN_KINDS + ("mixed",), default="mixed")
    c.add_argument("--cnf", help="with --solution: verify a solver output against this file")
    c.add_argument("--solution")
    c.set_defaults(func=cmd_check)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "check" and bool(args.cnf) != bool(args.solution):
        parser.error("--cnf and --solution go together")
    try:
        return args.func(args)
    except (OSError, dimacs.DimacsError, ContractError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
