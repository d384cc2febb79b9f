"""The branch-and-reduce driver."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Callable

from .branching import BranchDecision, _Scan, step7_branch, step9_branch
from .endgame import check_endgame, solve_3sat
from .formula import Formula, InvariantError
from .pipeline import ReduceConfig, Reducer, RuleHook
from .reconstruction import extend_model
from .reductions import autarky_reduce
from .standardize import standardize
from .transformer import reduce_degree_inplace
from .verdict import SAT, UNKNOWN, UNSAT, SolveStats, SolveVerdict

log = logging.getLogger(__name__)


class BudgetExhausted(Exception):
    pass


@dataclass
class SolverOptions:
    max_subset: int = 10
    step6d_budget: int = 50_000
    sim_step6d_budget: int = 300
    node_budget: int | None = None
    time_limit: float | None = None
    model: bool = True
    check_invariants: bool = False
    trace: Callable[[dict], None] | None = None
    rule_hook: RuleHook | None = None


@dataclass
class _Run:
    opts: SolverOptions
    reducer: Reducer
    stats: SolveStats
    deadline: float | None
    decisions: list[BranchDecision] = field(default_factory=list)


def solve(f: Formula, options: SolverOptions | None = None, **kw) -> SolveVerdict:
    """Decide ``f`` (left untouched); the model, if any, covers its variables."""
    opts = options or SolverOptions(**kw)
    stats = SolveStats()
    reducer = Reducer(
        ReduceConfig(opts.max_subset, opts.step6d_budget, opts.sim_step6d_budget,
                     opts.check_invariants),
        stats,
        rule_hook=opts.rule_hook,
        trace=opts.trace,
    )
    deadline = None if opts.time_limit is None else time.monotonic() + opts.time_limit
    run = _Run(opts, reducer, stats, deadline)
    original_vars = sorted(f.deg)
    work = f.copy()
    work.journal = []
    if work.max_degree() > 3:
        before = work.clause_list() if opts.rule_hook else None
        n0 = work.num_vars
        reduce_degree_inplace(work)
        stats.fired("transformer", n0 - work.num_vars)
        if opts.rule_hook:
            opts.rule_hook("transformer", before, work.clause_list())
        if opts.trace:
            opts.trace({"step": "0", "rule": "transformer", "vars_eliminated": n0 - work.num_vars,
                        "vector": None, "tau": None, "depth": 0})
    standardize(work)
    try:
        leaf = _node(work, run, 0)
    except BudgetExhausted:
        return SolveVerdict(UNKNOWN, stats=stats)
    if leaf is None:
        return SolveVerdict(UNSAT, stats=stats)
    model = None
    if opts.model:
        full = extend_model(work.journal, leaf)
        model = {v: full.get(v, False) for v in original_vars}
    return SolveVerdict(SAT, model=model, stats=stats)


def _tick(run: _Run) -> None:
    run.stats.nodes += 1
    budget = run.opts.node_budget
    if budget is not None and run.stats.nodes > budget:
        raise BudgetExhausted
    if run.deadline is not None and time.monotonic() > run.deadline:
        raise BudgetExhausted


def _node(f: Formula, run: _Run, depth: int) -> dict[int, bool] | None:
    """Return a model of the current formula (before journal replay) or None."""
    _tick(run)
    check = run.opts.check_invariants
    while True:
        verdict = run.reducer.fixpoint(f, depth)
        if verdict == UNSAT:
            return None
        if verdict == SAT:
            return {v: True for v in f.deg}
        scan = _Scan(f, run.reducer)
        d = step7_branch(f, scan=scan)
        if d is not None:
            return _branch(f, d, run, depth)
        try:
            n0 = f.num_vars
            out = autarky_reduce(f)
        except InvariantError as exc:
            return _fallback(f, scan, run, depth, f"step 8: {exc}")
        if out is not None:
            run.reducer._fired("S8", n0 - f.num_vars, depth, False)
            if check and not f.is_monotone():
                run.reducer.violation("not monotone after step 8")
            continue
        d = step9_branch(f, scan=scan)
        if d is not None:
            return _branch(f, d, run, depth)
        report = check_endgame(f)
        if not report.ok:
            return _fallback(f, scan, run, depth, "; ".join(report.violations))
        run.stats.fired("S10", 0)
        res = solve_3sat(f)
        return res.model if res.is_sat else None


def _fallback(f, scan: _Scan, run: _Run, depth: int, why: str):
    run.stats.fallbacks += 1
    if run.opts.check_invariants:
        run.reducer.violation(f"fallback: {why}")
    log.warning("robustness fallback at depth %d: %s", depth, why)
    d = scan.best
    if d is None:
        d = step7_branch(f, scan=scan) or scan.best
    if d is None:
        res = solve_3sat(f) if f.clauses and max(map(len, f.clauses.values())) <= 3 else None
        if res is not None:
            return res.model if res.is_sat else None
        raise InvariantError(f"no branching candidate: {why}")
    return _branch(f, d, run, depth, fallback=True)


def _branch(f: Formula, d: BranchDecision, run: _Run, depth: int, fallback: bool = False):
    run.stats.branches += 1
    if not fallback:
        run.stats.max_factor = max(run.stats.max_factor, d.factor)
    run.decisions.append(d)
    if run.opts.trace:
        run.opts.trace({"step": str(d.step), "rule": "fallback" if fallback else f"S{d.step}",
                        "vars_eliminated": None, "vector": list(d.vector.eliminations),
                        "tau": d.factor, "depth": depth})
    order = sorted(range(len(d.literals_per_branch)),
                   key=lambda i: -d.vector.eliminations[i])
    for i in order:
        token = f.mark()
        for lit in d.literals_per_branch[i]:
            if abs(lit) in f.deg:
                f.assign(lit)
        model = _node(f, run, depth + 1)
        if model is not None:
            return model
        f.rollback(token)
    return None
