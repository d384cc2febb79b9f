"""The reduce-until-stuck loop shared by the driver and branch simulation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .formula import Formula
from .reductions import (
    all_two_one,
    eliminate_low_degree,
    neg_clause_reductions,
    normalize_polarity,
    shared_pair_reduction,
)
from .safe_resolution import Step6dCache, step6d_search
from .standardize import standardize
from .verdict import SAT, UNSAT, SolveStats

RuleHook = Callable[[str, list, list], None]


@dataclass
class ReduceConfig:
    max_subset: int = 10
    step6d_budget: int = 50_000
    sim_step6d_budget: int = 300
    check_invariants: bool = False


@dataclass
class Reducer:
    """Runs standardization and the eliminating rules to a fixpoint.

    ``rule_hook(rule, before, after)`` receives clause lists around every
    single rewrite (used by per-rule equisatisfiability tests); it is never
    called during simulations.
    """

    config: ReduceConfig = field(default_factory=ReduceConfig)
    stats: SolveStats = field(default_factory=SolveStats)
    cache: Step6dCache = field(default_factory=Step6dCache)
    rule_hook: RuleHook | None = None
    trace: Callable[[dict], None] | None = None

    def violation(self, msg: str) -> None:
        self.stats.violations.append(msg)

    def _fired(self, rule: str, eliminated: int, depth: int, simulate: bool) -> None:
        if simulate:
            return
        self.stats.fired(rule, eliminated)
        if self.trace is not None:
            self.trace({"step": rule[1] if rule[0] == "S" else rule, "rule": rule,
                        "vars_eliminated": eliminated, "vector": None, "tau": None,
                        "depth": depth})

    def fixpoint(self, f: Formula, depth: int = 0, simulate: bool = False) -> str | None:
        """Apply steps 1 to 6 until none fires; return SAT/UNSAT on a verdict."""
        hook = None if simulate else self.rule_hook
        check = self.config.check_invariants and not simulate
        while True:
            if f.has_empty_clause():
                return UNSAT
            if not f.clauses:
                return SAT
            if f.all_clauses_have_positive():
                return SAT
            before = f.clause_list() if hook else None
            n0 = f.num_vars
            if f._dirty and standardize(f, incremental=True):
                self._after(f, "S3", n0, before, depth, simulate, hook, check)
                continue
            rule = self._one_rule(f, simulate)
            if rule is None:
                break
            self._after(f, rule, n0, before, depth, simulate, hook, check)
        if check and not all_two_one(f):
            self.violation("variable not (2,1) after the reduction fixpoint")
        return None

    def _after(self, f, rule, n0, before, depth, simulate, hook, check):
        self._fired(rule, n0 - f.num_vars, depth, simulate)
        if hook is not None:
            hook(rule, before, f.clause_list())
        if check and not f.has_empty_clause() and f.max_degree() > 3:
            self.violation(f"max degree {f.max_degree()} after {rule}")

    def _one_rule(self, f: Formula, simulate: bool) -> str | None:
        out = eliminate_low_degree(f)
        if out is not None:
            return out.rule_id
        if normalize_polarity(f):
            return "flip"
        for rule in (shared_pair_reduction, neg_clause_reductions):
            out = rule(f)
            if out is not None:
                return out.rule_id
        budget = self.config.sim_step6d_budget if simulate else self.config.step6d_budget
        if self.config.max_subset >= 1 and budget > 0:
            if step6d_search(f, self.config.max_subset, budget, self.cache) is not None:
                return "S6d"
        return None
