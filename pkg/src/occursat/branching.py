"""Branching factors and the measure-and-gate branching rules."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .formula import ContractError, Formula, var
from .pipeline import Reducer

GATE = 1.1199
GATE_SLACK = 1e-9


def tau(vector: Sequence[int]) -> float:
    """Root x >= 1 of sum(x ** -n) == 1 for a branching vector."""
    vector = [int(n) for n in vector]
    if not vector:
        raise ContractError("empty branching vector")
    if min(vector) < 1:
        raise ContractError(f"branching vector entries must be >= 1: {vector}")
    return kernels.tau_root(vector)


@dataclass(frozen=True)
class BranchVector:
    eliminations: tuple[int, ...]

    def __post_init__(self):
        if not self.eliminations or min(self.eliminations) < 1:
            raise ContractError(f"bad branching vector {self.eliminations}")


@dataclass(frozen=True)
class BranchDecision:
    literals_per_branch: tuple[tuple[int, ...], ...]
    vector: BranchVector
    factor: float
    step: int

    @property
    def accepted(self) -> bool:
        return self.factor <= GATE + GATE_SLACK


@dataclass
class Simulation:
    eliminated: int
    verdict: str | None


def simulate_branch(
    f: Formula, literals: Sequence[int], reducer: Reducer | None = None
) -> Simulation:
    """Variables eliminated by setting ``literals`` and reducing; ``f`` is restored."""
    reducer = reducer or Reducer()
    if len({var(l) for l in literals}) != len(literals):
        raise ContractError("branch literals must be over distinct variables")
    reducer.stats.simulations += 1
    before = f.num_vars
    token = f.mark()
    try:
        for lit in literals:
            if var(lit) in f.deg:
                f.assign(lit)
        verdict = reducer.fixpoint(f, simulate=True)
        eliminated = before if verdict is not None else before - f.num_vars
    finally:
        f.rollback(token)
    return Simulation(eliminated, verdict)


class _Scan:
    """Memoized simulations plus best-so-far tracking for one node."""

    def __init__(self, f: Formula, reducer: Reducer):
        self.f = f
        self.reducer = reducer
        self.memo: dict[tuple[int, ...], Simulation] = {}
        self.best: BranchDecision | None = None

    def sim(self, lits: tuple[int, ...]) -> Simulation:
        key = tuple(sorted(lits))
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = simulate_branch(self.f, lits, self.reducer)
        return hit

    def decide(self, branches: tuple[tuple[int, ...], ...], step: int) -> BranchDecision:
        vec = tuple(max(1, self.sim(b).eliminated) for b in branches)
        d = BranchDecision(branches, BranchVector(vec), tau(vec), step)
        if self.best is None or d.factor < self.best.factor:
            self.best = d
        return d


def _neg_clauses_in_scan_order(f: Formula) -> list[int]:
    return sorted(f.all_negative(), key=lambda c: (len(f.clauses[c]), c))


def step7_branch(
    f: Formula, reducer: Reducer | None = None, scan: _Scan | None = None
) -> BranchDecision | None:
    """First (w, not w) split on an all-negative clause variable passing the gate."""
    scan = scan or _Scan(f, reducer or Reducer())
    for cid in _neg_clauses_in_scan_order(f):
        for w in sorted(var(l) for l in f.clauses[cid]):
            d = scan.decide(((w,), (-w,)), 7)
            if d.accepted:
                return d
    return None


def step9_branch(
    f: Formula, reducer: Reducer | None = None, scan: _Scan | None = None
) -> BranchDecision | None:
    """First three-way split [not x, z], [not x, not z], [x] passing the gate."""
    scan = scan or _Scan(f, reducer or Reducer())
    for cid in _neg_clauses_in_scan_order(f):
        c = f.clauses[cid]
        if len(c) != 2:
            continue
        for x in sorted(var(l) for l in c):
            for z in sorted(f.neighbors(x)):
                d = scan.decide(((-x, z), (-x, -z), (x,)), 9)
                if d.accepted:
                    return d
    return None
