"""Structure check for the final monotone formula and a small 3-SAT solver."""

from __future__ import annotations

from dataclasses import dataclass, field

from .formula import ContractError, Formula, var
from .verdict import SAT, UNSAT, SolveVerdict


@dataclass
class EndgameReport:
    num_vars: int
    three_clauses: int
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_endgame(f: Formula) -> EndgameReport:
    n = f.num_vars
    lengths = [len(c) for c in f.clauses.values()]
    rep = EndgameReport(n, sum(1 for k in lengths if k == 3))
    if not f.is_monotone():
        rep.violations.append("formula is not monotone")
    bad = sorted({k for k in lengths if k not in (2, 3)})
    if bad:
        rep.violations.append(f"clause lengths {bad} outside {{2, 3}}")
    if 3 * rep.three_clauses > n:
        rep.violations.append(f"{rep.three_clauses} clauses of length 3 with only {n} variables")
    for cid in f.all_negative():
        c = f.clauses[cid]
        if len(c) != 3:
            continue
        for l in c:
            others = f.occ.get(-l, set())
            if any(len(f.clauses[o]) == 3 for o in others):
                rep.violations.append(f"variable {-l} of {c} also occurs in a positive 3-clause")
    return rep


def solve_3sat(f: Formula | list) -> SolveVerdict:
    """Branch on a literal of a shortest clause with unit propagation."""
    clauses = [tuple(c) for c in (f.clause_list() if isinstance(f, Formula) else f)]
    if any(len(c) > 3 for c in clauses):
        raise ContractError("solve_3sat needs clauses of length at most 3")
    model: dict[int, bool] = {}
    if _search([frozenset(c) for c in clauses], model):
        for c in clauses:
            for l in c:
                model.setdefault(var(l), False)
        return SolveVerdict(SAT, model=model)
    return SolveVerdict(UNSAT)


def _simplify(clauses, lit):
    out = []
    for c in clauses:
        if lit in c:
            continue
        if -lit in c:
            c = c - {-lit}
            if not c:
                return None
        out.append(c)
    return out


def _search(clauses, model) -> bool:
    if any(not c for c in clauses):
        return False
    trail = []
    while True:
        unit = next((c for c in clauses if len(c) == 1), None)
        if unit is None:
            break
        (lit,) = unit
        trail.append(lit)
        clauses = _simplify(clauses, lit)
        if clauses is None:
            return False
    if not clauses:
        for lit in trail:
            model[var(lit)] = lit > 0
        return True
    shortest = min(clauses, key=lambda c: (len(c), min(c, key=abs)))
    pick = min(shortest, key=abs)
    for lit in (pick, -pick):
        rest = _simplify(clauses, lit)
        if rest is not None and _search(rest, model):
            model[var(lit)] = lit > 0
            for t in trail:
                model[var(t)] = t > 0
            return True
    return False
