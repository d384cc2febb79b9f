"""Variable-eliminating rewrite rules for formulas of maximum degree three.

Each public rule fires at most once per call and reports what it did as a
:class:`RuleOutcome`; the driver restarts from the top after every firing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .formula import Formula, InvariantError, var
from .reconstruction import Blocked, ReconstructionRecord
from .safe_resolution import drop_subsumed, resolve_variable, split_common

RULE_IDS = ("S4a", "S4b", "S5a", "S5b", "S5c", "S5d", "S6a", "S6b", "S6c", "S8")


@dataclass(frozen=True)
class RuleOutcome:
    rule_id: str
    vars_eliminated: int
    journal: tuple[ReconstructionRecord, ...] = ()


def _outcome(f: Formula, rule: str, before: int, jstart: int) -> RuleOutcome:
    return RuleOutcome(rule, before - f.num_vars, tuple(f.journal[jstart:]))


# -- step 4 ---------------------------------------------------------------------


def eliminate_low_degree(f: Formula) -> RuleOutcome | None:
    """Assign one pure variable, or failing that resolve one (1,1) variable."""
    before, j = f.num_vars, len(f.journal)
    one_one = None
    for v in sorted(f.deg):
        p, q = len(f.occ.get(v, ())), len(f.occ.get(-v, ()))
        if q == 0 or p == 0:
            f.assign(v if q == 0 else -v)
            return _outcome(f, "S4a", before, j)
        if one_one is None and p == 1 and q == 1:
            one_one = v
    if one_one is None:
        return None
    resolve_variable(f, one_one)
    return _outcome(f, "S4b", before, j)


def normalize_polarity(f: Formula) -> list[int]:
    """Flip every variable with more negative than positive occurrences."""
    flipped = [v for v in sorted(f.deg) if f.neg(v) > f.pos(v)]
    for v in flipped:
        f.flip(v)
    return flipped


def all_two_one(f: Formula) -> bool:
    return all(f.pos(v) == 2 and f.neg(v) == 1 for v in f.deg)


# -- step 5 ---------------------------------------------------------------------


def _needs_split(f: Formula, common: tuple[int, ...]) -> bool:
    if len(common) >= 2:
        return True
    return len(common) == 1 and f.degree(var(common[0])) > 3


def _resolve_then_split(
    f: Formula, xs: Iterable[int], common: Iterable[int]
) -> None:
    new: list[int] = []
    for x in xs:
        if x in f.deg:
            new = [c for c in new if c in f.clauses]
            new += resolve_variable(f, x)
    new = drop_subsumed(f, new)
    common = tuple(dict.fromkeys(common))
    if any(-l in common for l in common):
        return
    cset = set(common)
    targets = [c for c in new if cset < set(f.clauses[c])]
    if len(targets) >= 2 and _needs_split(f, common):
        split_common(f, targets, common)


def _rest(clause: tuple[int, ...], *drop: int) -> tuple[int, ...]:
    return tuple(l for l in clause if l not in drop)


def _only(f: Formula, lit: int) -> tuple[int, ...]:
    (cid,) = f.occ[lit]
    return f.clauses[cid]


def shared_pair_reduction(f: Formula) -> RuleOutcome | None:
    """Handle two (2,1) variables that occur together in at least two clauses."""
    for x in sorted(f.deg):
        if f.profile(x) != (2, 1):
            continue
        together: dict[int, int] = {}
        for cid in f.clauses_of(x):
            for l in f.clauses[cid]:
                w = var(l)
                if w != x:
                    together[w] = together.get(w, 0) + 1
        for y in sorted(together):
            if together[y] < 2 or f.profile(y) != (2, 1):
                continue
            out = _shared_pair(f, x, y)
            if out is not None:
                return out
    return None


def _shared_pair(f: Formula, x: int, y: int) -> RuleOutcome | None:
    before, j = f.num_vars, len(f.journal)
    nx, ny = _only(f, -x), _only(f, -y)
    if y in nx and x in ny:
        f.assign(x)
        f.assign(y)
        return _outcome(f, "S5d", before, j)
    shared = sorted(f.clauses_of(x) & f.clauses_of(y))
    signs = sorted(
        (1 if x in f.clauses[c] else -1, 1 if y in f.clauses[c] else -1) for c in shared
    )
    if signs == [(1, 1), (1, 1)]:
        rule, common = "S5a", _rest(nx, -x) + _rest(ny, -y)
    elif signs == [(1, -1), (1, 1)] or signs == [(-1, 1), (1, 1)]:
        if signs[0] == (-1, 1):
            x, y = y, x
            nx, ny = ny, nx
        # x positive in both shared clauses, y negative in one of them
        rule, common = "S5b", _rest(ny, x, -y) + _rest(nx, -x)
    elif (-1, -1) in signs:
        rule, common = "S5c", ()
    else:
        return None
    _resolve_then_split(f, (x, y), common)
    if f.num_vars >= before:
        raise InvariantError(f"{rule} on {x},{y} did not eliminate a variable")
    return _outcome(f, rule, before, j)


# -- step 6a-c -------------------------------------------------------------------


def is_blocked(f: Formula, clause: Iterable[int], lit: int) -> bool:
    """Every resolvent of ``clause`` on ``lit`` with the formula is a tautology."""
    cs = set(clause)
    for cid in f.occ.get(-lit, ()):
        if not any(-l in cs for l in f.clauses[cid] if l != -lit):
            return False
    return True


def _negative_pairs(f: Formula):
    """Yield (N cid, x, y) for ordered pairs of negative literals in one clause."""
    for cid in sorted(f.clauses):
        negs = [-l for l in f.clauses[cid] if l < 0]
        if len(negs) < 2:
            continue
        for x in negs:
            for y in negs:
                if x != y:
                    yield cid, x, y


def rule6a(f: Formula) -> RuleOutcome | None:
    for n, x, y in _negative_pairs(f):
        for p in sorted(f.occ.get(x, ())):
            pc = f.clauses[p]
            for u in pc:
                if u <= 0 or u == x or u == y or f.profile(u) != (2, 1):
                    continue
                (q,) = f.occ[-u]
                qc = f.clauses[q]
                if q in (n, p) or y not in qc or x in qc or -x in qc:
                    continue
                out = _apply6a(f, x, y, u, p, q)
                if out is not None:
                    return out
    return None


def _apply6a(f: Formula, x: int, y: int, u: int, p: int, q: int) -> RuleOutcome | None:
    before, j = f.num_vars, len(f.journal)
    token = f.mark()
    pc, qc = f.clauses[p], f.clauses[q]
    dropped = set(_rest(pc, u)) | set(_rest(qc, -u))
    new = resolve_variable(f, u)
    target = [c for c in new if set(f.clauses[c]) == dropped]
    if target:
        f.remove_clause(target[0])
        for lit in (x, y):
            if is_blocked(f, dropped, lit):
                f.record(Blocked(lit, tuple(sorted(dropped, key=abs))))
                break
        else:
            f.rollback(token)
            return None
    if f.max_degree() > 3 or f.num_vars >= before:
        f.rollback(token)
        return None
    return _outcome(f, "S6a", before, j)


def _two_clause_partner(f: Formula, x: int) -> dict[int, int]:
    """Positive partner literal u -> cid for each 2-clause (x or u)."""
    out = {}
    for cid in f.occ.get(x, ()):
        c = f.clauses[cid]
        if len(c) == 2:
            u = c[0] if c[1] == x else c[1]
            if u > 0:
                out[u] = cid
    return out


def rule6b(f: Formula) -> RuleOutcome | None:
    for n, x, y in _negative_pairs(f):
        if x > y:
            continue
        px, py = _two_clause_partner(f, x), _two_clause_partner(f, y)
        for u in sorted(set(px) & set(py)):
            if u in (x, y):
                continue
            before, j = f.num_vars, len(f.journal)
            token = f.mark()
            gamma = _rest(f.clauses[n], -x, -y)
            _resolve_then_split(f, (x, y), gamma)
            if f.max_degree() > 3 or f.num_vars >= before:
                f.rollback(token)
                continue
            return _outcome(f, "S6b", before, j)
    return None


def rule6c(f: Formula) -> RuleOutcome | None:
    for n, x, y in _negative_pairs(f):
        if len(f.clauses[n]) != 2:
            continue
        for u, pu in sorted(_two_clause_partner(f, x).items()):
            for q in sorted(f.occ.get(y, ())):
                qc = f.clauses[q]
                if u not in qc or len(qc) < 3:
                    continue
                others = sorted(f.occ[y] - {q})
                if len(others) != 1:
                    continue
                gamma = _rest(f.clauses[others[0]], y)
                before, j = f.num_vars, len(f.journal)
                token = f.mark()
                _resolve_then_split(f, (x, y), gamma)
                if f.max_degree() > 3 or f.num_vars >= before:
                    f.rollback(token)
                    continue
                return _outcome(f, "S6c", before, j)
    return None


def neg_clause_reductions(f: Formula) -> RuleOutcome | None:
    """Try 6a everywhere, then 6b, then 6c; first applicable rewrite fires."""
    for rule in (rule6a, rule6b, rule6c):
        out = rule(f)
        if out is not None:
            return out
    return None


# -- step 8 ---------------------------------------------------------------------


def autarky_set(f: Formula) -> set[int]:
    inneg = {var(l) for cid in f.all_negative() for l in f.clauses[cid]}
    return set(f.deg) - inneg


def autarky_reduce(f: Formula) -> RuleOutcome | None:
    """Set every variable outside the all-negative clauses to 1."""
    s = autarky_set(f)
    if not s:
        return None
    for cid, c in f.clauses.items():
        if any(l < 0 and -l in s for l in c) and not any(l > 0 and l in s for l in c):
            raise InvariantError(f"set S is not autarkic: clause {c}")
    before, j = f.num_vars, len(f.journal)
    for v in sorted(s):
        if v in f.deg:
            f.assign(v)
    if not f.is_monotone():
        raise InvariantError("formula not monotone after assigning S")
    return _outcome(f, "S8", before, j)
