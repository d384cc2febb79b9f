"""Normalization to fixpoint: units, trivial clauses, repeated literals, subsumption."""

from __future__ import annotations

from .formula import Formula


def _clean(lits: tuple[int, ...]) -> tuple[int, ...] | None:
    """Deduplicated literals, or None for a tautology."""
    seen = set()
    out = []
    for lit in lits:
        if -lit in seen:
            return None
        if lit not in seen:
            seen.add(lit)
            out.append(lit)
    return tuple(out)


def _subsumed_by_other(f: Formula, cid: int, lits: tuple[int, ...]) -> bool:
    if not lits:
        return False
    s = set(lits)
    clauses, occ = f.clauses, f.occ
    n = len(s)
    for lit in lits:
        for other in occ[lit]:
            if other == cid:
                continue
            o = clauses[other]
            if len(o) <= n and s.issuperset(o):
                return True
    return False


def _subsumes_others(f: Formula, cid: int, lits: tuple[int, ...]) -> list[int]:
    occ, clauses = f.occ, f.clauses
    rare = min(lits, key=lambda l: len(occ[l]))
    s = set(lits)
    out = []
    for other in occ[rare]:
        if other != cid and len(clauses[other]) >= len(s) and s.issubset(clauses[other]):
            out.append(other)
    return out


def standardize(f: Formula, incremental: bool = False) -> bool:
    """Standardize ``f`` in place; return True if anything changed.

    With ``incremental`` only clauses added since the last call are examined,
    which is sufficient when the formula was standardized before them.
    Assignments forced by unit clauses are journaled by ``Formula.assign``.
    """
    if not incremental:
        f._dirty = set(f.clauses)
    changed = False
    clauses = f.clauses
    while f._dirty and not f._empty:
        cid = min(f._dirty)
        f._dirty.discard(cid)
        lits = clauses.get(cid)
        if lits is None:
            continue
        cleaned = _clean(lits)
        if cleaned is None:
            f.remove_clause(cid)
            changed = True
            continue
        if len(cleaned) != len(lits):
            cid = f.replace_clause(cid, cleaned)
            f._dirty.discard(cid)
            lits = cleaned
            changed = True
        if not lits:
            break
        if len(lits) == 1:
            f.assign(lits[0])
            changed = True
            continue
        if _subsumed_by_other(f, cid, lits):
            f.remove_clause(cid)
            changed = True
            continue
        for other in _subsumes_others(f, cid, lits):
            f.remove_clause(other)
            changed = True
    if f._empty:
        f._dirty.clear()
    return changed


def is_standardized(f: Formula) -> bool:
    g = f.copy()
    return not standardize(g)
