"""Reverse resolution: cap every variable at three occurrences.

A variable with ``d > 3`` occurrences is cut down one occurrence at a time:
two clauses (u or A), (u or B) become (v or A), (v or B), (not v or u) with v
fresh.  Variables with at most two occurrences are eliminated beforehand by
assignment or resolution, so afterwards each surviving variable u stands for
exactly ``deg(u) - 2`` variables of the output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .formula import Formula
from .reconstruction import Introduced
from .safe_resolution import resolve_variable


@dataclass(frozen=True)
class DegreeStats:
    max_degree: int
    avg_degree: Fraction
    rep_total: int


def rep(degree: int) -> int:
    return degree - 2 if degree >= 2 else 0


def degree_stats(f: Formula) -> DegreeStats:
    degs = list(f.deg.values())
    n = len(degs)
    return DegreeStats(
        max(degs, default=0),
        Fraction(sum(degs), n) if n else Fraction(0),
        sum(rep(d) for d in degs),
    )


def eliminate_degree_two(f: Formula) -> DegreeStats:
    """Assign or resolve away variables of degree at most two, to a fixpoint.

    Returns the degree statistics of what is left, which is the formula the
    chain construction actually sees.
    """
    changed = True
    while changed and not f.has_empty_clause():
        changed = False
        for v in sorted(f.deg):
            if v not in f.deg or f.deg[v] > 2:
                continue
            p, q = f.pos(v), f.neg(v)
            if q == 0 or p == 0:
                f.assign(v if q == 0 else -v)
            else:
                resolve_variable(f, v)
            changed = True
    return degree_stats(f)


def split_occurrences(f: Formula, mapping: dict[int, list[int]] | None = None) -> int:
    """Chain-split every variable above three occurrences; return fresh count."""
    fresh = 0
    for u in sorted(f.deg):
        while f.deg.get(u, 0) > 3:
            lit = u if f.pos(u) >= f.neg(u) else -u
            a, b = sorted(f.occ[lit])[-2:]
            v = f.fresh_variable()
            ca, cb = f.remove_clause(a), f.remove_clause(b)
            added = (
                tuple(l for l in ca if l != lit) + (v,),
                tuple(l for l in cb if l != lit) + (v,),
                (-v, lit),
            )
            for c in added:
                f.add_clause(c)
            f.record(Introduced(v, added))
            if mapping is not None:
                mapping.setdefault(u, []).append(v)
            fresh += 1
    return fresh


def reduce_degree_inplace(f: Formula) -> tuple[dict[int, list[int]], DegreeStats]:
    mapping: dict[int, list[int]] = {}
    if f.max_degree() <= 3:
        return mapping, degree_stats(f)
    stats = eliminate_degree_two(f)
    split_occurrences(f, mapping)
    return mapping, stats


def reduce_degree(f: Formula) -> tuple[Formula, dict[int, list[int]]]:
    """Equisatisfiable copy with every variable occurring at most three times.

    The mapping sends each split variable to the chain of fresh variables
    that took over its occurrences; the copy's journal carries everything
    needed to rebuild a model of the input.
    """
    g = f.copy()
    mapping, _ = reduce_degree_inplace(g)
    return g, mapping
