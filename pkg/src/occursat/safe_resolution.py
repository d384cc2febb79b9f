"""Variable resolution, degree renormalization and the resolve-a-subset rule.

``safe_resolve`` resolves every variable of a set and then restores the
three-occurrence bound by introducing fresh variables.  ``step6d_search``
looks for a set of at most ten variables where doing so shrinks the
formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .formula import Formula, InvariantError, var
from .reconstruction import Introduced, Resolved
from .standardize import standardize


class SafeResolutionAborted(Exception):
    """Intermediate clause growth exceeded the configured bound."""


def resolve_variable(f: Formula, v: int) -> list[int]:
    """Replace every clause on ``v`` by the nontrivial resolvents; return new cids."""
    pos = sorted(f.occ.get(v, ()))
    neg = sorted(f.occ.get(-v, ()))
    removed_ids = sorted(set(pos) | set(neg))
    resolvents = []
    for p in pos:
        pl = f.clauses[p]
        for q in neg:
            if p == q:
                continue
            seen: set[int] = set()
            out = []
            trivial = False
            for lit in pl + f.clauses[q]:
                if lit == v or lit == -v or lit in seen:
                    continue
                if -lit in seen:
                    trivial = True
                    break
                seen.add(lit)
                out.append(lit)
            if not trivial:
                resolvents.append(tuple(out))
    removed = tuple(f.remove_clause(c) for c in removed_ids)
    f.record(Resolved(v, removed))
    return [f.add_clause(r) for r in resolvents]


def split_common(f: Formula, cids: Iterable[int], common: Iterable[int]) -> int:
    """Rewrite clauses (C or R_i) into (R_i or z) plus one (not z or C).

    Returns the fresh variable z.
    """
    common = tuple(common)
    cset = set(common)
    z = f.fresh_variable()
    added = []
    for cid in cids:
        lits = f.remove_clause(cid)
        if not cset.issubset(lits):
            raise InvariantError(f"clause {lits} does not contain {common}")
        added.append(tuple(l for l in lits if l not in cset) + (z,))
    added.append((-z,) + common)
    for c in added:
        f.add_clause(c)
    f.record(Introduced(z, tuple(added)))
    return z


def drop_subsumed(f: Formula, cids: Iterable[int]) -> list[int]:
    """Among ``cids``, remove clauses subsumed by another one; return survivors."""
    alive = [c for c in cids if c in f.clauses]
    alive.sort(key=lambda c: (len(f.clauses[c]), c))
    keep: list[int] = []
    for c in alive:
        s = set(f.clauses[c])
        if any(set(f.clauses[k]) <= s for k in keep):
            f.remove_clause(c)
        else:
            keep.append(c)
    return sorted(keep)


def _largest_shared(f: Formula, since: int = 0) -> tuple[int, int, tuple[int, ...]] | None:
    """Pair of clauses sharing the most literals (at least two).

    Only pairs with a clause id >= ``since`` are examined.
    """
    shared: dict[tuple[int, int], int] = {}
    occ = f.occ
    for a, lits in f.clauses.items():
        if a < since:
            continue
        for lit in lits:
            for b in occ[lit]:
                if b == a or (b >= since and b < a):
                    continue
                key = (a, b) if a < b else (b, a)
                shared[key] = shared.get(key, 0) + 1
    best = None
    for pair, n in shared.items():
        if n >= 2 and (best is None or n > best[0] or (n == best[0] and pair < best[1])):
            best = (n, pair)
    if best is None:
        return None
    a, b = best[1]
    cb = set(f.clauses[b])
    common = tuple(l for l in f.clauses[a] if l in cb)
    return a, b, common


def _overfull(f: Formula, since: int) -> int | None:
    """Lowest-id variable of maximum degree >= 4 among clauses from ``since`` on."""
    if since <= 0:
        cands = f.deg
    else:
        cands = {var(l) for c, lits in f.clauses.items() if c >= since for l in lits}
    best = None
    for v in cands:
        d = f.deg.get(v, 0)
        if d >= 4 and (best is None or (d, -v) > (f.deg[best], -best)):
            best = v
    return best


def renormalize(
    f: Formula, since: int = 0, max_rounds: int | None = None, cap: int | None = None
) -> int:
    """Standardize, split repeated subclauses, then split high-degree variables.

    Returns the number of fresh variables introduced.  On exit every variable
    occurs at most three times (unless the formula became unsatisfiable).
    ``since`` restricts the search to clauses with id at least ``since``; it
    is only sound when the older clauses share at most one literal pairwise
    and have maximum degree three among themselves.  With ``cap`` set,
    raise SafeResolutionAborted once the variable count exceeds it.
    """
    fresh = 0
    rounds = 0
    limit = max_rounds or 20 * (len(f.clauses) + 10)
    standardize(f, incremental=True)
    while not f.has_empty_clause():
        rounds += 1
        if rounds > limit:
            raise InvariantError("renormalization did not converge")
        if cap is not None and f.num_vars > cap:
            raise SafeResolutionAborted(f.num_vars)
        hit = _largest_shared(f, since)
        if hit is not None:
            a, b, common = hit
            split_common(f, (a, b), common)
            fresh += 1
            standardize(f, incremental=True)
            continue
        x = _overfull(f, since)
        if x is not None:
            lit = x if f.pos(x) >= f.neg(x) else -x
            a, b = sorted(f.occ[lit])[:2]
            split_common(f, (a, b), (lit,))
            fresh += 1
            standardize(f, incremental=True)
            continue
        break
    return fresh


def safe_resolve(
    f: Formula,
    variables: Iterable[int],
    blowup: float | None = None,
    local: bool = False,
    cap: int | None = None,
) -> int:
    """Resolve every variable of ``variables`` then renormalize, in place.

    Variables are taken in ascending current degree, ties by id.  With
    ``blowup`` set, abort (raising SafeResolutionAborted, formula left
    partially rewritten) when the working clause set grows past ``blowup``
    times its initial size.  Returns the number of fresh variables.
    ``local`` limits renormalization to the rewritten clauses (see
    :func:`renormalize`), and ``cap`` is handed on to it.
    """
    since = f._next_cid if local else 0
    todo = {v for v in variables if v in f.deg}
    working = set(f.clauses_containing(todo))
    limit = None if blowup is None else blowup * max(1, len(working))
    while todo:
        v = min(todo, key=lambda u: (f.deg.get(u, 0), u))
        todo.discard(v)
        if v not in f.deg:
            continue
        gone = f.clauses_of(v)
        working -= gone
        working.update(resolve_variable(f, v))
        if limit is not None and len(working) > limit:
            raise SafeResolutionAborted(sorted(variables))
    return renormalize(f, since, cap=cap)


# -- subset search -------------------------------------------------------------


@dataclass
class SubsetCandidate:
    variables: frozenset[int]
    maximal_nonempty: frozenset[tuple[int, ...]]


@dataclass
class Step6dCache:
    """Memo of rejected candidates and fully searched seeds, keyed by content.

    Clause ids are never reused for different content, so an identical set of
    clause ids around a candidate means an identical local structure.
    """

    rejected: set = field(default_factory=set)
    seeds: dict = field(default_factory=dict)
    evaluated: int = 0
    applied: int = 0
    surplus: dict = field(default_factory=dict)


def candidate_of(f: Formula, vs: frozenset[int]) -> SubsetCandidate:
    ms = set()
    for cid in f.clauses_containing(vs):
        m = tuple(sorted((l for l in f.clauses[cid] if var(l) not in vs), key=abs))
        if m:
            ms.add(m)
    return SubsetCandidate(vs, frozenset(ms))


def few_boundary_subclauses(f: Formula, vs: Iterable[int]) -> bool:
    """At least four variables and at most three distinct nonempty boundary subclauses."""
    vs = frozenset(vs)
    return len(vs) > 3 and len(candidate_of(f, vs).maximal_nonempty) <= 3


def _region(f: Formula, vs: Iterable[int]) -> frozenset[int]:
    out: set[int] = set()
    for v in vs:
        out |= f.occ.get(v, set())
        out |= f.occ.get(-v, set())
    return frozenset(out)


def try_safe_resolve(f: Formula, vs: Iterable[int], blowup: float = 4.0) -> bool:
    """Apply the safe resolution of ``vs`` if it lowers the variable count."""
    before = f.num_vars
    token = f.mark()
    try:
        safe_resolve(f, vs, blowup=blowup, local=True, cap=before)
    except SafeResolutionAborted:
        f.rollback(token)
        return False
    if f.num_vars < before or f.has_empty_clause():
        return True
    f.rollback(token)
    return False


def _measure(f: Formula, vs: frozenset[int]) -> tuple[int, dict[int, int]]:
    """Distinct nonempty boundary subclauses of ``vs`` and boundary-variable counts."""
    counts: dict[int, int] = {}
    ms = set()
    clauses = f.clauses
    for cid in f.clauses_containing(vs):
        m = []
        for l in clauses[cid]:
            w = l if l > 0 else -l
            if w not in vs:
                m.append(l)
                counts[w] = counts.get(w, 0) + 1
        if m:
            m.sort()
            ms.add(tuple(m))
    return len(ms), counts


def step6d_search(
    f: Formula,
    max_size: int = 10,
    budget: int = 50_000,
    cache: Step6dCache | None = None,
    slack: int = 1,
    beam: int = 3,
    fanout: int | None = 5,
) -> frozenset[int] | None:
    """Find and apply a decreasing safe resolution; return the resolved set.

    Candidates are connected variable sets grown from the variables of each
    all-negative clause one boundary variable at a time.  Each level keeps
    the ``beam`` sets with the smallest surplus of distinct nonempty boundary
    subclauses over set size, and a set is resolved for real only when that
    surplus is at most ``slack``.  Each kept set spawns children for its
    ``fanout`` most shared boundary variables.  All seeds advance one level
    per round, so small sets anywhere are tried before large ones.  ``budget`` caps the
    number of sets measured per call.
    """
    if cache is None:
        cache = Step6dCache()
    evaluated = 0
    seen: set[frozenset[int]] = set()
    active = []
    for seed_cid in f.all_negative():
        seed = frozenset(var(l) for l in f.clauses[seed_cid])
        if len(seed) > max_size or seed in seen:
            continue
        seen.add(seed)
        memo = cache.seeds.get(seed)
        if memo is not None and _region(f, memo[0]) == memo[1]:
            continue
        active.append((seed, [seed], set(seed)))
    while active:
        still = []
        for seed, level, touched in active:
            scored = []
            for vs in level:
                if evaluated >= budget:
                    return None
                evaluated += 1
                cache.evaluated += 1
                mu, counts = _measure(f, vs)
                touched.update(vs)
                scored.append((mu - len(vs), len(counts), sorted(vs), vs, counts))
            scored.sort(key=lambda t: t[:3])
            nxt = []
            for surplus, _, _, vs, counts in scored[:beam]:
                if len(vs) >= 2 and surplus <= slack:
                    touched.update(counts)
                    key = _region(f, vs | counts.keys())
                    if key not in cache.rejected:
                        if try_safe_resolve(f, vs):
                            cache.applied += 1
                            cache.surplus[surplus] = cache.surplus.get(surplus, 0) + 1
                            return vs
                        cache.rejected.add(key)
                if len(vs) >= max_size:
                    continue
                for w in sorted(counts, key=lambda w: (-counts[w], w))[:fanout]:
                    child = vs | {w}
                    if child not in seen:
                        seen.add(child)
                        nxt.append(child)
            if nxt:
                still.append((seed, nxt, touched))
            else:
                cache.seeds[seed] = (frozenset(touched), _region(f, touched))
        active = still
    return None
