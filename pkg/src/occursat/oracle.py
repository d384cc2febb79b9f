"""Brute-force satisfiability oracle and seeded instance generators.

The oracle only shares the clause list with the solver; it never touches the
rewrite machinery, which is what makes it usable as an independent check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import kernels
from .formula import Formula, var
from .verdict import SAT, UNSAT, SolveVerdict


class OracleRefusal(ValueError):
    pass


class GenerationError(ValueError):
    pass


def _clauses_of(f) -> list[tuple[int, ...]]:
    if isinstance(f, Formula):
        return f.clause_list()
    return [tuple(c) for c in f]


def brute_force_sat(f: Formula | Iterable[Iterable[int]], cap: int = 24) -> SolveVerdict:
    clauses = _clauses_of(f)
    old = sorted({var(l) for c in clauses for l in c})
    if len(old) > cap:
        raise OracleRefusal(f"{len(old)} variables exceeds oracle cap {cap}")
    if any(len(c) == 0 for c in clauses):
        return SolveVerdict(UNSAT)
    new = {v: i for i, v in enumerate(old, 1)}
    lits: list[int] = []
    starts = [0]
    for c in clauses:
        lits.extend(new[l] if l > 0 else -new[-l] for l in c)
        starts.append(len(lits))
    vals = kernels.dpll(len(old), lits, starts)
    if vals is None:
        return SolveVerdict(UNSAT)
    return SolveVerdict(SAT, model={v: vals[new[v]] > 0 for v in old})


def oracle_sat(f, cap: int = 24) -> bool:
    return brute_force_sat(f, cap).is_sat


# -- generators ---------------------------------------------------------------


@dataclass
class Profile:
    """Shape of a random 3-occur instance.

    ``lengths`` weights clause lengths; ``degrees`` weights per-variable
    occurrence counts (ignored when ``regular21``, which gives every variable
    two positive and one negative occurrence).  ``neg_rate`` is the chance a
    clause is drawn entirely from negative occurrence slots.  ``monotone``
    splits positive and negative slots into separate clauses, which yields
    the hard core the branching rules are built for.
    """

    lengths: Mapping[int, float] = field(default_factory=lambda: {2: 1.0, 3: 2.0, 4: 0.5})
    degrees: Mapping[int, float] = field(default_factory=lambda: {1: 0.1, 2: 0.3, 3: 1.0})
    regular21: bool = False
    neg_rate: float = 0.15
    monotone: bool = False


def _weighted(rng: random.Random, weights: Mapping[int, float]) -> int:
    keys = sorted(weights)
    return rng.choices(keys, weights=[weights[k] for k in keys])[0]


def random_3occur(n: int, profile: Profile | None = None, seed: int = 0) -> Formula:
    if n < 3:
        raise GenerationError("need at least 3 variables")
    profile = profile or Profile()
    if not profile.lengths or min(profile.lengths) < 1 or max(profile.lengths) > n:
        raise GenerationError(f"clause lengths {sorted(profile.lengths)} infeasible for n={n}")
    if not profile.regular21 and (
        not profile.degrees or min(profile.degrees) < 1 or max(profile.degrees) > 3
    ):
        raise GenerationError("occurrence counts must lie in 1..3")
    rng = random.Random(seed)
    for _ in range(200):
        clauses = _try_3occur(n, profile, rng)
        if clauses is not None:
            return Formula(clauses, num_vars=n)
    raise GenerationError("could not place occurrences without repeating a variable in a clause")


def _partition(rng: random.Random, total: int, weights: Mapping[int, float]) -> list[int]:
    """Split ``total`` slots into clause lengths; a leftover single slot joins the last clause."""
    out: list[int] = []
    left = total
    while left > 0:
        k = min(_weighted(rng, weights), left)
        if k == 1 and out and min(weights) > 1:
            out[-1] += 1
        else:
            out.append(k)
        left -= k
    return out


def _try_3occur(n: int, profile: Profile, rng: random.Random):
    pos_slots: list[int] = []
    neg_slots: list[int] = []
    for v in range(1, n + 1):
        if profile.regular21:
            p, q = 2, 1
        else:
            d = _weighted(rng, profile.degrees)
            q = sum(rng.random() < 0.4 for _ in range(d))
            p = d - q
        if not profile.regular21 and rng.random() < 0.5:
            p, q = q, p
        pos_slots += [v] * p
        neg_slots += [-v] * q
    rng.shuffle(pos_slots)
    rng.shuffle(neg_slots)
    if profile.monotone:
        plan = [(k, False) for k in _partition(rng, len(pos_slots), profile.lengths)]
        plan += [(k, True) for k in _partition(rng, len(neg_slots), profile.lengths)]
        rng.shuffle(plan)
    else:
        plan = [(k, None) for k in _partition(rng, len(pos_slots) + len(neg_slots), profile.lengths)]
    clauses = []
    for k, polarity in plan:
        if polarity is not None:
            take_neg = polarity
        else:
            take_neg = rng.random() < profile.neg_rate and len(neg_slots) >= k
        clause: list[int] = []
        used: set[int] = set()
        for _ in range(k):
            if take_neg:
                pools = [neg_slots]
            elif polarity is False:
                pools = [pos_slots]
            else:
                pools = [p for p in (pos_slots, neg_slots) if p]
                pools = [rng.choices(pools, weights=[len(p) for p in pools])[0]] + pools
            placed = False
            for pool in pools:
                for i in range(len(pool) - 1, -1, -1):
                    if var(pool[i]) not in used:
                        lit = pool.pop(i)
                        clause.append(lit)
                        used.add(var(lit))
                        placed = True
                        break
                if placed:
                    break
            if not placed:
                return None
        clauses.append(clause)
    return clauses


def random_cnf(n: int, m: int, k: int, seed: int = 0) -> Formula:
    """``m`` uniform clauses over ``k`` distinct variables out of ``n``."""
    if n < 1 or m < 0 or k < 1:
        raise GenerationError("need n >= 1, m >= 0, k >= 1")
    k = min(k, n)
    rng = random.Random(seed)
    clauses = []
    for _ in range(m):
        vs = rng.sample(range(1, n + 1), k)
        clauses.append([v if rng.random() < 0.5 else -v for v in vs])
    return Formula(clauses, num_vars=n)


def random_mixed_cnf(n: int, m: int, kmin: int, kmax: int, seed: int = 0) -> Formula:
    """Like :func:`random_cnf` with clause lengths uniform in ``kmin..kmax``."""
    rng = random.Random(seed)
    clauses = []
    for _ in range(m):
        vs = rng.sample(range(1, n + 1), min(n, rng.randint(kmin, kmax)))
        clauses.append([v if rng.random() < 0.5 else -v for v in vs])
    return Formula(clauses, num_vars=n)
