"""Seeded instances with a rule's trigger pattern embedded in random context.

Every variable ends up with two positive and one negative occurrence: the
core clauses are fixed and the leftover occurrence slots are dealt into
random clauses of length two or three.
"""

from __future__ import annotations

import random

from occursat.formula import Formula

# Letters are core variables; numbers elsewhere are filled in at random.
CORES = {
    # (not x or not y or not a), (x or u), (y or u)
    "S6b": [("-x", "-y", "-a"), ("x", "u"), ("y", "u")],
    # (not x or not y), (x or u), (y or u or b), (y or c or d)
    "S6c": [("-x", "-y"), ("x", "u"), ("y", "u", "b"), ("y", "c", "d")],
    # a cycle of implications over variables outside every all-negative
    # clause; with a monotone fill the cycle is an autarky
    "S8": [("-a", "b"), ("-b", "c"), ("-c", "a")],
    # an all-negative 4-clause
    "C4": [("-w", "-x", "-y", "-z")],
    # the same clause with disjoint two-variable neighbourhoods
    "C4N2": [
        ("-w", "-x", "-y", "-z"),
        ("w", "a"), ("w", "b"), ("x", "c"), ("x", "d"),
        ("y", "e"), ("y", "f"), ("z", "g"), ("z", "h"),
    ],
    # an all-negative 2-clause whose variables sit in two 3-clauses each
    "S9": [("-x", "-y"), ("x", "a", "b"), ("x", "c", "d"), ("y", "e", "f"), ("y", "g", "h")],
}
MONOTONE_FILL = {"S8", "S9"}


def _lit(name: str, ids: dict[str, int]) -> int:
    neg = name.startswith("-")
    v = ids[name.lstrip("-")]
    return -v if neg else v


def planted(core: str, n: int, seed: int, neg_rate: float = 0.2) -> Formula | None:
    """Plant ``CORES[core]`` among ``n`` variables; None if dealing fails."""
    rng = random.Random(seed)
    pattern = CORES[core]
    names = sorted({s.lstrip("-") for c in pattern for s in c})
    if n < len(names) + 3:
        raise ValueError("n too small for the core")
    ids = {name: i for i, name in enumerate(names, 1)}
    clauses = [[_lit(s, ids) for s in c] for c in pattern]
    pos = {v: 2 for v in range(1, n + 1)}
    neg = {v: 1 for v in range(1, n + 1)}
    for c in clauses:
        for l in c:
            (pos if l > 0 else neg)[abs(l)] -= 1
    if any(k < 0 for k in list(pos.values()) + list(neg.values())):
        raise ValueError("core overuses a variable")
    pslots = [v for v, k in pos.items() for _ in range(k)]
    nslots = [-v for v, k in neg.items() for _ in range(k)]
    rng.shuffle(pslots)
    rng.shuffle(nslots)
    for _ in range(200):
        if core in MONOTONE_FILL:
            a = _deal(rng, list(pslots), [], 0.0)
            b = _deal(rng, [], list(nslots), 1.0)
            out = None if a is None or b is None else a + b
        else:
            out = _deal(rng, list(pslots), list(nslots), neg_rate)
        if out is not None:
            return Formula(clauses + out, num_vars=n)
        rng.shuffle(pslots)
    return None


def _deal(rng, pslots, nslots, neg_rate):
    out = []
    while pslots or nslots:
        left = len(pslots) + len(nslots)
        k = left if left <= 3 else rng.choice((2, 3, 3))
        if left - k == 1:
            k += 1 if k < 3 else -1
        all_neg = rng.random() < neg_rate and len(nslots) >= k
        clause, used = [], set()
        for _ in range(k):
            pools = [nslots] if all_neg else [p for p in (pslots, nslots) if p]
            if not all_neg:
                pools.sort(key=lambda p: -len(p) * rng.random())
            for pool in pools:
                hit = next((i for i in range(len(pool) - 1, -1, -1) if abs(pool[i]) not in used), None)
                if hit is not None:
                    lit = pool.pop(hit)
                    clause.append(lit)
                    used.add(abs(lit))
                    break
            else:
                return None
        out.append(clause)
    return out
