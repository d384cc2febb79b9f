"""Pure-Python kernels; same algorithms and signatures as ``_kernels.pyx``."""

from __future__ import annotations


def dpll(num_vars, lits, starts):
    """Backtracking search with unit propagation over a flat clause array.

    ``lits`` holds the literals of all clauses back to back (variables
    numbered 1..num_vars) and clause ``c`` spans ``lits[starts[c]:starts[c+1]]``.
    Returns a list of +1/-1 values indexed by variable (index 0 unused), or
    None when unsatisfiable.
    """
    m = len(starts) - 1
    val = [0] * (num_vars + 1)
    trail = []
    decisions = []  # (trail position, already flipped)
    while True:
        conflict = False
        changed = True
        while changed and not conflict:
            changed = False
            for c in range(m):
                free = 0
                last = 0
                sat = False
                for k in range(starts[c], starts[c + 1]):
                    lit = lits[k]
                    v = val[lit if lit > 0 else -lit]
                    if v == 0:
                        free += 1
                        last = lit
                    elif (v > 0) == (lit > 0):
                        sat = True
                        break
                if sat:
                    continue
                if free == 0:
                    conflict = True
                    break
                if free == 1:
                    x = last if last > 0 else -last
                    val[x] = 1 if last > 0 else -1
                    trail.append(x)
                    changed = True
        if conflict:
            while decisions and decisions[-1][1]:
                pos = decisions.pop()[0]
                while len(trail) > pos:
                    val[trail.pop()] = 0
            if not decisions:
                return None
            pos = decisions.pop()[0]
            x = trail[pos]
            flipped = -val[x]
            while len(trail) > pos:
                val[trail.pop()] = 0
            val[x] = flipped
            trail.append(x)
            decisions.append((pos, True))
            continue
        x = 0
        for v in range(1, num_vars + 1):
            if val[v] == 0:
                x = v
                break
        if x == 0:
            return val
        decisions.append((len(trail), False))
        val[x] = -1
        trail.append(x)


def tau(vector):
    """Unique root x >= 1 of sum(x ** -n for n in vector) == 1, by bisection."""
    k = len(vector)
    if k == 0:
        raise ValueError("empty branching vector")
    if k > 64:
        raise ValueError("branching vector too long")
    lo_n = min(vector)
    if lo_n <= 0:
        raise ValueError("branching vector entries must be positive")
    if k == 1:
        return 1.0

    def f(x):
        s = 0.0
        for n in vector:
            s += x ** (-n)
        return s - 1.0

    lo, hi = 1.0, float(k) ** (1.0 / lo_n)
    if not (f(lo) >= 0.0 and f(hi) <= 1e-12):
        raise ArithmeticError("root not bracketed")
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
