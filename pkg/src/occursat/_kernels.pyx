# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; behaviour matches ``_kernels_py`` exactly."""

from libc.math cimport pow
from libc.stdlib cimport malloc, free


def dpll(int num_vars, lits, starts):
    cdef Py_ssize_t nl = len(lits), ns = len(starts)
    cdef int m = <int>ns - 1
    cdef int *L = <int *>malloc((nl + 1) * sizeof(int))
    cdef int *S = <int *>malloc((ns + 1) * sizeof(int))
    cdef signed char *val = <signed char *>malloc((num_vars + 1) * sizeof(signed char))
    cdef int *trail = <int *>malloc((num_vars + 1) * sizeof(int))
    cdef int *dpos = <int *>malloc((num_vars + 1) * sizeof(int))
    cdef signed char *dflip = <signed char *>malloc((num_vars + 1) * sizeof(signed char))
    cdef int ntrail = 0, ndec = 0
    cdef int c, k, lit, x, v, freecount, last, pos, i
    cdef bint sat, conflict, changed
    cdef signed char flipped
    if not (L and S and val and trail and dpos and dflip):
        free(L); free(S); free(val); free(trail); free(dpos); free(dflip)
        raise MemoryError()
    try:
        for i in range(nl):
            L[i] = lits[i]
        for i in range(ns):
            S[i] = starts[i]
        for i in range(num_vars + 1):
            val[i] = 0
        while True:
            conflict = False
            changed = True
            while changed and not conflict:
                changed = False
                for c in range(m):
                    freecount = 0
                    last = 0
                    sat = False
                    for k in range(S[c], S[c + 1]):
                        lit = L[k]
                        v = val[lit if lit > 0 else -lit]
                        if v == 0:
                            freecount += 1
                            last = lit
                        elif (v > 0) == (lit > 0):
                            sat = True
                            break
                    if sat:
                        continue
                    if freecount == 0:
                        conflict = True
                        break
                    if freecount == 1:
                        x = last if last > 0 else -last
                        val[x] = 1 if last > 0 else -1
                        trail[ntrail] = x
                        ntrail += 1
                        changed = True
            if conflict:
                while ndec > 0 and dflip[ndec - 1]:
                    ndec -= 1
                    pos = dpos[ndec]
                    while ntrail > pos:
                        ntrail -= 1
                        val[trail[ntrail]] = 0
                if ndec == 0:
                    return None
                ndec -= 1
                pos = dpos[ndec]
                x = trail[pos]
                flipped = -val[x]
                while ntrail > pos:
                    ntrail -= 1
                    val[trail[ntrail]] = 0
                val[x] = flipped
                trail[ntrail] = x
                ntrail += 1
                dpos[ndec] = pos
                dflip[ndec] = 1
                ndec += 1
                continue
            x = 0
            for v in range(1, num_vars + 1):
                if val[v] == 0:
                    x = v
                    break
            if x == 0:
                return [val[i] for i in range(num_vars + 1)]
            dpos[ndec] = ntrail
            dflip[ndec] = 0
            ndec += 1
            val[x] = -1
            trail[ntrail] = x
            ntrail += 1
    finally:
        free(L); free(S); free(val); free(trail); free(dpos); free(dflip)


cdef double _f(double x, int *vec, int k):
    cdef double s = 0.0
    cdef int i
    for i in range(k):
        s += pow(x, -vec[i])
    return s - 1.0


def tau(vector):
    cdef int k = len(vector)
    cdef int i, lo_n
    cdef double lo, hi, mid
    cdef int vec[64]
    if k == 0:
        raise ValueError("empty branching vector")
    if k > 64:
        raise ValueError("branching vector too long")
    for i in range(k):
        vec[i] = vector[i]
    lo_n = vec[0]
    for i in range(k):
        if vec[i] < lo_n:
            lo_n = vec[i]
    if lo_n <= 0:
        raise ValueError("branching vector entries must be positive")
    if k == 1:
        return 1.0
    lo = 1.0
    hi = pow(<double>k, 1.0 / lo_n)
    if not (_f(lo, vec, k) >= 0.0 and _f(hi, vec, k) <= 1e-12):
        raise ArithmeticError("root not bracketed")
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        if _f(mid, vec, k) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
