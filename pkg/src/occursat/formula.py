"""Occurrence-indexed CNF formula.

Literals are signed integers in the DIMACS convention; a variable is a
positive integer.  Clauses are tuples of literals addressed by a stable
integer handle (cid) that never changes while the clause exists, so undo
logs and journals can refer to clauses across rewrites.

Mutation is in place.  ``mark``/``rollback`` give cheap trial application of
rewrites; ``copy`` gives an independent instance (also picklable).
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .reconstruction import Assigned, Flipped, ReconstructionRecord

Clause = tuple[int, ...]


class ContractError(ValueError):
    """An operation was called outside its precondition."""


class InvariantError(AssertionError):
    """An internal structural invariant does not hold (a driver bug)."""


def var(lit: int) -> int:
    return lit if lit > 0 else -lit


def maximal_subclause(clause: Iterable[int], variables) -> Clause:
    """Literals of ``clause`` whose variable is not in ``variables``."""
    return tuple(lit for lit in clause if var(lit) not in variables)


class Formula:
    def __init__(self, clauses: Iterable[Iterable[int]] = (), num_vars: int = 0):
        self.clauses: dict[int, Clause] = {}
        self.occ: dict[int, set[int]] = {}
        self.deg: dict[int, int] = {}
        self.journal: list[ReconstructionRecord] = []
        self._nopos: set[int] = set()
        self._empty: set[int] = set()
        self._dirty: set[int] = set()
        self._next_cid = 1
        self._undo: list = []
        self._logging = False
        self.next_fresh = num_vars + 1
        for c in clauses:
            self.add_clause(c)

    # -- primitive mutations -------------------------------------------------

    def _insert(self, cid: int, lits: Clause) -> None:
        self.clauses[cid] = lits
        occ, deg = self.occ, self.deg
        haspos = False
        seen = set()
        for lit in lits:
            if lit > 0:
                haspos = True
            if lit in seen:
                continue
            seen.add(lit)
            s = occ.get(lit)
            if s is None:
                occ[lit] = {cid}
            else:
                s.add(cid)
            v = lit if lit > 0 else -lit
            deg[v] = deg.get(v, 0) + 1
        if not haspos:
            self._nopos.add(cid)
            if not lits:
                self._empty.add(cid)

    def _delete(self, cid: int) -> Clause:
        lits = self.clauses.pop(cid)
        occ, deg = self.occ, self.deg
        for lit in set(lits):
            s = occ[lit]
            s.discard(cid)
            if not s:
                del occ[lit]
            v = lit if lit > 0 else -lit
            d = deg[v] - 1
            if d:
                deg[v] = d
            else:
                del deg[v]
        self._nopos.discard(cid)
        self._empty.discard(cid)
        self._dirty.discard(cid)
        return lits

    def add_clause(self, lits: Iterable[int]) -> int:
        lits = tuple(lits)
        top = 0
        for lit in lits:
            if lit == 0:
                raise ContractError("0 is not a literal")
            top = max(top, var(lit))
        if top >= self.next_fresh:
            if self._logging:
                self._undo.append((3, self.next_fresh))
            self.next_fresh = top + 1
        cid = self._next_cid
        self._next_cid += 1
        self._insert(cid, lits)
        self._dirty.add(cid)
        if self._logging:
            self._undo.append((0, cid))
        return cid

    def remove_clause(self, cid: int) -> Clause:
        lits = self._delete(cid)
        if self._logging:
            self._undo.append((1, cid, lits))
        return lits

    def record(self, rec: ReconstructionRecord) -> None:
        self.journal.append(rec)
        if self._logging:
            self._undo.append((2,))

    def fresh_variable(self) -> int:
        v = self.next_fresh
        self.next_fresh = v + 1
        if self._logging:
            self._undo.append((3, v))
        return v

    # -- undo ----------------------------------------------------------------

    def mark(self) -> tuple[int, frozenset]:
        self._logging = True
        return len(self._undo), frozenset(self._dirty)

    def rollback(self, token: tuple[int, frozenset]) -> None:
        pos, dirty = token
        undo = self._undo
        while len(undo) > pos:
            entry = undo.pop()
            kind = entry[0]
            if kind == 0:
                self._delete(entry[1])
            elif kind == 1:
                self._insert(entry[1], entry[2])
            elif kind == 2:
                self.journal.pop()
            else:
                self.next_fresh = entry[1]
        self._dirty = set(dirty)

    def copy(self) -> "Formula":
        new = Formula.__new__(Formula)
        new.clauses = dict(self.clauses)
        new.occ = {lit: set(s) for lit, s in self.occ.items()}
        new.deg = dict(self.deg)
        new.journal = list(self.journal)
        new._nopos = set(self._nopos)
        new._empty = set(self._empty)
        new._dirty = set(self._dirty)
        new._next_cid = self._next_cid
        new._undo = []
        new._logging = False
        new.next_fresh = self.next_fresh
        return new

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_undo"] = []
        state["_logging"] = False
        return state

    # -- composite mutations -------------------------------------------------

    def replace_clause(self, cid: int, lits: Iterable[int]) -> int:
        self.remove_clause(cid)
        return self.add_clause(lits)

    def assign(self, lit: int) -> None:
        """Set ``lit`` true: drop satisfied clauses, delete the falsified literal."""
        if var(lit) not in self.deg:
            raise ContractError(f"variable {var(lit)} does not occur in the formula")
        self.record(Assigned(lit))
        for cid in list(self.occ.get(lit, ())):
            self.remove_clause(cid)
        for cid in list(self.occ.get(-lit, ())):
            lits = self.remove_clause(cid)
            self.add_clause(tuple(x for x in lits if x != -lit))

    def flip(self, v: int) -> None:
        """Rename ``v`` to ``-v`` everywhere (journaled so models map back)."""
        self.record(Flipped(v))
        for cid in list(self.clauses_of(v)):
            was_dirty = cid in self._dirty
            lits = self.remove_clause(cid)
            new = self.add_clause(tuple(-x if var(x) == v else x for x in lits))
            if not was_dirty:
                self._dirty.discard(new)

    # -- queries -------------------------------------------------------------

    @property
    def num_vars(self) -> int:
        return len(self.deg)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def variables(self) -> set[int]:
        return set(self.deg)

    def is_empty(self) -> bool:
        return not self.clauses

    def has_empty_clause(self) -> bool:
        return bool(self._empty)

    def all_clauses_have_positive(self) -> bool:
        return not self._nopos

    def all_negative(self) -> list[int]:
        """Cids of nonempty all-negative clauses, ascending."""
        return sorted(c for c in self._nopos if self.clauses[c])

    def pos(self, v: int) -> int:
        return len(self.occ.get(v, ()))

    def neg(self, v: int) -> int:
        return len(self.occ.get(-v, ()))

    def profile(self, v: int) -> tuple[int, int]:
        return self.pos(v), self.neg(v)

    def degree(self, v: int) -> int:
        return self.deg.get(v, 0)

    def max_degree(self) -> int:
        return max(self.deg.values(), default=0)

    def clauses_of(self, v: int) -> set[int]:
        return self.occ.get(v, set()) | self.occ.get(-v, set())

    def neighbors(self, lit: int) -> set[int]:
        """Variables sharing a clause with the literal ``lit``."""
        out: set[int] = set()
        for cid in self.occ.get(lit, ()):
            for x in self.clauses[cid]:
                out.add(var(x))
        out.discard(var(lit))
        return out

    def clauses_containing(self, variables: Iterable[int]) -> set[int]:
        out: set[int] = set()
        for v in variables:
            out |= self.occ.get(v, set())
            out |= self.occ.get(-v, set())
        return out

    def iter_clauses(self) -> Iterator[Clause]:
        return iter(self.clauses.values())

    def clause_list(self) -> list[Clause]:
        return [self.clauses[c] for c in sorted(self.clauses)]

    def is_monotone(self) -> bool:
        for lits in self.clauses.values():
            if lits and any(l > 0 for l in lits) and any(l < 0 for l in lits):
                return False
        return True

    def audit(self) -> bool:
        """True iff the occurrence index agrees exactly with the clause set."""
        occ: dict[int, set[int]] = {}
        deg: dict[int, int] = {}
        nopos, empty = set(), set()
        for cid, lits in self.clauses.items():
            for lit in set(lits):
                occ.setdefault(lit, set()).add(cid)
                deg[var(lit)] = deg.get(var(lit), 0) + 1
            if not any(l > 0 for l in lits):
                nopos.add(cid)
                if not lits:
                    empty.add(cid)
        return (
            occ == self.occ
            and deg == self.deg
            and nopos == self._nopos
            and empty == self._empty
            and all(v < self.next_fresh for v in deg)
        )

    def __repr__(self) -> str:
        return f"Formula({self.clause_list()!r})"


def assign(formula: Formula, lit: int) -> Formula:
    """Copy of ``formula`` with ``lit`` set true."""
    out = formula.copy()
    out.assign(lit)
    return out


def neighbors(formula: Formula, lit: int) -> set[int]:
    return formula.neighbors(lit)


def clauses_containing(formula: Formula, variables: Iterable[int]) -> list[Clause]:
    return [formula.clauses[c] for c in sorted(formula.clauses_containing(variables))]


def fresh_variable(formula: Formula) -> int:
    return formula.fresh_variable()


def audit(formula: Formula) -> bool:
    return formula.audit()


def canonical(clauses: Iterable[Iterable[int]]) -> list[tuple[int, ...]]:
    """Order-insensitive normal form of a clause collection, for comparisons."""
    return sorted(tuple(sorted(set(c), key=lambda l: (var(l), l))) for c in clauses)
