"""DIMACS CNF reading and writing."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

from .formula import Formula, var

log = logging.getLogger(__name__)


class DimacsError(ValueError):
    def __init__(self, msg: str, line: int, column: int = 0):
        super().__init__(f"line {line}, column {column}: {msg}")
        self.line = line
        self.column = column


@dataclass
class DimacsDocument:
    num_vars_declared: int
    clauses: list[list[int]]
    comments: list[str] = field(default_factory=list)
    num_clauses_declared: int = 0

    def formula(self) -> Formula:
        return Formula(self.clauses, num_vars=self.num_vars_declared)

    def unused_variables(self) -> list[int]:
        used = {var(l) for c in self.clauses for l in c}
        return [v for v in range(1, self.num_vars_declared + 1) if v not in used]


def read_document(text: str | bytes) -> DimacsDocument:
    if isinstance(text, bytes):
        text = text.decode()
    header = None
    clauses: list[list[int]] = []
    comments: list[str] = []
    current: list[int] = []
    lineno = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped[0] == "c":
            comments.append(stripped[1:].strip())
            continue
        if stripped[0] == "%":
            # some benchmark suites end files with "%\n0"
            break
        if stripped[0] == "p":
            if header is not None:
                raise DimacsError("duplicate header", lineno, 1)
            fields = stripped.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise DimacsError(f"bad header {stripped!r}", lineno, 1)
            try:
                header = (int(fields[2]), int(fields[3]))
            except ValueError:
                raise DimacsError(f"bad header {stripped!r}", lineno, 1) from None
            if header[0] < 0 or header[1] < 0:
                raise DimacsError("negative count in header", lineno, 1)
            continue
        if header is None:
            raise DimacsError("clause before 'p cnf' header", lineno, 1)
        for m in re.finditer(r"\S+", line):
            tok = m.group()
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"non-integer token {tok!r}", lineno, m.start() + 1) from None
            if lit == 0:
                clauses.append(current)
                current = []
            elif abs(lit) > header[0]:
                raise DimacsError(
                    f"literal {lit} out of range 1..{header[0]}", lineno, m.start() + 1
                )
            else:
                current.append(lit)
    if header is None:
        raise DimacsError("missing 'p cnf' header", lineno)
    if current:
        raise DimacsError("unterminated final clause", lineno)
    if len(clauses) != header[1]:
        log.warning("header declares %d clauses, found %d", header[1], len(clauses))
    return DimacsDocument(header[0], clauses, comments, header[1])


def parse(text: str | bytes) -> Formula:
    doc = read_document(text)
    unused = doc.unused_variables()
    if unused:
        log.info("%d declared variables do not occur", len(unused))
    return doc.formula()


def emit(f: Formula | list, comments: list[str] = ()) -> str:
    """DIMACS text with variables renumbered densely in ascending order.

    The renumbering is written as ``c map <new> <old>`` comment lines.
    """
    clauses = f.clause_list() if isinstance(f, Formula) else [tuple(c) for c in f]
    old = sorted({var(l) for c in clauses for l in c})
    new = {v: i for i, v in enumerate(old, 1)}
    lines = [f"c {c}" for c in comments]
    lines += [f"c map {new[v]} {v}" for v in old if new[v] != v]
    lines.append(f"p cnf {len(old)} {len(clauses)}")
    for c in clauses:
        lits = [new[var(l)] if l > 0 else -new[var(l)] for l in c]
        lines.append(" ".join(map(str, lits + [0])))
    return "\n".join(lines) + "\n"


def emit_bytes(f: Formula, comments: list[str] = ()) -> bytes:
    return emit(f, comments).encode()


def read_map(text: str) -> dict[int, int]:
    """Parse the ``c map`` comments written by :func:`emit` (new -> old)."""
    out = {}
    for line in text.splitlines():
        parts = line.split()
        if len(parts) == 4 and parts[0] == "c" and parts[1] == "map":
            out[int(parts[2])] = int(parts[3])
    return out
