"""Journal records and backward model extension.

Every rewrite that removes or renames a variable appends a record to the
formula's journal.  Walking the journal newest-to-oldest turns a model of the
final formula into a model of the formula the journal started from.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


class ReconstructionError(RuntimeError):
    """The journal cannot be replayed against the given model."""


@dataclass(frozen=True)
class Assigned:
    literal: int


@dataclass(frozen=True)
class Flipped:
    variable: int


@dataclass(frozen=True)
class Resolved:
    variable: int
    clauses: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Introduced:
    variable: int
    clauses: tuple[tuple[int, ...], ...] = ()


@dataclass(frozen=True)
class Blocked:
    """A clause dropped because it is blocked on ``literal``.

    If the model falsifies ``clause``, setting ``literal`` true repairs it
    without breaking any clause that was still present.
    """

    literal: int
    clause: tuple[int, ...]


ReconstructionRecord = Assigned | Flipped | Resolved | Introduced | Blocked


def _value(model: Mapping[int, bool], lit: int) -> bool:
    v = model.get(abs(lit), False)
    return v if lit > 0 else not v


def clause_satisfied(model: Mapping[int, bool], clause: Iterable[int]) -> bool:
    return any(_value(model, lit) for lit in clause)


def extend_model(
    journal: Sequence[ReconstructionRecord], model: Mapping[int, bool]
) -> dict[int, bool]:
    """Replay ``journal`` backwards over a copy of ``model``.

    Variables that never receive a value default to False; callers project
    the result onto whichever variables they care about.
    """
    out = dict(model)
    for rec in reversed(journal):
        if isinstance(rec, Assigned):
            out[abs(rec.literal)] = rec.literal > 0
        elif isinstance(rec, Flipped):
            out[rec.variable] = not out.get(rec.variable, False)
        elif isinstance(rec, Resolved):
            v = rec.variable
            for value in (True, False):
                out[v] = value
                if all(clause_satisfied(out, c) for c in rec.clauses):
                    break
            else:
                raise ReconstructionError(
                    f"no value of {v} satisfies its resolved clauses"
                )
        elif isinstance(rec, Introduced):
            out.pop(rec.variable, None)
        elif isinstance(rec, Blocked):
            if not clause_satisfied(out, rec.clause):
                out[abs(rec.literal)] = rec.literal > 0
        else:  # pragma: no cover
            raise TypeError(f"unknown record {rec!r}")
    return out


def check_model(clauses: Iterable[Iterable[int]], model: Mapping[int, bool]) -> bool:
    return all(clause_satisfied(model, c) for c in clauses)
