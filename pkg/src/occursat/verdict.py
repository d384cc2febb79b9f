from __future__ import annotations

from dataclasses import dataclass, field

SAT = "SAT"
UNSAT = "UNSAT"
UNKNOWN = "UNKNOWN"


@dataclass
class SolveStats:
    nodes: int = 0
    branches: int = 0
    simulations: int = 0
    max_factor: float = 0.0
    fallbacks: int = 0
    rule_counts: dict[str, int] = field(default_factory=dict)
    eliminated: dict[str, int] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    def fired(self, rule: str, eliminated: int = 0) -> None:
        self.rule_counts[rule] = self.rule_counts.get(rule, 0) + 1
        self.eliminated[rule] = self.eliminated.get(rule, 0) + eliminated


@dataclass
class SolveVerdict:
    status: str
    model: dict[int, bool] | None = None
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def is_sat(self) -> bool:
        return self.status == SAT

    @property
    def is_unsat(self) -> bool:
        return self.status == UNSAT
