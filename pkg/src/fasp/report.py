"""Result record shared by the exact solvers and the heuristics."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from .graph import ArcSet, WeightedMultiDigraph, is_acyclic

METHODS = ("resolvable", "cut", "cut-resolve", "greedy", "greedy-resolve", "hybrid", "oracle", "exact")
CERTIFYING = {"resolvable", "cut", "cut-resolve", "oracle", "exact"}


@dataclass(frozen=True)
class FeedbackReport:
    solution: ArcSet
    method: str
    certified_optimal: bool
    bounds: Optional[Tuple[int, int]] = None
    stats: Dict[str, Any] = field(default_factory=dict)

    @property
    def weight(self) -> int:
        return self.solution.weight

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        # heuristics certify only by meeting a lower bound
        met = self.bounds is not None and self.weight == max(self.bounds)
        if self.certified_optimal and self.method not in CERTIFYING and not met:
            raise ValueError(f"method {self.method!r} cannot certify optimality")

    def check(self, g: WeightedMultiDigraph) -> None:
        """Raise if the solution is mis-weighted or leaves a cycle in ``g``."""
        if g.total_weight(self.solution.arcs) != self.weight:
            raise AssertionError("solution weight does not match the arc weights")
        if not is_acyclic(g.remove_arcs(self.solution.arcs)):
            raise AssertionError("solution leaves a directed cycle")
