"""Solver routing: pick the cheapest exact method an instance admits."""

from __future__ import annotations

from .parties import Direction, DestinationMode, ProblemInstance, SolveResult
from .poly import MAX_APPROVAL_R, max_r_approval, min_condorcet, min_scoring
from .rules import Condorcet, Scoring
from .search import (
    DEFAULT_NODE_BUDGET,
    DEFAULT_VOTER_CAP,
    exact_search_max,
    exact_search_min,
    oracle_max,
    oracle_min,
)


def poly_solver(instance: ProblemInstance):
    """The polynomial solver this instance admits, or None."""
    if instance.destination_mode is not DestinationMode.ONE:
        return None
    if instance.direction is Direction.MIN:
        if isinstance(instance.rule, Scoring):
            return min_scoring
        if isinstance(instance.rule, Condorcet):
            return min_condorcet
        return None
    rule = instance.rule
    if (
        isinstance(rule, Scoring)
        and not (set(rule.vector) - {0, 1})
        and sum(rule.vector) <= MAX_APPROVAL_R
    ):
        return max_r_approval
    return None


def solve_instance(
    instance: ProblemInstance,
    solver: str = "auto",
    node_budget: int = DEFAULT_NODE_BUDGET,
    voter_cap: int = DEFAULT_VOTER_CAP,
) -> SolveResult:
    """Solve with the requested strategy; ``auto`` prefers a polynomial solver."""
    if solver not in ("auto", "poly", "search", "oracle"):
        raise ValueError(f"unknown solver {solver!r}")
    if solver in ("auto", "poly"):
        fn = poly_solver(instance)
        if fn is not None:
            return fn(instance)
        if solver == "poly":
            raise ValueError("no polynomial solver applies to this instance")
    if solver == "oracle":
        if instance.direction is Direction.MIN:
            return oracle_min(instance, voter_cap=voter_cap)
        return oracle_max(instance, voter_cap=voter_cap)
    if instance.direction is Direction.MIN:
        return exact_search_min(instance, node_budget=node_budget)
    return exact_search_max(instance, node_budget=node_budget)
