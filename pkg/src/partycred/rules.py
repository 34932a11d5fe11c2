"""Score computation and winner determination for the seven rules.

All arithmetic is exact: integer scores for positional rules and Maximin,
``Fraction`` for Copeland so that a rational tie weight alpha never suffers
rounding.  An empty winner set is legal output for the Condorcet rule.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .core import Election, pairwise_matrix


@dataclass(frozen=True)
class Scoring:
    """Positional scoring rule with a non-increasing integer vector."""

    vector: tuple[int, ...]

    def __post_init__(self):
        if any(v < 0 for v in self.vector):
            raise ValueError("scoring vector entries must be non-negative")
        if any(a < b for a, b in zip(self.vector, self.vector[1:])):
            raise ValueError("scoring vector must be non-increasing")


@dataclass(frozen=True)
class Condorcet:
    """Elects the Condorcet winner; nobody wins when there is none."""


@dataclass(frozen=True)
class Copeland:
    """Pairwise wins plus ``alpha`` per pairwise tie, alpha an exact rational in [0, 1]."""

    alpha: Fraction

    def __post_init__(self):
        alpha = Fraction(self.alpha)
        if not (0 <= alpha <= 1):
            raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
        object.__setattr__(self, "alpha", alpha)


@dataclass(frozen=True)
class Maximin:
    """Worst pairwise support: min over opponents of N(c, d)."""


Rule = Scoring | Condorcet | Copeland | Maximin


class WinnerModel(enum.Enum):
    UNIQUE = "unique"
    COWINNER = "cowinner"


def scoring_vector_for(name: str, m: int, r: int | None = None) -> tuple[int, ...]:
    """Named scoring vector of length ``m`` (plurality, veto, borda, approval)."""
    if name == "plurality":
        return (1,) + (0,) * (m - 1)
    if name == "veto":
        return (1,) * (m - 1) + (0,)
    if name == "borda":
        return tuple(range(m - 1, -1, -1))
    if name == "approval":
        if r is None or not (1 <= r <= m):
            raise ValueError(f"approval needs 1 <= r <= {m}, got {r}")
        return (1,) * r + (0,) * (m - r)
    raise ValueError(f"unknown scoring rule {name!r}")


def scoring_scores(e: Election, vector: tuple[int, ...]) -> dict[int, int]:
    if len(vector) != e.num_candidates:
        raise ValueError(
            f"scoring vector length {len(vector)} != {e.num_candidates} candidates"
        )
    scores = dict.fromkeys(range(e.num_candidates), 0)
    for pref, weight in e.ballots:
        for pos, c in enumerate(pref.order):
            scores[c] += weight * vector[pos]
    return scores


def copeland_scores(e: Election, alpha: Fraction) -> dict[int, Fraction]:
    n = pairwise_matrix(e).counts
    m = e.num_candidates
    alpha = Fraction(alpha)
    scores = {}
    for c in range(m):
        wins = ties = 0
        for d in range(m):
            if d == c:
                continue
            if n[c, d] > n[d, c]:
                wins += 1
            elif n[c, d] == n[d, c]:
                ties += 1
        scores[c] = wins + alpha * ties
    return scores


def maximin_scores(e: Election) -> dict[int, int]:
    if e.num_candidates < 2:
        raise ValueError("maximin needs at least two candidates")
    n = pairwise_matrix(e).counts
    m = e.num_candidates
    return {
        c: min(int(n[c, d]) for d in range(m) if d != c) for c in range(m)
    }


def condorcet_winner(e: Election) -> int | None:
    n = pairwise_matrix(e).counts
    m = e.num_candidates
    for c in range(m):
        if all(n[c, d] > n[d, c] for d in range(m) if d != c):
            return c
    return None


def _score_table(e: Election, rule: Rule) -> dict[int, int | Fraction]:
    if isinstance(rule, Scoring):
        return scoring_scores(e, rule.vector)
    if isinstance(rule, Copeland):
        return copeland_scores(e, rule.alpha)
    if isinstance(rule, Maximin):
        return maximin_scores(e)
    raise TypeError(f"no score table for rule {rule!r}")


def winners(e: Election, rule: Rule, model: WinnerModel) -> frozenset[int]:
    """Winner set; under UNIQUE a non-singleton argmax set yields no winner."""
    if isinstance(rule, Condorcet):
        w = condorcet_winner(e)
        return frozenset() if w is None else frozenset({w})
    scores = _score_table(e, rule)
    best = max(scores.values())
    argmax = frozenset(c for c, s in scores.items() if s == best)
    if model is WinnerModel.UNIQUE and len(argmax) != 1:
        return frozenset()
    return argmax
